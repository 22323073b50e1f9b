// Partial homotopy on equivariant polydifferential operators and the
// deformation retract onto the Cartan-model subspace (dual-weight-(0,0)
// elements: polynomial fiber coefficients, no fiber derivatives, no eps
// factors), together with the generic homological perturbation lemma and its
// application to the higher orders of the crossed-product star product.
#pragma once

#include <functional>
#include <map>
#include <utility>

#include "qred/equivariant.hpp"
#include "qred/gutt.hpp"

namespace qred {

// Order of differentiation in the fiber directions, totaled across slots.
inline int fiber_slot_weight(const SlotTuple& slots, int gens, int n) {
    int w = 0;
    for (const Monomial& g : slots)
        for (int j = gens - n; j < gens; ++j) w += static_cast<int>(g[static_cast<size_t>(j)]);
    return w;
}

// Exact decomposition by (eps-degree, fiber-derivative weight).
inline std::map<std::pair<int, int>, EquivariantOp> taylor_decompose(const EquivariantOp& A) {
    std::map<std::pair<int, int>, EquivariantOp> out;
    const int gens = A.gens(), n = A.eps_dim();
    for (const auto& [key, op] : A.parts()) {
        int p = static_cast<int>(mono_total(key.first));
        for (const auto& [slots, c] : op.terms()) {
            int q = fiber_slot_weight(slots, gens, n);
            auto it = out.find({p, q});
            if (it == out.end()) it = out.emplace(std::pair{p, q}, EquivariantOp(gens, n)).first;
            PolyDiffOp t(gens, key.second);
            t.add_term(slots, c);
            it->second.add_part(key.first, t);
        }
    }
    return out;
}

// Rescale each (eps-degree, fiber-weight)-homogeneous component by w(p, q).
inline EquivariantOp weight_scaled(const EquivariantOp& A,
                                   const std::function<Rat(int, int)>& w) {
    EquivariantOp out(A.gens(), A.eps_dim());
    for (const auto& [pq, comp] : taylor_decompose(A)) {
        Rat f = w(pq.first, pq.second);
        if (sgn(f) != 0) out += comp * f;
    }
    return out;
}

// Feeds one fiber coordinate function into slot i and diverts the derivative
// onto a later argument: the arity-lowering half of the partial homotopy.
inline PolyDiffOp phi_op(const PolyDiffOp& D, int n) {
    const int gens = D.gens(), m = D.arity(), fib0 = gens - n;
    PolyDiffOp out(gens, m > 0 ? m - 1 : 0);
    if (m <= 1) return out;
    for (const auto& [slots, c] : D.terms()) {
        for (int i = 0; i + 1 < m; ++i) {
            for (int t = 0; t < n; ++t) {
                // slot i applied to the coordinate function: nonzero only for
                // an empty slot (multiplication) or exactly d/de_t
                SitePolynomial cc(gens);
                if (mono_total(slots[static_cast<size_t>(i)]) == 0)
                    cc = c * SitePolynomial::generator(gens, fib0 + t);
                else if (slots[static_cast<size_t>(i)] == mono_unit(gens, fib0 + t))
                    cc = c;
                else
                    continue;
                if (i % 2 == 1) cc = -cc;
                for (int j = i; j + 1 < m; ++j) {
                    SlotTuple s2;
                    s2.reserve(static_cast<size_t>(m - 1));
                    for (int k = 0; k < m; ++k)
                        if (k != i) s2.push_back(slots[static_cast<size_t>(k)]);
                    s2[static_cast<size_t>(j)] =
                        mono_mul(s2[static_cast<size_t>(j)], mono_unit(gens, fib0 + t));
                    out.add_term(s2, cc);
                }
            }
        }
    }
    return out;
}

// Inserts each fiber coordinate function and re-appends its derivative as a
// final slot.
inline PolyDiffOp psi_op(const PolyDiffOp& D, int n) {
    const int gens = D.gens(), m = D.arity(), fib0 = gens - n;
    PolyDiffOp out(gens, m);
    Rat sign((m % 2 == 0) ? 1 : -1);
    SitePolynomial one = SitePolynomial::constant(gens, Scalar::one());
    for (int t = 0; t < n; ++t) {
        PolyDiffOp ins = circ(D, PolyDiffOp::from_polynomial(SitePolynomial::generator(gens, fib0 + t)));
        if (ins.is_zero()) continue;
        out += cup(ins, PolyDiffOp::first_order(one, mono_unit(gens, fib0 + t))) * sign;
    }
    return out;
}

inline EquivariantOp phi(const EquivariantOp& A) {
    EquivariantOp out(A.gens(), A.eps_dim());
    for (const auto& [key, op] : A.parts()) out.add_part(key.first, phi_op(op, A.eps_dim()));
    return out;
}

inline EquivariantOp psi(const EquivariantOp& A) {
    EquivariantOp out(A.gens(), A.eps_dim());
    for (const auto& [key, op] : A.parts()) out.add_part(key.first, psi_op(op, A.eps_dim()));
    return out;
}

// Lowers the eps-degree by contraction and appends the matching fiber
// derivative as a new slot.
inline EquivariantOp hhat(const EquivariantOp& A) {
    const int gens = A.gens(), n = A.eps_dim(), fib0 = gens - n;
    EquivariantOp out(gens, n);
    SitePolynomial one = SitePolynomial::constant(gens, Scalar::one());
    for (const auto& [key, op] : A.parts()) {
        Rat sign((key.second % 2 == 0) ? 1 : -1);
        for (int i = 0; i < n; ++i) {
            if (key.first[static_cast<size_t>(i)] == 0) continue;
            EpsMono e2 = key.first;
            e2[static_cast<size_t>(i)] -= 1;
            PolyDiffOp v = cup(op, PolyDiffOp::first_order(one, mono_unit(gens, fib0 + i)));
            out.add_part(e2, v * (sign * Rat(static_cast<long>(key.first[static_cast<size_t>(i)]))));
        }
    }
    return out;
}

// Defect of the commutation identity tying phi to the product differential:
// phi(dA) + d(phi A) + (fiber-weight)*A + psi(A); zero on normalized inputs.
inline EquivariantOp phi_identity_defect(const EquivariantOp& A) {
    EquivariantOp out = phi(eq_d(A)) + eq_d(phi(A)) + psi(A);
    out += weight_scaled(A, [](int, int q) { return Rat(q); });
    return out;
}

// The normalized homotopy: (hhat - phi)/(p+q) on positive-weight components.
inline EquivariantOp homotopy_h(const EquivariantOp& A) {
    EquivariantOp out(A.gens(), A.eps_dim());
    for (const auto& [pq, comp] : taylor_decompose(A)) {
        int total = pq.first + pq.second;
        if (total == 0) continue;
        out += (hhat(comp) - phi(comp)) * Rat(1, total);
    }
    return out;
}

// A two-sided homotopy retract: inclusion/projection between a small space
// and a big one, a homotopy on the big side, and the two differentials.
template <class V>
struct Retract {
    std::function<V(const V&)> incl, proj, h, dBig, dSmall;
};

// The geometric series (id + B h)^{-1} B; terminates because each application
// of B raises the hbar-order.
template <class V>
std::function<V(const V&)> perturbation_series(const Retract<V>& r,
                                               const std::function<V(const V&)>& B) {
    return [r, B](const V& x) {
        V acc = B(x);
        V cur = acc;
        for (int k = 0; k <= truncation_order() + 1; ++k) {
            if (cur.is_zero()) return acc;
            cur = B(r.h(cur)) * Rat(-1);
            acc = acc + cur;
        }
        throw std::runtime_error("perturbation series does not terminate");
    };
}

// Homological perturbation lemma: deform a retract by a differential
// perturbation B on the big side.
template <class V>
Retract<V> hpl(const Retract<V>& r, const std::function<V(const V&)>& B) {
    auto A = perturbation_series(r, B);
    Retract<V> out;
    out.incl = [r, A](const V& x) {
        V ix = r.incl(x);
        return ix + r.h(A(ix)) * Rat(-1);
    };
    out.proj = [r, A](const V& x) { return r.proj(x) + r.proj(A(r.h(x))) * Rat(-1); };
    out.h = [r, A](const V& x) { return r.h(x) + r.h(A(r.h(x))) * Rat(-1); };
    out.dBig = [r, B](const V& x) { return r.dBig(x) + B(x); };
    out.dSmall = [r, A](const V& x) { return r.dSmall(x) + r.proj(A(r.incl(x))); };
    return out;
}

// Projection onto the weight-(0,0) subspace.
inline EquivariantOp cartan_projection(const EquivariantOp& A) {
    EquivariantOp out(A.gens(), A.eps_dim());
    for (const auto& [pq, comp] : taylor_decompose(A))
        if (pq.first == 0 && pq.second == 0) out += comp;
    return out;
}

// The classical retract: differential = product differential + bracket with
// the negated momentum element, homotopy as above, projection/inclusion for
// the weight-(0,0) subspace.
inline Retract<EquivariantOp> classical_retract(const SiteModel& model) {
    EquivariantOp mJ = -j_element(model);
    Retract<EquivariantOp> r;
    r.incl = [](const EquivariantOp& x) { return x; };
    r.proj = [](const EquivariantOp& x) { return cartan_projection(x); };
    r.h = [](const EquivariantOp& x) { return homotopy_h(x); };
    r.dBig = [mJ](const EquivariantOp& x) { return eq_d(x) + eq_bracket(mJ, x); };
    r.dSmall = [](const EquivariantOp& x) { return eq_d(x); };
    return r;
}

// The classical retract perturbed by bracketing with the higher orders of the
// crossed-product star product (an hbar-filtration >= 1 perturbation).
inline Retract<EquivariantOp> perturbed_retract(const SiteModel& model,
                                                const PolyDiffOp& higher) {
    if (!higher.is_zero() && higher.hbar_order() < 1)
        throw std::invalid_argument("perturbation must vanish mod hbar");
    EquivariantOp b = EquivariantOp::wrap(model.lie().dim(), higher);
    std::function<EquivariantOp(const EquivariantOp&)> B =
        [b](const EquivariantOp& x) { return eq_bracket(b, x); };
    return hpl(classical_retract(model), B);
}

// Closed form of the first-order part of the perturbed small differential on
// a weight-(0,0) element: split the fiber part of each coefficient monomial
// and append the Lie operator of the nontrivial right leg as a final slot,
// with the sign of the operator degree.
inline EquivariantOp cartan_delta(const GuttProduct& gp, const EquivariantOp& A) {
    const Site& st = gp.model().site();
    const int gens = st.gens(), n = st.n;
    EquivariantOp out(gens, n);
    for (const auto& [key, op] : A.parts()) {
        if (mono_total(key.first) != 0)
            throw std::invalid_argument("element has eps factors");
        Rat sign((key.second % 2 == 1) ? 1 : -1);  // (-1)^(arity-1)
        for (const auto& [slots, c] : op.terms()) {
            if (fiber_slot_weight(slots, gens, n) != 0)
                throw std::invalid_argument("element has fiber derivatives");
            for (const auto& [mono, s] : c.terms()) {
                Monomial base = mono, fib(static_cast<size_t>(n), 0);
                for (int j = 0; j < n; ++j) {
                    fib[static_cast<size_t>(j)] = mono[static_cast<size_t>(st.m + j)];
                    base[static_cast<size_t>(st.m + j)] = 0;
                }
                for (const auto& [p1, p2, binom] : sym_splits(fib)) {
                    if (mono_total(p2) == 0) continue;
                    Monomial cm = base;
                    for (int j = 0; j < n; ++j) cm[static_cast<size_t>(st.m + j)] += p1[static_cast<size_t>(j)];
                    SitePolynomial cc(gens);
                    cc.add_term(cm, s * binom);
                    PolyDiffOp dterm(gens, key.second);
                    dterm.add_term(slots, cc);
                    out.add_part(key.first, cup(dterm, gp.lie_operator(p2)) * sign);
                }
            }
        }
    }
    return out;
}

}  // namespace qred
