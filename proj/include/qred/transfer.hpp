/*
  Homotopy transfer along a deformation retract: the symmetrized projector
  average K_n, the extended homotopy H_n, and the recursively constructed
  transferred structure Q_A, projection morphism P, and quasi-inverse I,
  together with Maurer-Cartan transport through I∘P.

  Conventions: the retract supplies incl (i), proj (p), h, dBig (the
  differential on the big space B) and dSmall (the induced differential on the
  small space A); the ambient structure Q_B must be flat with Q_{B,1} = -dBig.
  All degrees are shifted (suspended), so h has shifted degree -1 as well.
*/
#pragma once

#include "qred/linfty.hpp"
#include "qred/taylor.hpp"

#include <algorithm>
#include <memory>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace qred {

// K_n = (1/n!) Σ_{i=0}^{n-1} Σ_{σ∈S_n} (ε(σ)/(n-i))
//         (ip x_{σ(1)})∨…∨(ip x_{σ(i)})∨x_{σ(i+1)}∨…∨x_{σ(n)}.
// Fixes nothing pointwise in general: on words of ip-fixed factors it scales
// by the harmonic number Σ_{j=1}^{n} 1/j.
template <class T>
WordSum<T> transfer_K(const std::function<T(const T&)>& ip, const SymWord<T>& word) {
    WordSum<T> out;
    const int n = static_cast<int>(word.size());
    if (n == 0) {
        out.add(SymWord<T>{}, Scalar::one());  // coalgebra morphism: K(1) = 1
        return out;
    }
    std::vector<GradedElement<T>> ipx;
    ipx.reserve(n);
    std::vector<int> degs(n);
    for (int j = 0; j < n; ++j) {
        ipx.push_back(GradedElement<T>{word[j].degree, ip(word[j].payload)});
        degs[j] = word[j].degree;
    }
    Rat nfact(1);
    for (int j = 2; j <= n; ++j) nfact *= Rat(j);
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        const int sign = koszul_sign(perm, degs);
        for (int i = 0; i < n; ++i) {
            Rat coeff = Rat(sign) / (nfact * Rat(n - i));
            SymWord<T> w;
            w.reserve(n);
            for (int t = 0; t < n; ++t) w.push_back(t < i ? ipx[perm[t]] : word[perm[t]]);
            out.add(std::move(w), Scalar(coeff));
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

// Coderivation extension of -h:
// H̃_n = -Σ_{σ∈Sh(1,n-1)} ε(σ) (h x_{σ(1)})∨x_{σ(2)}∨…∨x_{σ(n)}.
template <class T>
WordSum<T> transfer_Htilde(const std::function<T(const T&)>& h, const SymWord<T>& word) {
    WordSum<T> out;
    const int n = static_cast<int>(word.size());
    if (n == 0) return out;
    std::vector<int> degs(n);
    for (int j = 0; j < n; ++j) degs[j] = word[j].degree;
    for (const auto& order : shuffle_orders(n, 1)) {
        const int sign = koszul_sign(order, degs);
        T hx = h(word[order[0]].payload);
        if (hx.is_zero()) continue;
        SymWord<T> w;
        w.reserve(n);
        w.push_back(GradedElement<T>{word[order[0]].degree - 1, std::move(hx)});
        for (int t = 1; t < n; ++t) w.push_back(word[order[t]]);
        out.add(std::move(w), sign < 0 ? Scalar::one() : -Scalar::one());
    }
    return out;
}

// Apply a word-to-sum map linearly across a sum of words.
template <class T>
WordSum<T> map_words(const std::function<WordSum<T>(const SymWord<T>&)>& f,
                     const WordSum<T>& sum) {
    WordSum<T> out;
    for (const auto& [w, c] : sum.terms()) out += f(w) * c;
    return out;
}

// The extended homotopy H_n = K_n ∘ H̃_n; the opposite composition order is
// provided separately so their agreement can be checked rather than assumed.
template <class T>
WordSum<T> transfer_H(const std::function<T(const T&)>& ip, const std::function<T(const T&)>& h,
                      const SymWord<T>& word) {
    WordSum<T> out;
    const WordSum<T> ht = transfer_Htilde<T>(h, word);
    for (const auto& [w, c] : ht.terms()) out += transfer_K<T>(ip, w) * c;
    return out;
}

template <class T>
WordSum<T> transfer_H_alt(const std::function<T(const T&)>& ip,
                          const std::function<T(const T&)>& h, const SymWord<T>& word) {
    WordSum<T> out;
    const WordSum<T> kw = transfer_K<T>(ip, word);
    for (const auto& [w, c] : kw.terms()) out += transfer_Htilde<T>(h, w) * c;
    return out;
}

template <class T>
struct TransferInput {
    Retract<T> retract;
    LInftyStructure<T> QB;  // flat, with Q_{B,1} = -retract.dBig
    int K = 4;              // compute Taylor coefficients through this arity
    T zero{};
};

template <class T>
struct TransferData {
    LInftyStructure<T> QA;  // transferred structure on the small space
    LInftyMorphism<T> P;    // projection morphism, P_1 = proj
    LInftyMorphism<T> I;    // quasi-inverse morphism, I_1 = incl
    // Obstruction maps L_m : Sym^m(B[1]) -> A for m = 2..K (index m-2), with
    // P^1_m = L_m ∘ H_m and L_m ∘ Q^m_{B,m} = -Q_{A,1} ∘ L_m.
    std::vector<TaylorMap<T>> L;
};

// Build the transferred structure and both morphisms through arity K by the
// mutual recursion (per arity m = k+1, in this order):
//   (Q_A)_m = Σ_{i=1}^{k} P^1_i ∘ (Q_B)^i_m ∘ incl^{∨m}
//   L_m     = Σ_{ℓ=2}^{m} (Q_A)^1_ℓ ∘ P^ℓ_m - Σ_{ℓ=1}^{k} P^1_ℓ ∘ (Q_B)^ℓ_m
//   P_m     = L_m ∘ H_m
//   I_m     = h ∘ Σ_{ℓ=2}^{m} (Q_B)^1_ℓ ∘ I^ℓ_m
template <class T>
TransferData<T> transfer(const TransferInput<T>& in) {
    if (in.K < 1) throw std::invalid_argument("transfer needs an arity bound of at least 1");
    if (!in.QB.curvature().is_zero())
        throw std::invalid_argument("transfer requires a flat ambient structure");
    const int K = in.K;
    const Retract<T> r = in.retract;
    const LInftyStructure<T> QB = in.QB;
    const T zero = in.zero;

    // Arity tables, filled in increasing arity; closures read them at call
    // time through the shared pointers, so each coefficient may freely invoke
    // every lower-arity one.
    auto qa = std::make_shared<std::vector<TaylorMap<T>>>();
    auto pp = std::make_shared<std::vector<TaylorMap<T>>>();
    auto ii = std::make_shared<std::vector<TaylorMap<T>>>();
    auto ll = std::make_shared<std::vector<TaylorMap<T>>>();

    TaylorMap<T> QAmap = [qa, zero](const SymWord<T>& xs) -> T {
        const int k = static_cast<int>(xs.size());
        if (k == 0) return zero;  // the transferred structure stays flat
        if (k > static_cast<int>(qa->size()))
            throw std::logic_error("transferred-structure arity beyond the computed bound");
        return (*qa)[k - 1](xs);
    };
    TaylorMap<T> Pmap = [pp, zero](const SymWord<T>& xs) -> T {
        const int k = static_cast<int>(xs.size());
        if (k < 1 || k > static_cast<int>(pp->size()))
            throw std::logic_error("projection arity beyond the computed bound");
        return (*pp)[k - 1](xs);
    };
    TaylorMap<T> Imap = [ii, zero](const SymWord<T>& xs) -> T {
        const int k = static_cast<int>(xs.size());
        if (k < 1 || k > static_cast<int>(ii->size()))
            throw std::logic_error("quasi-inverse arity beyond the computed bound");
        return (*ii)[k - 1](xs);
    };

    qa->push_back([r, zero](const SymWord<T>& xs) -> T { return -r.dSmall(xs[0].payload); });
    pp->push_back([r](const SymWord<T>& xs) -> T { return r.proj(xs[0].payload); });
    ii->push_back([r](const SymWord<T>& xs) -> T { return r.incl(xs[0].payload); });

    const std::function<T(const T&)> ip = [r](const T& x) { return r.incl(r.proj(x)); };

    for (int m = 2; m <= K; ++m) {
        TaylorMap<T> qam = [r, QB, Pmap, zero, m](const SymWord<T>& xs) -> T {
            if (static_cast<int>(xs.size()) != m) return zero;
            SymWord<T> w(xs);
            for (auto& f : w) f.payload = r.incl(f.payload);
            T acc = zero;
            for (int i = 1; i <= m - 1; ++i) {
                WordSum<T> comp = coderivation_component<T>(QB.Q, QB.K, i, w);
                if (comp.is_zero()) continue;
                acc_add(acc, apply_to_words<T>(Pmap, comp, zero));
            }
            return acc;
        };
        qa->push_back(qam);

        TaylorMap<T> lm = [QAmap, Pmap, QB, zero, m](const SymWord<T>& xs) -> T {
            if (static_cast<int>(xs.size()) != m) return zero;
            T acc = zero;
            for (int l = 2; l <= m; ++l) {
                WordSum<T> comp = morphism_component<T>(Pmap, m - 1, l, xs);
                if (comp.is_zero()) continue;
                acc_add(acc, apply_to_words<T>(QAmap, comp, zero));
            }
            for (int l = 1; l <= m - 1; ++l) {
                WordSum<T> comp = coderivation_component<T>(QB.Q, QB.K, l, xs);
                if (comp.is_zero()) continue;
                acc_add(acc, -apply_to_words<T>(Pmap, comp, zero));
            }
            return acc;
        };
        ll->push_back(lm);

        TaylorMap<T> pm = [ip, h = r.h, lm, zero, m](const SymWord<T>& xs) -> T {
            if (static_cast<int>(xs.size()) != m) return zero;
            return apply_to_words<T>(lm, transfer_H<T>(ip, h, xs), zero);
        };
        pp->push_back(pm);

        TaylorMap<T> im = [r, QB, Imap, zero, m](const SymWord<T>& xs) -> T {
            if (static_cast<int>(xs.size()) != m) return zero;
            T acc = zero;
            for (int l = 2; l <= m; ++l) {
                if (l > QB.K) {
                    if (QB.zero_beyond) continue;
                    throw std::logic_error("quasi-inverse needs ambient arities beyond the bound");
                }
                WordSum<T> comp = morphism_component<T>(Imap, m - 1, l, xs);
                if (comp.is_zero()) continue;
                acc_add(acc, apply_to_words<T>(QB.Q, comp, zero));
            }
            return acc.is_zero() ? acc : r.h(acc);
        };
        ii->push_back(im);
    }

    TransferData<T> out;
    out.QA.K = K;
    out.QA.zero_beyond = false;
    out.QA.zero = zero;
    out.QA.Q = QAmap;
    out.P.K = K;
    out.P.zero_beyond = false;
    out.P.zero = zero;
    out.P.F = Pmap;
    out.I.K = K;
    out.I.zero_beyond = false;
    out.I.zero = zero;
    out.I.F = Imap;
    out.L = *ll;
    return out;
}

template <class T>
LInftyStructure<T> transfer_structure(const TransferInput<T>& in) {
    return transfer(in).QA;
}

template <class T>
LInftyMorphism<T> transfer_projection(const TransferInput<T>& in) {
    return transfer(in).P;
}

template <class T>
LInftyMorphism<T> quasi_inverse(const TransferInput<T>& in) {
    return transfer(in).I;
}

// Transport a Maurer-Cartan element of Q_B through I∘P and verify that the
// result still satisfies the Maurer-Cartan equation. Needs the transferred
// arity bound to be at least the hbar truncation order.
template <class T>
T mc_via_IP(const LInftyStructure<T>& QB, const LInftyMorphism<T>& I, const LInftyMorphism<T>& P,
            const T& pi) {
    T out = pushforward_mc(compose_morphisms(I, P), pi);
    if (!mc_defect(QB, out).is_zero())
        throw std::runtime_error("transported element fails the Maurer-Cartan equation");
    return out;
}

}  // namespace qred
