/*
  The Gutt star product on polynomials of the site, computed through the
  crossed product C^infty(C) x| U_hbar(g): split each monomial into base and
  fiber parts, push the fiber part through the symmetrization isomorphism,
  multiply with (f,x)(g,y) = sum f Lie(x_(1))(g) (x) x_(2) y, and pull back.
  Lie is the algebra extension of e_a |-> -hbar X_a. Also here: the
  bidifferential realization by exact fitting, the invariance and momentum
  checks, and the action-algebroid bracket.
*/
#pragma once

#include "qred/fit.hpp"
#include "qred/polydiff.hpp"
#include "qred/sitemodel.hpp"
#include "qred/uenv.hpp"

#include <map>
#include <string>
#include <vector>

namespace qred {

class GuttProduct {
  public:
    explicit GuttProduct(const SiteModel& model) : model_(&model), alg_(model.lie()) {}

    const SiteModel& model() const { return *model_; }
    const UEnvAlgebra& uenv() const { return alg_; }

    SitePolynomial mul(const SitePolynomial& f, const SitePolynomial& g) const {
        const Site& st = model_->site();
        const int G = st.gens();
        if (f.gens() != G || g.gens() != G)
            throw std::invalid_argument("product arguments must live on the site");
        SitePolynomial out(G);
        for (const auto& [mf, cf] : f.terms()) {
            auto [cMonoF, eF] = split_monomial(mf);
            SitePolynomial fC(G);
            fC.add_term(cMonoF, cf);
            for (const auto& [mg, cg] : g.terms()) {
                auto [cMonoG, eG] = split_monomial(mg);
                SitePolynomial gC(G);
                gC.add_term(cMonoG, cg);
                const UEnvElement& uG = alg_.pbw_monomial(eG);
                for (const auto& [s, rest, binom] : sym_splits(eF)) {
                    const PolyDiffOp& L = lie_mono_op(s);
                    if (L.is_zero()) continue;
                    SitePolynomial lieG = L.evaluate({gC});
                    if (lieG.is_zero()) continue;
                    SitePolynomial eP = alg_.pbw_inv(alg_.mul(alg_.pbw_monomial(rest), uG));
                    if (eP.is_zero()) continue;
                    out += fC * lieG * lift_fiber(eP) * Scalar(binom);
                }
            }
        }
        return out;
    }

    // The operator realization of a symmetric fiber monomial: Lie extended to
    // the enveloping algebra via the symmetrization map, acting on the base.
    const PolyDiffOp& lie_operator(const Monomial& fiberMono) const { return lie_mono_op(fiberMono); }

  private:
    std::pair<Monomial, Monomial> split_monomial(const Monomial& m) const {
        const Site& st = model_->site();
        Monomial base = m, fiber(static_cast<size_t>(st.n), 0);
        for (int j = 0; j < st.n; ++j) {
            fiber[static_cast<size_t>(j)] = m[static_cast<size_t>(st.m + j)];
            base[static_cast<size_t>(st.m + j)] = 0;
        }
        return {std::move(base), std::move(fiber)};
    }

    SitePolynomial lift_fiber(const SitePolynomial& eP) const {
        const Site& st = model_->site();
        SitePolynomial out(st.gens());
        for (const auto& [me, c] : eP.terms()) {
            Monomial full(static_cast<size_t>(st.gens()), 0);
            for (int j = 0; j < st.n; ++j) full[static_cast<size_t>(st.m + j)] = me[static_cast<size_t>(j)];
            out.add_term(full, c);
        }
        return out;
    }

    // Lie(e_a) = -hbar X_a as an arity-1 operator.
    PolyDiffOp lie_generator_op(int a) const {
        const Site& st = model_->site();
        PolyDiffOp X(st.gens(), 1);
        for (int k = 0; k < st.m; ++k) {
            const SitePolynomial& c = model_->base_coeff(a, k);
            if (c.is_zero()) continue;
            X.add_term(SlotTuple{mono_unit(st.gens(), k)}, -(c.hbar_shifted(1)));
        }
        return X;
    }

    // Lie of a PBW word: the composition of the generator operators.
    const PolyDiffOp& lie_word_op(const UWord& w) const {
        auto it = lieWord_.find(w);
        if (it != lieWord_.end()) return it->second;
        PolyDiffOp op;
        if (w.empty()) {
            op = PolyDiffOp(model_->site().gens(), 1);
            op.add_term(SlotTuple{Monomial(static_cast<size_t>(model_->site().gens()), 0)},
                        SitePolynomial::constant(model_->site().gens(), Scalar::one()));
        } else {
            UWord tail(w.begin() + 1, w.end());
            op = circ(lie_generator_op(w.front()), lie_word_op(tail));
        }
        return lieWord_.emplace(w, std::move(op)).first->second;
    }

    // Lie of the symmetrization of one fiber exponent vector.
    const PolyDiffOp& lie_mono_op(const Monomial& s) const {
        auto it = lieMono_.find(s);
        if (it != lieMono_.end()) return it->second;
        PolyDiffOp acc(model_->site().gens(), 1);
        for (const auto& [w, c] : alg_.pbw_monomial(s).terms()) acc += lie_word_op(w) * c;
        return lieMono_.emplace(s, std::move(acc)).first->second;
    }

    const SiteModel* model_ = nullptr;
    UEnvAlgebra alg_;
    mutable std::map<UWord, PolyDiffOp> lieWord_;
    mutable std::map<Monomial, PolyDiffOp> lieMono_;
};

// The higher components hbar m_G of the product as one bidifferential
// operator, recovered exactly from evaluations on monomials.
inline PolyDiffOp gutt_bidiff(const GuttProduct& gp, int slotOrder = truncation_order()) {
    const int G = gp.model().site().gens();
    PolyDiffOp star = fit_polydiff(
        [&gp](const std::vector<SitePolynomial>& args) { return gp.mul(args[0], args[1]); }, G, 2,
        slotOrder);
    return star - PolyDiffOp::multiplication(G);
}

// All site monomials with base degree <= cDeg and fiber degree <= eDeg.
inline std::vector<Monomial> site_monomials(const Site& st, int cDeg, int eDeg) {
    std::vector<Monomial> out;
    for (const Monomial& b : monomials_up_to(st.m, cDeg))
        for (const Monomial& e : monomials_up_to(st.n, eDeg)) {
            Monomial m(static_cast<size_t>(st.gens()), 0);
            for (int k = 0; k < st.m; ++k) m[static_cast<size_t>(k)] = b[static_cast<size_t>(k)];
            for (int j = 0; j < st.n; ++j) m[static_cast<size_t>(st.m + j)] = e[static_cast<size_t>(j)];
            out.push_back(std::move(m));
        }
    return out;
}

// Exhaustive oracle comparison of multiplication + hm against the exact
// product on all monomial pairs within the degree bounds.
inline CheckResult gutt_bidiff_check(const GuttProduct& gp, const PolyDiffOp& hm, int cDeg,
                                     int eDeg) {
    const Site& st = gp.model().site();
    const int G = st.gens();
    PolyDiffOp star = PolyDiffOp::multiplication(G) + hm;
    std::vector<Monomial> monos = site_monomials(st, cDeg, eDeg);
    for (const Monomial& A : monos) {
        SitePolynomial pa(G);
        pa.add_term(A, Scalar::one());
        for (const Monomial& B : monos) {
            SitePolynomial pb(G);
            pb.add_term(B, Scalar::one());
            if (star.evaluate({pa, pb}) != gp.mul(pa, pb))
                return CheckResult::fail("operator disagrees with the product on (" +
                                         pa.str(st) + ", " + pb.str(st) + ")");
        }
    }
    return CheckResult::pass();
}

// Invariance of the product under every fundamental field together with the
// momentum identity [e_a, f] = -hbar (e_a)_M f.
inline CheckResult gutt_momentum_property(const GuttProduct& gp,
                                          const std::vector<SitePolynomial>& samples) {
    const SiteModel& model = gp.model();
    const Site& st = model.site();
    for (int a = 0; a < st.n; ++a) {
        SitePolynomial ea = SitePolynomial::generator(st.gens(), st.m + a);
        for (const auto& f : samples) {
            SitePolynomial ad = gp.mul(ea, f) - gp.mul(f, ea);
            if (!(ad + model.act_fundamental(a, f).hbar_shifted(1)).is_zero())
                return CheckResult::fail("momentum identity fails for e_" + std::to_string(a + 1));
        }
        for (size_t i = 0; i < samples.size(); ++i)
            for (size_t j = 0; j < samples.size(); ++j) {
                if (i == j) continue;
                SitePolynomial lhs = model.act_fundamental(a, gp.mul(samples[i], samples[j]));
                SitePolynomial rhs = gp.mul(model.act_fundamental(a, samples[i]), samples[j]) +
                                     gp.mul(samples[i], model.act_fundamental(a, samples[j]));
                if (lhs != rhs)
                    return CheckResult::fail("product is not invariant under e_" +
                                             std::to_string(a + 1));
            }
    }
    return CheckResult::pass();
}

// Bracket of the action algebroid on g-valued polynomial sections of the
// base: [xi, eta] = [xi, eta]_pointwise - Lie_{xi_C} eta + Lie_{eta_C} xi,
// with anchor rho(xi) = -xi_C.
inline std::vector<SitePolynomial> algebroid_bracket(const SiteModel& model,
                                                     const std::vector<SitePolynomial>& xi,
                                                     const std::vector<SitePolynomial>& eta) {
    const Site& st = model.site();
    const int n = st.n;
    if (static_cast<int>(xi.size()) != n || static_cast<int>(eta.size()) != n)
        throw std::invalid_argument("sections need one component per Lie basis element");
    std::vector<SitePolynomial> out(static_cast<size_t>(n), SitePolynomial(st.gens()));
    for (int c = 0; c < n; ++c) {
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                const Rat& fc = model.lie().f(c, a, b);
                if (sgn(fc) == 0) continue;
                out[static_cast<size_t>(c)] +=
                    xi[static_cast<size_t>(a)] * eta[static_cast<size_t>(b)] * Scalar(fc);
            }
        for (int a = 0; a < n; ++a) {
            out[static_cast<size_t>(c)] -=
                xi[static_cast<size_t>(a)] * model.act_base(a, eta[static_cast<size_t>(c)]);
            out[static_cast<size_t>(c)] +=
                eta[static_cast<size_t>(a)] * model.act_base(a, xi[static_cast<size_t>(c)]);
        }
    }
    return out;
}

}  // namespace qred
