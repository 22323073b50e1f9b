/*
  Equivariant star products: the (product, momentum map) data, the Moyal
  builder for constant Poisson structures, the dictionary to Maurer-Cartan
  elements of the curved equivariant operator algebra, and the quantum
  momentum checks.

  An equivariant star product is an invariant associative product
  star = mu + hbar m together with H: g -> C[[hbar]] satisfying
  Lie_{xi_M} = -(1/hbar)[H(xi), .]_star and (1/hbar)[H(xi),H(eta)]_star =
  H([xi,eta]). The pair packs into Pi = hbar m - hbar H, a degree-1 element
  of the curved equivariant algebra with curvature hbar^2 lambda, and the
  pair is equivariant exactly when Pi is Maurer-Cartan there.
*/
#pragma once

#include "qred/equivariant.hpp"
#include "qred/linfty.hpp"
#include "qred/sitemodel.hpp"

#include <sstream>
#include <tuple>

namespace qred {

struct EquivariantStarData {
    PolyDiffOp product;              // arity 2: mu + hbar-corrections
    std::vector<SitePolynomial> H;   // one component per Lie algebra basis vector
};

// Pointwise ("symbol") product of bidifferential operators with coefficient
// multiplication and slotwise multi-index addition. This is the product of
// principal symbols; it is what powers of a first-order bivector need.
inline PolyDiffOp symbol_mul(const PolyDiffOp& A, const PolyDiffOp& B) {
    if (A.arity() != B.arity()) throw std::logic_error("symbol_mul arity mismatch");
    PolyDiffOp out(A.gens(), A.arity());
    for (const auto& [sa, ca] : A.terms())
        for (const auto& [sb, cb] : B.terms()) {
            SlotTuple s(sa.size());
            for (std::size_t i = 0; i < sa.size(); ++i) s[i] = mono_mul(sa[i], sb[i]);
            out.add_term(s, ca * cb);
        }
    return out;
}

// Moyal-type product mu . exp((hbar/2) P) for the constant bivector
// P = sum_{(i,j,theta)} theta (d_i (x) d_j - d_j (x) d_i); exact modulo
// hbar^{N+1} because the exponential series is truncated at the global order.
inline PolyDiffOp moyal_product(int gens,
                                const std::vector<std::tuple<int, int, Rat>>& bivector) {
    PolyDiffOp P(gens, 2);
    for (const auto& [i, j, theta] : bivector) {
        Monomial di = mono_unit(gens, i), dj = mono_unit(gens, j);
        P.add_term({di, dj}, SitePolynomial::constant(gens, Scalar(theta)));
        P.add_term({dj, di}, SitePolynomial::constant(gens, Scalar(-theta)));
    }
    PolyDiffOp star = PolyDiffOp::multiplication(gens);
    PolyDiffOp power = P;
    Rat kfact(1), halfPow(1);
    for (int k = 1; k <= truncation_order(); ++k) {
        kfact *= Rat(k);
        halfPow /= Rat(2);
        star += power * Scalar::monomial(halfPow / kfact, k);
        power = symbol_mul(power, P);
    }
    return star;
}

// The curved equivariant operator algebra: differential eq_d, bracket
// eq_bracket, curvature hbar^2 lambda.
inline LInftyStructure<EquivariantOp> equivariant_curved_structure(const SiteModel& model) {
    const int gens = model.site().gens();
    const int n = model.lie().dim();
    EquivariantOp zero(gens, n);
    EquivariantOp curv = lambda_element(model) * Scalar::monomial(Rat(1), 2);
    return dgla_as_linfty<EquivariantOp>(
        curv, [](const EquivariantOp& a) { return eq_d(a); },
        [](const GradedElement<EquivariantOp>& a, const GradedElement<EquivariantOp>& b) {
            return eq_bracket(a.payload, b.payload);
        },
        zero);
}

// Pi = hbar m - hbar H with the momentum components embedded as
// eps^a (x) (arity-0 operators).
inline EquivariantOp mc_from_star(const SiteModel& model, const EquivariantStarData& s) {
    const int gens = model.site().gens();
    const int n = model.lie().dim();
    if (static_cast<int>(s.H.size()) != n)
        throw std::invalid_argument("momentum map has wrong number of components");
    EquivariantOp pi(gens, n);
    PolyDiffOp hm = s.product - PolyDiffOp::multiplication(gens);
    if (hm.hbar_order() < 1)
        throw std::invalid_argument("product does not start at the pointwise product");
    pi.add_part(EpsMono(n, 0), hm);
    for (int a = 0; a < n; ++a) {
        EpsMono eps(n, 0);
        eps[a] = 1;
        pi.add_part(eps, PolyDiffOp::from_polynomial(-(s.H[a].hbar_shifted(1))));
    }
    return pi;
}

// Inverse of mc_from_star by bidegree; H is recovered modulo hbar^N (its top
// coefficient is cut by the packing with hbar).
inline EquivariantStarData star_from_mc(const SiteModel& model, const EquivariantOp& pi) {
    const int gens = model.site().gens();
    const int n = model.lie().dim();
    EquivariantStarData out;
    out.product = PolyDiffOp::multiplication(gens) + pi.part(EpsMono(n, 0), 2);
    out.H.reserve(n);
    for (int a = 0; a < n; ++a) {
        EpsMono eps(n, 0);
        eps[a] = 1;
        PolyDiffOp ha = pi.part(eps, 0);
        SitePolynomial poly(gens);
        auto it = ha.terms().find(SlotTuple{});
        if (it != ha.terms().end()) poly = it->second;
        out.H.push_back(-(poly.hbar_divided(1)));
    }
    return out;
}

// Both quantum-momentum identities, multiplied through by hbar:
// [H_a, f]_star + hbar (e_a)_M f = 0 and [H_a, H_b]_star - hbar f^c_ab H_c = 0.
inline CheckResult quantum_momentum_check(const SiteModel& model,
                                          const EquivariantStarData& s,
                                          const std::vector<SitePolynomial>& samples) {
    const int n = model.lie().dim();
    auto star = [&s](const SitePolynomial& f, const SitePolynomial& g) {
        return s.product.evaluate({f, g});
    };
    for (int a = 0; a < n; ++a) {
        for (const auto& f : samples) {
            SitePolynomial lhs =
                star(s.H[a], f) - star(f, s.H[a]) + model.act_fundamental(a, f).hbar_shifted(1);
            if (!lhs.is_zero()) {
                std::ostringstream os;
                os << "momentum identity 1 fails for xi = e_" << (a + 1);
                return CheckResult::fail(os.str());
            }
        }
        for (int b = 0; b < n; ++b) {
            SitePolynomial rhs(model.site().gens());
            for (int c = 0; c < n; ++c) {
                Rat fc = model.lie().f(c, a, b);
                if (sgn(fc) != 0) rhs += s.H[c] * Scalar(fc);
            }
            SitePolynomial lhs = star(s.H[a], s.H[b]) - star(s.H[b], s.H[a]) - rhs.hbar_shifted(1);
            if (!lhs.is_zero()) {
                std::ostringstream os;
                os << "momentum identity 2 fails for (e_" << (a + 1) << ", e_" << (b + 1) << ")";
                return CheckResult::fail(os.str());
            }
        }
    }
    return CheckResult::pass();
}

// Invariance of the product and coadjoint equivariance of H (the invariance
// of the combined element Sigma eps^a (x) H_a).
inline CheckResult star_invariance_check(const SiteModel& model, const EquivariantStarData& s) {
    const int n = model.lie().dim();
    EquivariantOp prod = EquivariantOp::wrap(n, s.product);
    if (!eq_is_invariant(model, prod)) return CheckResult::fail("product is not invariant");
    EquivariantOp h(model.site().gens(), n);
    for (int a = 0; a < n; ++a) {
        EpsMono eps(n, 0);
        eps[a] = 1;
        h.add_part(eps, PolyDiffOp::from_polynomial(s.H[a]));
    }
    if (!eq_is_invariant(model, h))
        return CheckResult::fail("momentum map is not equivariant");
    return CheckResult::pass();
}

}  // namespace qred
