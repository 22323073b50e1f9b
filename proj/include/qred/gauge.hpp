// Gauge equivalence of star products: exponential/logarithm calculus for
// arity-1 operator series, transport of products, and an exact order-by-order
// solver that finds T = sum_r hbar^r T_r with exp(T)(f *1 g) = exp(T)f *2 exp(T)g,
// or reports that no such T exists within the configured degree bounds.
#pragma once

#include <optional>
#include <vector>

#include "qred/fit.hpp"
#include "qred/polydiff.hpp"

namespace qred {

// Identity operator f -> f.
inline PolyDiffOp op_identity(int gens) {
    PolyDiffOp d(gens, 1);
    d.add_term(SlotTuple{Monomial(gens, 0)}, SitePolynomial::constant(gens, Scalar::one()));
    return d;
}

// Coefficient of hbar^k, as an operator with hbar-free coefficients.
inline PolyDiffOp op_hbar_coefficient(const PolyDiffOp& d, int k) {
    PolyDiffOp out(d.gens(), d.arity());
    for (const auto& [slots, c] : d.terms()) {
        SitePolynomial p(d.gens());
        for (const auto& [m, s] : c.terms())
            if (k < s.size() && sgn(s.coeff(k)) != 0) p.add_term(m, Scalar(s.coeff(k)));
        if (!p.is_zero()) out.add_term(slots, p);
    }
    return out;
}

inline PolyDiffOp op_hbar_shifted(const PolyDiffOp& d, int k) {
    PolyDiffOp out(d.gens(), d.arity());
    for (const auto& [slots, c] : d.terms()) out.add_term(slots, c.hbar_shifted(k));
    return out;
}

// exp of an arity-1 operator of hbar-filtration >= 1 (the series terminates
// under truncation).
inline PolyDiffOp op_exp(const PolyDiffOp& v) {
    if (v.arity() != 1) throw std::invalid_argument("op_exp: arity must be 1");
    if (!v.is_zero() && v.hbar_order() < 1)
        throw std::invalid_argument("op_exp: operator must vanish mod hbar");
    PolyDiffOp out = op_identity(v.gens());
    PolyDiffOp term = op_identity(v.gens());
    for (int k = 1; k <= truncation_order(); ++k) {
        term = circ(term, v) * Rat(1, k);
        if (term.is_zero()) break;
        out = out + term;
    }
    return out;
}

// log of an operator of the form id + (hbar-filtration >= 1).
inline PolyDiffOp op_log(const PolyDiffOp& s) {
    PolyDiffOp v = s - op_identity(s.gens());
    if (!v.is_zero() && v.hbar_order() < 1)
        throw std::invalid_argument("op_log: operator must be id mod hbar");
    PolyDiffOp out(s.gens(), 1);
    PolyDiffOp pw = op_identity(s.gens());
    for (int k = 1; k <= truncation_order(); ++k) {
        pw = circ(pw, v);
        if (pw.is_zero()) break;
        out = out + pw * Rat((k % 2 == 1) ? 1 : -1, k);
    }
    return out;
}

// Inverse of id + (hbar-filtration >= 1), by the geometric series.
inline PolyDiffOp op_inverse(const PolyDiffOp& s) {
    PolyDiffOp v = s - op_identity(s.gens());
    if (!v.is_zero() && v.hbar_order() < 1)
        throw std::invalid_argument("op_inverse: operator must be id mod hbar");
    PolyDiffOp out = op_identity(s.gens());
    PolyDiffOp pw = op_identity(s.gens());
    for (int k = 1; k <= truncation_order(); ++k) {
        pw = circ(pw, v);
        if (pw.is_zero()) break;
        out = out + pw * Rat((k % 2 == 0) ? 1 : -1, 1);
    }
    return out;
}

// The product transported along an invertible S: (f,g) -> S(star(S^-1 f, S^-1 g)).
inline PolyDiffOp transport_star(const PolyDiffOp& s, const PolyDiffOp& star) {
    PolyDiffOp si = op_inverse(s);
    return circ(s, star).insert_at(0, si).insert_at(1, si);
}

// S(f *1 g) - S(f) *2 S(g), as an arity-2 operator.
inline PolyDiffOp gauge_defect(const PolyDiffOp& s, const PolyDiffOp& star1,
                               const PolyDiffOp& star2) {
    return circ(s, star1) - star2.insert_at(0, s).insert_at(1, s);
}

struct GaugeEquivalence {
    std::vector<PolyDiffOp> T;  // T[r-1] = hbar-free coefficient at hbar^r
    PolyDiffOp S;               // exp(sum_r hbar^r T_r)
};

// Finds T = sum_{r=1}^{maxOrder} hbar^r T_r, each T_r a differential operator
// vanishing on constants with differential order <= r+1 and polynomial
// coefficients of total degree <= coeffDegreeBase + r, such that S = exp(T)
// intertwines the two products exactly under truncation. Both inputs must be
// unital associative deformations of the pointwise product. The linear system
// at each order is diagonal in the Leibniz basis, so the solve is an exact
// extraction followed by a full verification; any inconsistency (or a needed
// term outside the degree bounds) yields nullopt. coeffDegreeBase < 0 means
// "largest coefficient degree appearing in either input".
inline std::optional<GaugeEquivalence> gauge_solve(const PolyDiffOp& star1,
                                                   const PolyDiffOp& star2,
                                                   int maxOrder = truncation_order(),
                                                   int coeffDegreeBase = -1) {
    if (star1.gens() != star2.gens() || star1.arity() != 2 || star2.arity() != 2)
        throw std::invalid_argument("gauge_solve: need two products on the same generators");
    const int gens = star1.gens();
    const PolyDiffOp mult = PolyDiffOp::multiplication(gens);
    if (!(op_hbar_coefficient(star1, 0) == mult) || !(op_hbar_coefficient(star2, 0) == mult))
        return std::nullopt;

    if (coeffDegreeBase < 0) {
        coeffDegreeBase = 0;
        for (const PolyDiffOp* st : {&star1, &star2})
            for (const auto& [slots, c] : st->terms())
                coeffDegreeBase = std::max(coeffDegreeBase, c.total_degree());
    }

    GaugeEquivalence out;
    out.S = op_identity(gens);
    PolyDiffOp exponent(gens, 1);
    for (int r = 1; r <= maxOrder; ++r) {
        PolyDiffOp er = op_hbar_coefficient(gauge_defect(out.S, star1, star2), r);
        PolyDiffOp tr(gens, 1);
        if (!er.is_zero()) {
            // A correction T_r enters the defect at order r through the
            // Hochschild differential of the pointwise product:
            //   [T_r, mult](f,g) = T_r(fg) - T_r(f)g - f T_r(g),
            // whose (gamma1, gamma2) entry for a term x^beta d^gamma is the
            // Leibniz binomial binom(gamma, gamma1) whenever gamma1+gamma2 =
            // gamma with both halves nonempty, and zero otherwise. Each
            // unknown coefficient is therefore read off from any one matching
            // entry of -E_r; consistency across entries is checked below.
            std::map<Monomial, SitePolynomial> cand;
            for (const auto& [slots, c] : er.terms()) {
                const Monomial& g1 = slots[0];
                const Monomial& g2 = slots[1];
                if (mono_total(g1) == 0 || mono_total(g2) == 0) return std::nullopt;
                Monomial g = mono_mul(g1, g2);
                if (mono_total(g) > r + 1) return std::nullopt;
                if (cand.count(g)) continue;  // verification checks the other splits
                Rat binom = mono_falling(g, g1) / mono_factorial(g1);
                SitePolynomial p(gens);
                for (const auto& [m, s] : c.terms()) {
                    if (static_cast<int>(mono_total(m)) > coeffDegreeBase + r)
                        return std::nullopt;
                    p.add_term(m, Scalar(-s.coeff(0) / binom));
                }
                cand.emplace(g, p);
            }
            for (const auto& [g, p] : cand) tr.add_term(SlotTuple{g}, p);
            if (!(gerstenhaber(tr, mult) == -er)) return std::nullopt;
        }
        out.T.push_back(tr);
        exponent = exponent + op_hbar_shifted(tr, r);
        out.S = op_exp(exponent);
    }
    if (!gauge_defect(out.S, star1, star2).is_zero()) return std::nullopt;
    return out;
}

}  // namespace qred
