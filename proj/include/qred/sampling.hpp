/*
  Deterministic random sampling for property tests: a fixed-seed generator and
  builders for random polynomials and polydifferential operators. mt19937_64
  is seeded directly and bounded draws use plain modulo so that streams are
  reproducible across platforms.
*/
#pragma once

#include "qred/polydiff.hpp"
#include "qred/sitepoly.hpp"

#include <random>

namespace qred {

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next() { return eng_(); }
    int uniform(int lo, int hi) {  // inclusive bounds
        if (hi <= lo) return lo;
        return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1));
    }
    // small nonzero rational with numerator in [-4,4], denominator in [1,3]
    Rat rat_nonzero() {
        int num = 0;
        while (num == 0) num = uniform(-4, 4);
        return rat(num, uniform(1, 3));
    }

    Monomial monomial(int gens, int max_total) {
        Monomial a(gens, 0);
        int total = uniform(0, max_total);
        for (int i = 0; i < total; ++i) a[uniform(0, gens - 1)] += 1;
        return a;
    }

    // Random polynomial with `terms` monomials of total degree <= max_deg,
    // each coefficient a rational times h^k with k <= hbar_max.
    SitePolynomial poly(int gens, int max_deg, int terms, int hbar_max = 0) {
        SitePolynomial p(gens);
        for (int t = 0; t < terms; ++t) {
            int k = hbar_max > 0 ? uniform(0, hbar_max) : 0;
            p.add_term(monomial(gens, max_deg), Scalar::monomial(rat_nonzero(), k));
        }
        return p;
    }

    // Random normalized operator: every slot has total order in [1, max_slot].
    PolyDiffOp op(int gens, int arity, int max_slot, int coeff_deg, int terms,
                  int hbar_max = 0) {
        PolyDiffOp d(gens, arity);
        for (int t = 0; t < terms; ++t) {
            SlotTuple slots;
            for (int j = 0; j < arity; ++j) {
                Monomial a(gens, 0);
                int total = uniform(1, std::max(1, max_slot));
                for (int i = 0; i < total; ++i) a[uniform(0, gens - 1)] += 1;
                slots.push_back(std::move(a));
            }
            int k = hbar_max > 0 ? uniform(0, hbar_max) : 0;
            SitePolynomial c(gens);
            c.add_term(monomial(gens, coeff_deg), Scalar::monomial(rat_nonzero(), k));
            d.add_term(slots, c);
        }
        return d;
    }

  private:
    std::mt19937_64 eng_;
};

}  // namespace qred
