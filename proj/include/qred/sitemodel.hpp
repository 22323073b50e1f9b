/*
  The polynomial site model: a Lie algebra acting on the product of a base
  affine space (generators c_1..c_m) and the dual fiber (generators e_1..e_n).
  The fundamental vector field of the basis element e_a is

      (e_a)_M = X_a - f^c_{ab} e_c d/d(e_b)

  where X_a is a user-supplied polynomial derivation in the base generators.
  The assignment a -> (e_a)_M is required to be an antihomomorphism:
  [(e_a)_M, (e_b)_M] = -f^c_{ab} (e_c)_M.
*/
#pragma once

#include "qred/lie.hpp"
#include "qred/sitepoly.hpp"

#include <sstream>

namespace qred {

class SiteModel {
  public:
    SiteModel() = default;
    // X[a][k] = coefficient polynomial of d/dc_k in X_a (base generators only).
    SiteModel(LieData lie, Site site, std::vector<std::vector<SitePolynomial>> X)
        : lie_(std::move(lie)), site_(std::move(site)), X_(std::move(X)) {
        if (static_cast<int>(X_.size()) != lie_.dim())
            throw std::invalid_argument("need one fundamental field per Lie basis element");
        for (const auto& row : X_) {
            if (static_cast<int>(row.size()) != site_.m)
                throw std::invalid_argument("fundamental field must cover all base generators");
            for (const auto& p : row) {
                if (p.gens() != site_.gens())
                    throw std::invalid_argument("fundamental field coefficient width mismatch");
                if (p.degree_range(site_.m, site_.gens()) > 0)
                    throw std::invalid_argument(
                        "base part of a fundamental field may not involve fiber generators");
            }
        }
        if (site_.n != lie_.dim())
            throw std::invalid_argument("fiber dimension must match the Lie algebra dimension");
    }

    const LieData& lie() const { return lie_; }
    const Site& site() const { return site_; }
    const SitePolynomial& base_coeff(int a, int k) const { return X_[a][k]; }

    // Apply only the base part of the fundamental vector field (the action on
    // the configuration space, ignoring the coadjoint fiber part).
    SitePolynomial act_base(int a, const SitePolynomial& f) const {
        SitePolynomial out(site_.gens());
        for (int k = 0; k < site_.m; ++k) {
            if (X_[a][k].is_zero()) continue;
            SitePolynomial d = f.derivative(k);
            if (!d.is_zero()) out += X_[a][k] * d;
        }
        return out;
    }

    // Apply the full fundamental vector field (e_a)_M to a polynomial.
    SitePolynomial act_fundamental(int a, const SitePolynomial& f) const {
        const int G = site_.gens();
        SitePolynomial out(G);
        for (int k = 0; k < site_.m; ++k) {
            if (X_[a][k].is_zero()) continue;
            SitePolynomial d = f.derivative(k);
            if (!d.is_zero()) out += X_[a][k] * d;
        }
        // fiber part: -f^c_{ab} e_c d/d(e_b)
        for (int b = 0; b < site_.n; ++b) {
            SitePolynomial d = f.derivative(site_.m + b);
            if (d.is_zero()) continue;
            for (int c = 0; c < site_.n; ++c) {
                const Rat& fc = lie_.f(c, a, b);
                if (sgn(fc) == 0) continue;
                out += SitePolynomial::generator(G, site_.m + c) * d * (-fc);
            }
        }
        return out;
    }

    // Verify [(e_a)_M, (e_b)_M] = -f^c_{ab} (e_c)_M on every generator.
    CheckResult check_action() const {
        const int G = site_.gens();
        for (int a = 0; a < lie_.dim(); ++a)
            for (int b = a + 1; b < lie_.dim(); ++b)
                for (int g = 0; g < G; ++g) {
                    SitePolynomial xg = SitePolynomial::generator(G, g);
                    SitePolynomial lhs =
                        act_fundamental(a, act_fundamental(b, xg)) -
                        act_fundamental(b, act_fundamental(a, xg));
                    SitePolynomial rhs(G);
                    for (int c = 0; c < lie_.dim(); ++c) {
                        const Rat& fc = lie_.f(c, a, b);
                        if (sgn(fc) != 0) rhs += act_fundamental(c, xg) * (-fc);
                    }
                    if (lhs != rhs) {
                        std::ostringstream os;
                        os << "antihomomorphism violated at (a,b) = (" << a + 1 << "," << b + 1
                           << ") on generator " << site_.gen_name(g);
                        return CheckResult::fail(os.str());
                    }
                }
        return CheckResult::pass();
    }

    bool is_invariant(const SitePolynomial& f) const {
        for (int a = 0; a < lie_.dim(); ++a)
            if (!act_fundamental(a, f).is_zero()) return false;
        return true;
    }

  private:
    LieData lie_;
    Site site_;
    std::vector<std::vector<SitePolynomial>> X_;
};

}  // namespace qred
