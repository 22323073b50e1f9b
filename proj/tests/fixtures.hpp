/*
  Shared test fixtures: three small site models.

    fix_a   abelian g = R acting on C = R^3 by translation along x
    fix_h   Heisenberg h3 (f^3_{12} = 1) acting on C = R^3
    fix_aff aff(1) (f^2_{12} = 1) acting on C = R^1
*/
#pragma once

#include "qred/expr.hpp"
#include "qred/sitemodel.hpp"

namespace qred::fixtures {

inline SiteModel fix_a() {
    LieData lie(1);
    Site site{3, 1, {"x", "y", "z"}};
    std::vector<std::vector<SitePolynomial>> X(1);
    X[0] = {parse_poly(site, "1"), SitePolynomial(site.gens()), SitePolynomial(site.gens())};
    return SiteModel(lie, site, X);
}

inline SiteModel fix_h() {
    LieData lie(3);
    lie.set_f(2, 0, 1, Rat(1));  // [e1,e2] = e3 (0-based indices)
    Site site{3, 3, {"x", "y", "z"}};
    const int G = site.gens();
    std::vector<std::vector<SitePolynomial>> X(3);
    // X1 = d/dx, X2 = d/dy - x d/dz, X3 = d/dz; then [X1,X2] = -X3 as the
    // antihomomorphism law for f^3_{12} = 1 requires.
    X[0] = {parse_poly(site, "1"), SitePolynomial(G), SitePolynomial(G)};
    X[1] = {SitePolynomial(G), parse_poly(site, "1"), parse_poly(site, "-x")};
    X[2] = {SitePolynomial(G), SitePolynomial(G), parse_poly(site, "1")};
    return SiteModel(lie, site, X);
}

inline SiteModel fix_aff() {
    LieData lie(2);
    lie.set_f(1, 0, 1, Rat(1));  // [e1,e2] = e2
    Site site{1, 2, {"x"}};
    std::vector<std::vector<SitePolynomial>> X(2);
    X[0] = {parse_poly(site, "x")};
    X[1] = {parse_poly(site, "1")};
    return SiteModel(lie, site, X);
}

}  // namespace qred::fixtures
