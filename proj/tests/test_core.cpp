/* Core algebra: truncated scalars, site polynomials, Lie data, site models. */
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"
#include "qred/expr.hpp"
#include "qred/sampling.hpp"
#include "qred/sitemodel.hpp"

using namespace qred;
using namespace qred::fixtures;

TEST_CASE("scalar arithmetic is an exact truncated ring") {
    set_truncation_order(3);
    Scalar a = Scalar(Rat(2, 3)) + Scalar::monomial(Rat(1, 2), 1);
    Scalar b = Scalar::monomial(Rat(-5), 2) + Scalar::one();
    CHECK((a * b).coeff(0) == Rat(2, 3));
    CHECK((a * b).coeff(1) == Rat(1, 2));
    CHECK((a * b).coeff(2) == Rat(-10, 3));
    CHECK((a * b).coeff(3) == Rat(-5, 2));

    // truncation: h^3 * h^1 = 0
    CHECK((Scalar::monomial(Rat(1), 3) * Scalar::hbar()).is_zero());

    Rng rng(7);
    for (int t = 0; t < 50; ++t) {
        Scalar x = Scalar::monomial(rng.rat_nonzero(), rng.uniform(0, 3));
        Scalar y = Scalar::monomial(rng.rat_nonzero(), rng.uniform(0, 3));
        Scalar z = Scalar::monomial(rng.rat_nonzero(), rng.uniform(0, 3));
        CHECK((x + y) * z == x * z + y * z);
        CHECK((x * y) * z == x * (y * z));
        CHECK(x * y == y * x);
    }
}

TEST_CASE("scalar division requires an invertible constant term") {
    set_truncation_order(3);
    Scalar a = Scalar::one() + Scalar::hbar();
    Scalar inv = Scalar::one() / a;
    CHECK(inv * a == Scalar::one());
    CHECK_THROWS_AS(a / Scalar::hbar(), std::domain_error);
    Scalar t = Scalar::monomial(Rat(3), 2);
    CHECK(t.divided_by_hbar(2) == Scalar(Rat(3)));
    CHECK_THROWS_AS(t.divided_by_hbar(3), std::domain_error);
}

TEST_CASE("site polynomials multiply and differentiate exactly") {
    set_truncation_order(3);
    Site site{2, 1, {"x", "y"}};
    SitePolynomial p = parse_poly(site, "x^2*y + 3/2*e1");
    SitePolynomial q = parse_poly(site, "y - e1");
    CHECK(p * q == parse_poly(site, "x^2*y^2 - x^2*y*e1 + 3/2*y*e1 - 3/2*e1^2"));
    CHECK(p.derivative(0) == parse_poly(site, "2*x*y"));
    CHECK(p.derivative(2) == parse_poly(site, "3/2"));
    CHECK(p.restrict_zero(2, 3) == parse_poly(site, "x^2*y"));
    CHECK(p.degree_range(2, 3) == 1);
    CHECK(p.total_degree() == 3);

    // derivations commute and satisfy Leibniz on random products
    Rng rng(11);
    for (int t = 0; t < 30; ++t) {
        SitePolynomial f = rng.poly(3, 3, 3);
        SitePolynomial g = rng.poly(3, 3, 3);
        int u = rng.uniform(0, 2), v = rng.uniform(0, 2);
        CHECK(f.derivative(u).derivative(v) == f.derivative(v).derivative(u));
        CHECK((f * g).derivative(u) == f.derivative(u) * g + f * g.derivative(u));
    }
}

TEST_CASE("lie validation accepts the fixtures and rejects broken data") {
    CHECK(fix_a().lie().validate().ok);
    CHECK(fix_h().lie().validate().ok);
    CHECK(fix_aff().lie().validate().ok);

    LieData bad(2);
    // antisymmetry violated by writing the raw slot (bypassing set_f's pairing)
    bad.set_f(0, 0, 1, Rat(1));
    CHECK(bad.validate().ok);

    // so(3) passes; [e1,e2]=e1, [e1,e3]=e2, [e2,e3]=0 violates Jacobi
    LieData so3(3);
    so3.set_f(2, 0, 1, Rat(1));
    so3.set_f(0, 1, 2, Rat(1));
    so3.set_f(1, 2, 0, Rat(1));
    CHECK(so3.validate().ok);
    LieData nonlie(3);
    nonlie.set_f(0, 0, 1, Rat(1));
    nonlie.set_f(1, 0, 2, Rat(1));
    CHECK_FALSE(nonlie.validate().ok);
    CHECK(nonlie.validate().detail.find("Jacobi") != std::string::npos);

    // heisenberg modular form vanishes; aff(1) has Delta_1 = 1
    CHECK(fix_h().lie().modular(0) == Rat(0));
    CHECK(fix_aff().lie().modular(0) == Rat(1));
}

TEST_CASE("fundamental fields act correctly on the fixtures") {
    SiteModel A = fix_a();
    const Site& sa = A.site();
    CHECK(A.act_fundamental(0, parse_poly(sa, "x*y")) == parse_poly(sa, "y"));
    CHECK(A.act_fundamental(0, parse_poly(sa, "e1")).is_zero());

    SiteModel H = fix_h();
    const Site& sh = H.site();
    // coadjoint part: (e_1)_M e_2 = -f^3_{12} e_3 = -e_3
    CHECK(H.act_fundamental(0, parse_poly(sh, "e2")) == parse_poly(sh, "-e3"));
    CHECK(H.act_fundamental(0, parse_poly(sh, "e1")).is_zero());
    CHECK(H.act_fundamental(1, parse_poly(sh, "z")) == parse_poly(sh, "-x"));
}

TEST_CASE("check_action verifies the antihomomorphism law") {
    CHECK(fix_a().check_action().ok);
    CHECK(fix_h().check_action().ok);
    CHECK(fix_aff().check_action().ok);

    // Replacing X_2 by d/dy alone breaks the law at the pair (1,2).
    {
        LieData lie(3);
        lie.set_f(2, 0, 1, Rat(1));
        Site site{3, 3, {"x", "y", "z"}};
        const int G = site.gens();
        std::vector<std::vector<SitePolynomial>> X(3);
        X[0] = {parse_poly(site, "1"), SitePolynomial(G), SitePolynomial(G)};
        X[1] = {SitePolynomial(G), parse_poly(site, "1"), SitePolynomial(G)};
        X[2] = {SitePolynomial(G), SitePolynomial(G), parse_poly(site, "1")};
        SiteModel broken(lie, site, X);
        auto r = broken.check_action();
        CHECK_FALSE(r.ok);
        CHECK(r.detail.find("(1,2)") != std::string::npos);
    }
}

TEST_CASE("commutator property of act_fundamental on random polynomials") {
    for (const SiteModel& M : {fix_h(), fix_aff()}) {
        Rng rng(23);
        const int n = M.lie().dim();
        for (int t = 0; t < 25; ++t) {
            SitePolynomial f = rng.poly(M.site().gens(), 3, 3);
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b) {
                    SitePolynomial lhs = M.act_fundamental(a, M.act_fundamental(b, f)) -
                                         M.act_fundamental(b, M.act_fundamental(a, f));
                    SitePolynomial rhs(M.site().gens());
                    for (int c = 0; c < n; ++c) {
                        const Rat& fc = M.lie().f(c, a, b);
                        if (sgn(fc) != 0) rhs -= M.act_fundamental(c, f) * fc;
                    }
                    CHECK(lhs == rhs);
                }
        }
    }
}

TEST_CASE("invariance testing") {
    SiteModel A = fix_a();
    CHECK(A.is_invariant(parse_poly(A.site(), "y^2*z")));
    CHECK_FALSE(A.is_invariant(parse_poly(A.site(), "x")));

    SiteModel H = fix_h();
    CHECK_FALSE(H.is_invariant(parse_poly(H.site(), "z - x*y")));
    CHECK(H.is_invariant(parse_poly(H.site(), "1")));
    // e3 is central in h3 and killed by every X_a
    CHECK(H.is_invariant(parse_poly(H.site(), "e3")));
}
