// The hbar-rescaled enveloping algebra, the symmetrization isomorphism, and
// the Gutt star product: exact values, associativity, the coalgebra property
// of the symmetrization, the bidifferential realization, the momentum and
// invariance identities, and the action-algebroid bracket.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"
#include "qred/expr.hpp"
#include "qred/gutt.hpp"
#include "qred/sampling.hpp"

#include <map>
#include <utility>

using namespace qred;

namespace {

// Heisenberg model with the structure-constant sign flipped against the same
// fundamental fields; the crossed product over it is inconsistent.
SiteModel fix_h_flipped() {
    LieData lie(3);
    lie.set_f(2, 0, 1, Rat(-1));
    Site site{3, 3, {"x", "y", "z"}};
    const int G = site.gens();
    std::vector<std::vector<SitePolynomial>> X(3);
    X[0] = {parse_poly(site, "1"), SitePolynomial(G), SitePolynomial(G)};
    X[1] = {SitePolynomial(G), parse_poly(site, "1"), parse_poly(site, "-x")};
    X[2] = {SitePolynomial(G), SitePolynomial(G), parse_poly(site, "1")};
    return SiteModel(lie, site, X);
}

SitePolynomial emono(int n, const std::vector<int>& gens) {
    SitePolynomial p = SitePolynomial::constant(n, Scalar::one());
    for (int g : gens) p = p * SitePolynomial::generator(n, g);
    return p;
}

// random element of U_hbar built from a few random words
UEnvElement random_uenv(Rng& rng, const UEnvAlgebra& alg, int maxLen) {
    UEnvElement u(alg.dim());
    for (int t = 0; t < 3; ++t) {
        UWord w;
        int len = rng.uniform(0, maxLen);
        for (int i = 0; i < len; ++i) w.push_back(rng.uniform(0, alg.dim() - 1));
        u += alg.canonical(w) * Scalar(rng.rat_nonzero());
    }
    return u;
}

// flattened tensor square of U_hbar: canonical word pairs -> Scalar
using UTensor = std::map<std::pair<UWord, UWord>, Scalar>;

void utensor_add(UTensor& t, const UWord& l, const UWord& r, const Scalar& c) {
    if (c.is_zero()) return;
    auto key = std::make_pair(l, r);
    auto it = t.find(key);
    if (it == t.end()) {
        t.emplace(std::move(key), c);
    } else {
        it->second += c;
        if (it->second.is_zero()) t.erase(it);
    }
}

// coproduct of U_hbar: algebra-morphism extension of e_a -> e_a(x)1 + 1(x)e_a
UTensor uenv_coproduct_word(const UEnvAlgebra& alg, const UWord& w) {
    UTensor t;
    t[{UWord{}, UWord{}}] = Scalar::one();
    for (int a : w) {
        UTensor next;
        for (const auto& [legs, c] : t) {
            for (int side = 0; side < 2; ++side) {
                UWord grown = (side == 0) ? legs.first : legs.second;
                grown.push_back(a);
                for (const auto& [gw, gc] : alg.canonical(grown).terms())
                    utensor_add(next, side == 0 ? gw : legs.first, side == 0 ? legs.second : gw,
                                c * gc);
            }
        }
        t = std::move(next);
    }
    return t;
}

}  // namespace

TEST_CASE("PBW rewriting in the enveloping algebra") {
    auto model = fixtures::fix_h();
    UEnvAlgebra alg(model.lie());

    // e2 e1 = e1 e2 - hbar e3
    UEnvElement lhs = alg.mul(UEnvElement::generator(3, 1), UEnvElement::generator(3, 0));
    UEnvElement want(3);
    want.add_term({0, 1}, Scalar::one());
    want.add_term({2}, -Scalar::hbar());
    CHECK(lhs == want);

    // the central element commutes with everything
    for (int a = 0; a < 3; ++a)
        CHECK(alg.mul(UEnvElement::generator(3, 2), UEnvElement::generator(3, a)) ==
              alg.mul(UEnvElement::generator(3, a), UEnvElement::generator(3, 2)));

    // abelian algebra: words just sort
    UEnvAlgebra ab(fixtures::fix_a().lie());
    UEnvElement sorted(1);
    sorted.add_term({0, 0, 0}, Scalar::one());
    CHECK(ab.canonical({0, 0, 0}) == sorted);

    // associativity of the rewritten product on random elements
    for (auto mk : {fixtures::fix_h, fixtures::fix_aff}) {
        auto m = mk();
        UEnvAlgebra a2(m.lie());
        Rng rng(4242);
        for (int t = 0; t < 6; ++t) {
            UEnvElement u = random_uenv(rng, a2, 3);
            UEnvElement v = random_uenv(rng, a2, 3);
            UEnvElement w = random_uenv(rng, a2, 2);
            CHECK(a2.mul(a2.mul(u, v), w) == a2.mul(u, a2.mul(v, w)));
        }
    }
}

TEST_CASE("symmetrization and its inverse") {
    auto model = fixtures::fix_h();
    UEnvAlgebra alg(model.lie());
    const int n = 3;

    // pbw(e1) = e1
    CHECK(alg.pbw(SitePolynomial::generator(n, 0)) == UEnvElement::generator(n, 0));

    // pbw(e1 e2) = e1e2 - (hbar/2) e3
    UEnvElement want(n);
    want.add_term({0, 1}, Scalar::one());
    want.add_term({2}, Scalar::monomial(Rat(-1, 2), 1));
    CHECK(alg.pbw(emono(n, {0, 1})) == want);

    // exact inverse on every monomial of degree <= 4
    for (const Monomial& m : monomials_up_to(n, 4)) {
        SitePolynomial p(n);
        p.add_term(m, Scalar::one());
        CHECK(alg.pbw_inv(alg.pbw(p)) == p);
    }

    // and on random polynomials with hbar coefficients
    Rng rng(515);
    for (int t = 0; t < 5; ++t) {
        SitePolynomial p = rng.poly(n, 3, 4, 1);
        CHECK(alg.pbw_inv(alg.pbw(p)) == p);
    }
}

TEST_CASE("symmetric coproduct and the coalgebra property of pbw") {
    auto model = fixtures::fix_h();
    UEnvAlgebra alg(model.lie());
    const int n = 3;

    // counit (evaluation of the right leg at 0) recovers the element
    Rng rng(616);
    for (int t = 0; t < 5; ++t) {
        SitePolynomial p = rng.poly(n, 3, 4, 0);
        SitePolynomial acc(n);
        for (const auto& [l, r] : sym_coproduct(p)) {
            // keep only the constant part of the right leg
            Scalar c0;
            for (const auto& [m, c] : r.terms())
                if (mono_total(m) == 0) c0 = c;
            if (!c0.is_zero()) acc += l * c0;
        }
        CHECK(acc == p);
    }

    // primitive generators: Delta(e1) = e1(x)1 + 1(x)e1
    auto parts = sym_coproduct(SitePolynomial::generator(n, 0));
    CHECK(parts.size() == 2);

    // Delta_U o pbw = (pbw (x) pbw) o Delta_Sym on all monomials of degree <= 4
    for (const Monomial& m : monomials_up_to(n, 4)) {
        UTensor viaU;
        for (const auto& [w, c] : alg.pbw_monomial(m).terms())
            for (const auto& [legs, tc] : uenv_coproduct_word(alg, w))
                utensor_add(viaU, legs.first, legs.second, c * tc);

        UTensor viaSym;
        for (const auto& [s, rest, binom] : sym_splits(m))
            for (const auto& [wl, cl] : alg.pbw_monomial(s).terms())
                for (const auto& [wr, cr] : alg.pbw_monomial(rest).terms())
                    utensor_add(viaSym, wl, wr, cl * cr * Scalar(binom));

        CHECK(viaU == viaSym);
    }
}

TEST_CASE("Gutt product: exact low-degree values") {
    auto model = fixtures::fix_h();
    GuttProduct gp(model);
    const int G = model.site().gens();

    // e_i * e_j = e_i e_j + (hbar/2)[e_i, e_j] on every basis pair
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            SitePolynomial ei = SitePolynomial::generator(G, 3 + i);
            SitePolynomial ej = SitePolynomial::generator(G, 3 + j);
            SitePolynomial want = ei * ej;
            for (int c = 0; c < 3; ++c) {
                const Rat& fc = model.lie().f(c, i, j);
                if (sgn(fc) != 0)
                    want += SitePolynomial::generator(G, 3 + c) * Scalar::monomial(fc / Rat(2), 1);
            }
            CHECK(gp.mul(ei, ej) == want);
        }

    // unit on random mixed polynomials
    Rng rng(717);
    SitePolynomial one = SitePolynomial::constant(G, Scalar::one());
    for (int t = 0; t < 5; ++t) {
        SitePolynomial f = rng.poly(G, 3, 4, 1);
        CHECK(gp.mul(one, f) == f);
        CHECK(gp.mul(f, one) == f);
    }
}

TEST_CASE("Gutt product on the abelian fixture") {
    auto model = fixtures::fix_a();
    GuttProduct gp(model);
    const int G = model.site().gens();
    SitePolynomial e = SitePolynomial::generator(G, 3);

    Rng rng(818);
    // pure fiber polynomials multiply commutatively
    for (int t = 0; t < 5; ++t) {
        SitePolynomial p(G), q(G);
        for (int k = 0; k <= 3; ++k) {
            Monomial m(static_cast<size_t>(G), 0);
            m[3] = static_cast<std::uint32_t>(k);
            p.add_term(m, Scalar(rng.rat_nonzero()));
            q.add_term(m, Scalar(rng.rat_nonzero()));
        }
        CHECK(gp.mul(p, q) == p * q);
        CHECK(gp.mul(p, q) == gp.mul(q, p));
    }

    // e * f(base) = e f - hbar d f / d x
    for (int t = 0; t < 5; ++t) {
        SitePolynomial f = rng.poly(3, 3, 4, 0);
        SitePolynomial fl(G);  // widen to the full site
        for (const auto& [m, c] : f.terms()) {
            Monomial w(static_cast<size_t>(G), 0);
            for (int k = 0; k < 3; ++k) w[static_cast<size_t>(k)] = m[static_cast<size_t>(k)];
            fl.add_term(w, c);
        }
        CHECK(gp.mul(e, fl) == e * fl - fl.derivative(0).hbar_shifted(1));
        CHECK(gp.mul(fl, e) == e * fl);
    }
}

TEST_CASE("Gutt product is associative on every fixture") {
    for (auto mk : {fixtures::fix_a, fixtures::fix_h, fixtures::fix_aff}) {
        auto model = mk();
        GuttProduct gp(model);
        const int G = model.site().gens();
        Rng rng(919);
        for (int t = 0; t < 4; ++t) {
            SitePolynomial f = rng.poly(G, 2, 3, 0);
            SitePolynomial g = rng.poly(G, 2, 3, 0);
            SitePolynomial h = rng.poly(G, 2, 3, 1);
            CHECK(gp.mul(gp.mul(f, g), h) == gp.mul(f, gp.mul(g, h)));
        }
    }
}

TEST_CASE("momentum and invariance properties of the Gutt product") {
    for (auto mk : {fixtures::fix_a, fixtures::fix_h, fixtures::fix_aff}) {
        auto model = mk();
        GuttProduct gp(model);
        const int G = model.site().gens();
        Rng rng(2020);
        std::vector<SitePolynomial> samples;
        for (int g = 0; g < G; ++g) samples.push_back(SitePolynomial::generator(G, g));
        for (int t = 0; t < 4; ++t) samples.push_back(rng.poly(G, 2, 3, 0));
        CHECK(gutt_momentum_property(gp, samples).ok);
    }

    // flipping the structure constants against the same fundamental fields
    // breaks both associativity and the invariance
    auto bad = fix_h_flipped();
    GuttProduct gpBad(bad);
    const int G = bad.site().gens();
    SitePolynomial e1 = SitePolynomial::generator(G, 3);
    SitePolynomial e2 = SitePolynomial::generator(G, 4);
    SitePolynomial z = SitePolynomial::generator(G, 2);
    CHECK(gpBad.mul(gpBad.mul(e2, e1), z) != gpBad.mul(e2, gpBad.mul(e1, z)));
    std::vector<SitePolynomial> gens;
    for (int g = 0; g < G; ++g) gens.push_back(SitePolynomial::generator(G, g));
    CHECK_FALSE(gutt_momentum_property(gpBad, gens).ok);
}

TEST_CASE("bidifferential realization matches the exact product") {
    // abelian fixture: exhaustive check over the full determination range
    auto model = fixtures::fix_a();
    GuttProduct gp(model);
    PolyDiffOp hm = gutt_bidiff(gp);
    CHECK(hm.hbar_order() >= 1);
    CHECK(gutt_bidiff_check(gp, hm, 3, truncation_order() + 3).ok);

    // the order-1 piece acts as -(df/de) dg/dx
    const int G = model.site().gens();
    SitePolynomial x = SitePolynomial::generator(G, 0);
    SitePolynomial e = SitePolynomial::generator(G, 3);
    CHECK(hm.evaluate({e, x}) == -SitePolynomial::constant(G, Scalar::hbar()));
    CHECK(hm.evaluate({x, e}).is_zero());

    // Heisenberg: fit, then spot-check the structure
    auto mh = fixtures::fix_h();
    GuttProduct gph(mh);
    PolyDiffOp hmh = gutt_bidiff(gph);
    CHECK(hmh.hbar_order() >= 1);
    const int Gh = mh.site().gens();
    SitePolynomial oneH = SitePolynomial::constant(Gh, Scalar::one());
    CHECK(hmh.evaluate({oneH, oneH}).is_zero());

    // antisymmetrized order-1 part on fiber generators is the linear bracket
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            SitePolynomial ei = SitePolynomial::generator(Gh, 3 + i);
            SitePolynomial ej = SitePolynomial::generator(Gh, 3 + j);
            SitePolynomial want(Gh);
            for (int c = 0; c < 3; ++c) {
                const Rat& fc = mh.lie().f(c, i, j);
                if (sgn(fc) != 0)
                    want += SitePolynomial::generator(Gh, 3 + c) * Scalar::monomial(fc, 1);
            }
            CHECK(hmh.evaluate({ei, ej}) - hmh.evaluate({ej, ei}) == want);
        }

    // exhaustive low-degree block plus seeded random pairs within the bound
    CHECK(gutt_bidiff_check(gph, hmh, 1, 2).ok);
    PolyDiffOp starH = PolyDiffOp::multiplication(Gh) + hmh;
    std::vector<Monomial> monos = site_monomials(mh.site(), 3, truncation_order() + 3);
    Rng rng(3131);
    for (int t = 0; t < 150; ++t) {
        const Monomial& A = monos[static_cast<size_t>(
            rng.uniform(0, static_cast<int>(monos.size()) - 1))];
        const Monomial& B = monos[static_cast<size_t>(
            rng.uniform(0, static_cast<int>(monos.size()) - 1))];
        SitePolynomial pa(Gh), pb(Gh);
        pa.add_term(A, Scalar::one());
        pb.add_term(B, Scalar::one());
        CHECK(starH.evaluate({pa, pb}) == gph.mul(pa, pb));
    }
}

TEST_CASE("action-algebroid bracket") {
    auto model = fixtures::fix_h();
    const int G = model.site().gens();

    // constant sections bracket pointwise
    std::vector<SitePolynomial> xi(3, SitePolynomial(G)), eta(3, SitePolynomial(G));
    xi[0] = SitePolynomial::constant(G, Scalar::one());
    eta[1] = SitePolynomial::constant(G, Scalar::one());
    auto br = algebroid_bracket(model, xi, eta);
    CHECK(br[0].is_zero());
    CHECK(br[1].is_zero());
    CHECK(br[2] == SitePolynomial::constant(G, Scalar::one()));

    // the Lie-derivative correction on the affine fixture
    auto aff = fixtures::fix_aff();
    const int Ga = aff.site().gens();
    std::vector<SitePolynomial> xa(2, SitePolynomial(Ga)), ya(2, SitePolynomial(Ga));
    xa[0] = SitePolynomial::generator(Ga, 0);  // x e_1
    ya[1] = SitePolynomial::constant(Ga, Scalar::one());
    auto ba = algebroid_bracket(aff, xa, ya);
    CHECK(ba[0] == SitePolynomial::constant(Ga, Scalar::one()));
    CHECK(ba[1] == SitePolynomial::generator(Ga, 0));

    // Jacobi identity on random low-degree sections
    for (auto mk : {fixtures::fix_h, fixtures::fix_aff}) {
        auto m = mk();
        const int n = m.site().n;
        const int g = m.site().gens();
        Rng rng(4545);
        auto randomSection = [&]() {
            std::vector<SitePolynomial> s;
            for (int a = 0; a < n; ++a) {
                SitePolynomial p = rng.poly(m.site().m, 2, 2, 0);
                SitePolynomial lifted(g);
                for (const auto& [mm, c] : p.terms()) {
                    Monomial w(static_cast<size_t>(g), 0);
                    for (int k = 0; k < m.site().m; ++k)
                        w[static_cast<size_t>(k)] = mm[static_cast<size_t>(k)];
                    lifted.add_term(w, c);
                }
                s.push_back(lifted);
            }
            return s;
        };
        for (int t = 0; t < 4; ++t) {
            auto u = randomSection(), v = randomSection(), w = randomSection();
            auto lhs = algebroid_bracket(m, u, algebroid_bracket(m, v, w));
            auto mid = algebroid_bracket(m, v, algebroid_bracket(m, u, w));
            auto rhs = algebroid_bracket(m, algebroid_bracket(m, u, v), w);
            for (int c = 0; c < n; ++c)
                CHECK(lhs[static_cast<size_t>(c)] - mid[static_cast<size_t>(c)] ==
                      rhs[static_cast<size_t>(c)]);
        }
    }
}
