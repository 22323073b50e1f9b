/*
  Exact recovery of a polydifferential operator from black-box evaluations.
  Evaluating on monomial arguments is triangular with respect to slotwise
  divisibility, so the coefficients follow by back-substitution: for slot
  multi-indices (g_1..g_k),
    D(x^{g_1}, .., x^{g_k}) = sum over divisors of the coefficient times
    falling factorials times the leftover monomial.
*/
#pragma once

#include "qred/polydiff.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <vector>

namespace qred {

// All exponent vectors over `gens` generators with total degree <= maxTotal,
// ordered by total degree first.
inline std::vector<Monomial> monomials_up_to(int gens, int maxTotal) {
    std::vector<Monomial> out;
    Monomial m(gens, 0);
    std::function<void(int, int)> rec = [&](int g, int left) {
        if (g == gens) {
            out.push_back(m);
            return;
        }
        for (int k = 0; k <= left; ++k) {
            m[g] = static_cast<std::uint32_t>(k);
            rec(g + 1, left - k);
        }
        m[g] = 0;
    };
    rec(0, maxTotal);
    std::stable_sort(out.begin(), out.end(), [](const Monomial& a, const Monomial& b) {
        return mono_total(a) < mono_total(b);
    });
    return out;
}

// All componentwise divisors of an exponent vector.
inline std::vector<Monomial> mono_divisors(const Monomial& a) {
    std::vector<Monomial> out;
    Monomial s(a.size(), 0);
    for (;;) {
        out.push_back(s);
        size_t g = 0;
        while (g < a.size() && s[g] == a[g]) s[g++] = 0;
        if (g == a.size()) break;
        ++s[g];
    }
    return out;
}

inline Rat mono_factorial(const Monomial& a) {
    Rat r(1);
    for (std::uint32_t e : a)
        for (std::uint32_t j = 2; j <= e; ++j) r *= Rat(static_cast<long>(j));
    return r;
}

// Product of falling factorials: d^b applied to x^a, divided by x^{a-b}.
inline Rat mono_falling(const Monomial& a, const Monomial& b) {
    Rat r(1);
    for (size_t i = 0; i < a.size(); ++i)
        for (std::uint32_t j = 0; j < b[i]; ++j) r *= Rat(static_cast<long>(a[i] - j));
    return r;
}

// Recover the unique operator with slot orders <= slotOrder that matches the
// evaluation callback on all monomial tuples within that bound. If the true
// operator has higher order the result simply disagrees with the callback
// beyond the bound; callers cross-check on extra samples.
inline PolyDiffOp fit_polydiff(
    const std::function<SitePolynomial(const std::vector<SitePolynomial>&)>& eval, int gens,
    int arity, int slotOrder) {
    const std::vector<Monomial> idx = monomials_up_to(gens, slotOrder);

    // slot tuples ordered by combined total degree (refines divisibility)
    std::vector<SlotTuple> tuples;
    std::vector<size_t> pick(static_cast<size_t>(arity), 0);
    for (;;) {
        SlotTuple t;
        t.reserve(static_cast<size_t>(arity));
        for (int s = 0; s < arity; ++s) t.push_back(idx[pick[static_cast<size_t>(s)]]);
        tuples.push_back(std::move(t));
        int s = 0;
        while (s < arity && pick[static_cast<size_t>(s)] + 1 == idx.size())
            pick[static_cast<size_t>(s++)] = 0;
        if (s == arity) break;
        ++pick[static_cast<size_t>(s)];
    }
    auto tupleTotal = [](const SlotTuple& t) {
        int d = 0;
        for (const auto& m : t) d += mono_total(m);
        return d;
    };
    std::stable_sort(tuples.begin(), tuples.end(), [&](const SlotTuple& a, const SlotTuple& b) {
        return tupleTotal(a) < tupleTotal(b);
    });

    std::map<SlotTuple, SitePolynomial> coeff;
    for (const SlotTuple& T : tuples) {
        std::vector<SitePolynomial> args;
        args.reserve(T.size());
        for (const auto& g : T) {
            SitePolynomial p(gens);
            p.add_term(g, Scalar::one());
            args.push_back(std::move(p));
        }
        SitePolynomial val = eval(args);

        // subtract the contributions of already-known lower coefficients
        std::vector<std::vector<Monomial>> divs;
        divs.reserve(T.size());
        for (const auto& g : T) divs.push_back(mono_divisors(g));
        std::vector<size_t> d(T.size(), 0);
        for (;;) {
            SlotTuple Tp;
            Tp.reserve(T.size());
            for (size_t s = 0; s < T.size(); ++s) Tp.push_back(divs[s][d[s]]);
            if (Tp != T) {
                auto it = coeff.find(Tp);
                if (it != coeff.end()) {
                    Rat factor(1);
                    Monomial leftover(static_cast<size_t>(gens), 0);
                    for (size_t s = 0; s < T.size(); ++s) {
                        factor *= mono_falling(T[s], Tp[s]);
                        for (int g = 0; g < gens; ++g)
                            leftover[static_cast<size_t>(g)] += T[s][static_cast<size_t>(g)] -
                                                                Tp[s][static_cast<size_t>(g)];
                    }
                    SitePolynomial shift(gens);
                    shift.add_term(leftover, Scalar(factor));
                    val -= it->second * shift;
                }
            }
            size_t s = 0;
            while (s < T.size() && d[s] + 1 == divs[s].size()) d[s++] = 0;
            if (s == T.size()) break;
            ++d[s];
        }
        if (val.is_zero()) continue;
        Rat norm(1);
        for (const auto& g : T) norm *= mono_factorial(g);
        coeff.emplace(T, val * Scalar(Rat(1) / norm));
    }

    PolyDiffOp out(gens, arity);
    for (auto& [T, c] : coeff) out.add_term(T, c);
    return out;
}

}  // namespace qred
