/*
  The hbar-rescaled universal enveloping algebra U_hbar(g): PBW-ordered words
  in the basis e_1..e_n with Scalar coefficients, confluent rewriting
  e_b e_a -> e_a e_b + hbar f^c_{ba} e_c (a < b), and the symmetrization
  isomorphism to and from the polynomial ring Q[e_1..e_n].
*/
#pragma once

#include "qred/lie.hpp"
#include "qred/sitepoly.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <vector>

namespace qred {

// basis-index word; canonical form is non-decreasing
using UWord = std::vector<int>;

class UEnvElement {
  public:
    UEnvElement() = default;
    explicit UEnvElement(int n) : n_(n) {}

    static UEnvElement one(int n) {
        UEnvElement u(n);
        u.add_term({}, Scalar::one());
        return u;
    }
    static UEnvElement generator(int n, int a) {
        UEnvElement u(n);
        u.add_term({a}, Scalar::one());
        return u;
    }

    int dim() const { return n_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<UWord, Scalar>& terms() const { return terms_; }

    void add_term(const UWord& w, const Scalar& c) {
        if (c.is_zero()) return;
        auto it = terms_.find(w);
        if (it == terms_.end()) {
            terms_.emplace(w, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    UEnvElement& operator+=(const UEnvElement& o) {
        check_same(o);
        for (const auto& [w, c] : o.terms_) add_term(w, c);
        return *this;
    }
    UEnvElement& operator-=(const UEnvElement& o) {
        check_same(o);
        for (const auto& [w, c] : o.terms_) add_term(w, -c);
        return *this;
    }
    friend UEnvElement operator+(UEnvElement a, const UEnvElement& b) { return a += b; }
    friend UEnvElement operator-(UEnvElement a, const UEnvElement& b) { return a -= b; }
    friend UEnvElement operator-(const UEnvElement& a) {
        UEnvElement r(a.n_);
        for (const auto& [w, c] : a.terms_) r.terms_.emplace(w, -c);
        return r;
    }
    UEnvElement& operator*=(const Scalar& s) {
        std::map<UWord, Scalar> out;
        for (const auto& [w, c] : terms_) {
            Scalar v = c * s;
            if (!v.is_zero()) out.emplace(w, std::move(v));
        }
        terms_ = std::move(out);
        return *this;
    }
    friend UEnvElement operator*(UEnvElement a, const Scalar& s) { return a *= s; }
    friend UEnvElement operator*(const Scalar& s, UEnvElement a) { return a *= s; }

    friend bool operator==(const UEnvElement& a, const UEnvElement& b) {
        return a.terms_ == b.terms_;
    }
    friend bool operator!=(const UEnvElement& a, const UEnvElement& b) { return !(a == b); }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::string s;
        for (const auto& [w, c] : terms_) {
            if (!s.empty()) s += " + ";
            s += "(" + c.str() + ")";
            for (int a : w) s += "*e" + std::to_string(a + 1);
        }
        return s;
    }

  private:
    void check_same(const UEnvElement& o) const {
        if (n_ != o.n_) throw std::invalid_argument("enveloping-algebra dimension mismatch");
    }

    int n_ = 0;
    std::map<UWord, Scalar> terms_;
};

// Rewriting context: owns the structure constants and memoizes canonical
// forms, symmetrizations, and their inverses.
class UEnvAlgebra {
  public:
    explicit UEnvAlgebra(LieData lie) : lie_(std::move(lie)) {}

    const LieData& lie() const { return lie_; }
    int dim() const { return lie_.dim(); }

    // Canonical (PBW-ordered) form of a single basis word. Each swap of an
    // adjacent descent lowers the inversion count, each bracket shortens the
    // word, so the recursion terminates.
    const UEnvElement& canonical(const UWord& w) const {
        auto it = canon_.find(w);
        if (it != canon_.end()) return it->second;
        UEnvElement out(dim());
        size_t i = 0;
        while (i + 1 < w.size() && w[i] <= w[i + 1]) ++i;
        if (i + 1 >= w.size()) {
            out.add_term(w, Scalar::one());
        } else {
            const int b = w[i], a = w[i + 1];
            UWord sw = w;
            std::swap(sw[i], sw[i + 1]);
            out += canonical(sw);
            for (int c = 0; c < dim(); ++c) {
                const Rat& fc = lie_.f(c, b, a);
                if (sgn(fc) == 0) continue;
                UWord rw;
                rw.reserve(w.size() - 1);
                rw.insert(rw.end(), w.begin(), w.begin() + i);
                rw.push_back(c);
                rw.insert(rw.end(), w.begin() + i + 2, w.end());
                out += canonical(rw) * Scalar::monomial(fc, 1);
            }
        }
        return canon_.emplace(w, std::move(out)).first->second;
    }

    UEnvElement canonicalized(const UEnvElement& u) const {
        UEnvElement out(dim());
        for (const auto& [w, c] : u.terms()) out += canonical(w) * c;
        return out;
    }

    // Product: concatenate words and rewrite.
    UEnvElement mul(const UEnvElement& u, const UEnvElement& v) const {
        UEnvElement out(dim());
        for (const auto& [wu, cu] : u.terms())
            for (const auto& [wv, cv] : v.terms()) {
                UWord w = wu;
                w.insert(w.end(), wv.begin(), wv.end());
                out += canonical(w) * (cu * cv);
            }
        return out;
    }

    // Symmetrization of one exponent vector: the average of all arrangements
    // of the corresponding multiset word.
    const UEnvElement& pbw_monomial(const Monomial& mono) const {
        auto it = pbwMono_.find(mono);
        if (it != pbwMono_.end()) return it->second;
        if (static_cast<int>(mono.size()) != dim())
            throw std::invalid_argument("symmetrization needs one exponent per basis element");
        UWord w0;
        Rat weight(1);
        for (int g = 0; g < dim(); ++g)
            for (std::uint32_t j = 0; j < mono[g]; ++j) {
                w0.push_back(g);
                weight *= Rat(static_cast<long>(j + 1));       // multiplicity factorials
                weight /= Rat(static_cast<long>(w0.size()));   // 1 / k!
            }
        UEnvElement out(dim());
        UWord p = w0;  // sorted; next_permutation walks every distinct arrangement
        do {
            out += canonical(p) * Scalar(weight);
        } while (std::next_permutation(p.begin(), p.end()));
        return pbwMono_.emplace(mono, std::move(out)).first->second;
    }

    // x in Q[e_1..e_n] (gens() == dim()) -> its PBW symmetrization.
    UEnvElement pbw(const SitePolynomial& x) const {
        if (x.gens() != dim())
            throw std::invalid_argument("symmetrization input must live on the Lie generators");
        UEnvElement out(dim());
        for (const auto& [m, c] : x.terms()) out += pbw_monomial(m) * c;
        return out;
    }

    // Exact inverse of the symmetrization, degree by degree: the top word of
    // pbw(monomial(w)) is w itself, all corrections are shorter.
    const SitePolynomial& pbw_inv_word(const UWord& w) const {
        auto it = pbwInv_.find(w);
        if (it != pbwInv_.end()) return it->second;
        if (!std::is_sorted(w.begin(), w.end()))
            throw std::invalid_argument("inverse symmetrization needs a canonical word");
        Monomial mono(dim(), 0);
        for (int a : w) mono[a]++;
        SitePolynomial out(dim());
        out.add_term(mono, Scalar::one());
        UEnvElement rest = pbw_monomial(mono);
        rest.add_term(w, -Scalar::one());
        for (const auto& [w2, c2] : rest.terms()) out -= pbw_inv_word(w2) * c2;
        return pbwInv_.emplace(w, std::move(out)).first->second;
    }

    SitePolynomial pbw_inv(const UEnvElement& u) const {
        SitePolynomial out(dim());
        for (const auto& [w, c] : u.terms()) {
            SitePolynomial v = pbw_inv_word(w) * c;
            if (!v.is_zero()) out += v;
        }
        return out;
    }

  private:
    LieData lie_;
    mutable std::map<UWord, UEnvElement> canon_;
    mutable std::map<Monomial, UEnvElement> pbwMono_;
    mutable std::map<UWord, SitePolynomial> pbwInv_;
};

// Binomial coproduct splits of one exponent vector: all (s, m - s) with the
// product-of-binomials multiplicity.
inline std::vector<std::tuple<Monomial, Monomial, Rat>> sym_splits(const Monomial& m) {
    std::vector<std::tuple<Monomial, Monomial, Rat>> out;
    Monomial s(m.size(), 0);
    for (;;) {
        Rat binom(1);
        for (size_t g = 0; g < m.size(); ++g)
            for (std::uint32_t j = 0; j < s[g]; ++j) {
                binom *= Rat(static_cast<long>(m[g] - j));
                binom /= Rat(static_cast<long>(j + 1));
            }
        Monomial rest = m;
        for (size_t g = 0; g < m.size(); ++g) rest[g] -= s[g];
        out.emplace_back(s, rest, binom);
        // odometer over 0 <= s <= m
        size_t g = 0;
        while (g < m.size() && s[g] == m[g]) s[g++] = 0;
        if (g == m.size()) break;
        ++s[g];
    }
    return out;
}

// Full symmetric-algebra coproduct with multiplicities folded into the left
// leg; includes the (x, 1) and (1, x) ends.
inline std::vector<std::pair<SitePolynomial, SitePolynomial>> sym_coproduct(
    const SitePolynomial& x) {
    std::vector<std::pair<SitePolynomial, SitePolynomial>> out;
    const int n = x.gens();
    for (const auto& [m, c] : x.terms())
        for (const auto& [s, rest, binom] : sym_splits(m)) {
            SitePolynomial left(n), right(n);
            left.add_term(s, c * binom);
            right.add_term(rest, Scalar::one());
            out.emplace_back(std::move(left), std::move(right));
        }
    return out;
}

}  // namespace qred
