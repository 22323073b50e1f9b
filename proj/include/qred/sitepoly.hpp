/*
  Polynomial functions on the site: a commutative polynomial ring over Scalar
  with two blocks of generators, the base generators (coordinates on the
  configuration space) followed by the fiber generators e_1..e_n (linear
  coordinates dual to the symmetry algebra). Exponent vectors are dense and
  cover both blocks; the split index is carried by the Site descriptor.
*/
#pragma once

#include "qred/scalar.hpp"

#include <cstdint>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace qred {

struct Site {
    int m = 0;  // number of base generators
    int n = 0;  // number of fiber generators
    std::vector<std::string> base_names;

    int gens() const { return m + n; }
    std::string gen_name(int g) const {
        if (g < m) return base_names.at(g);
        return "e" + std::to_string(g - m + 1);
    }
    bool is_fiber(int g) const { return g >= m; }
};

using Monomial = std::vector<std::uint32_t>;

inline int mono_total(const Monomial& a) {
    return std::accumulate(a.begin(), a.end(), 0);
}
inline int mono_degree_range(const Monomial& a, int lo, int hi) {
    int d = 0;
    for (int g = lo; g < hi; ++g) d += a[g];
    return d;
}
inline Monomial mono_unit(int gens, int g) {
    Monomial a(gens, 0);
    a[g] = 1;
    return a;
}
inline Monomial mono_mul(const Monomial& a, const Monomial& b) {
    Monomial r = a;
    for (size_t i = 0; i < r.size(); ++i) r[i] += b[i];
    return r;
}
inline bool mono_divides(const Monomial& a, const Monomial& b) {  // a | b
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

class SitePolynomial {
  public:
    SitePolynomial() = default;
    explicit SitePolynomial(int gens) : gens_(gens) {}

    static SitePolynomial constant(int gens, const Scalar& s) {
        SitePolynomial p(gens);
        p.add_term(Monomial(gens, 0), s);
        return p;
    }
    static SitePolynomial generator(int gens, int g) {
        SitePolynomial p(gens);
        p.add_term(mono_unit(gens, g), Scalar::one());
        return p;
    }

    int gens() const { return gens_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<Monomial, Scalar>& terms() const { return terms_; }

    void add_term(const Monomial& m, const Scalar& c) {
        if (c.is_zero()) return;
        if (static_cast<int>(m.size()) != gens_)
            throw std::logic_error("monomial width mismatch");
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_.emplace(m, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    SitePolynomial& operator+=(const SitePolynomial& o) {
        check(o);
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    SitePolynomial& operator-=(const SitePolynomial& o) {
        check(o);
        for (const auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }
    friend SitePolynomial operator+(SitePolynomial a, const SitePolynomial& b) { return a += b; }
    friend SitePolynomial operator-(SitePolynomial a, const SitePolynomial& b) { return a -= b; }
    friend SitePolynomial operator-(const SitePolynomial& a) {
        SitePolynomial r(a.gens_);
        for (const auto& [m, c] : a.terms_) r.terms_.emplace(m, -c);
        return r;
    }

    friend SitePolynomial operator*(const SitePolynomial& a, const SitePolynomial& b) {
        a.check(b);
        SitePolynomial r(a.gens_);
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) {
                Scalar c = ca * cb;
                if (!c.is_zero()) r.add_term(mono_mul(ma, mb), c);
            }
        return r;
    }
    SitePolynomial& operator*=(const SitePolynomial& o) { return *this = *this * o; }
    SitePolynomial& operator*=(const Scalar& s) {
        if (s.is_zero()) {
            terms_.clear();
            return *this;
        }
        std::map<Monomial, Scalar> out;
        for (const auto& [m, c] : terms_) {
            Scalar v = c * s;
            if (!v.is_zero()) out.emplace(m, v);
        }
        terms_ = std::move(out);
        return *this;
    }
    friend SitePolynomial operator*(SitePolynomial a, const Scalar& s) { return a *= s; }
    friend SitePolynomial operator*(const Scalar& s, SitePolynomial a) { return a *= s; }
    SitePolynomial& operator*=(const Rat& r) { return *this *= Scalar(r); }
    friend SitePolynomial operator*(SitePolynomial a, const Rat& r) { return a *= Scalar(r); }
    friend SitePolynomial operator*(const Rat& r, SitePolynomial a) { return a *= Scalar(r); }

    // Partial derivative in generator g.
    SitePolynomial derivative(int g) const {
        SitePolynomial r(gens_);
        for (const auto& [m, c] : terms_) {
            if (m[g] == 0) continue;
            Monomial mm = m;
            mm[g] -= 1;
            r.add_term(mm, c * Rat(static_cast<long>(m[g])));
        }
        return r;
    }
    // Iterated derivative by a multi-index.
    SitePolynomial derivative(const Monomial& alpha) const {
        SitePolynomial r = *this;
        for (int g = 0; g < gens_; ++g)
            for (std::uint32_t k = 0; k < alpha[g]; ++k) {
                r = r.derivative(g);
                if (r.is_zero()) return r;
            }
        return r;
    }

    // Substitute 0 for every generator in [lo, hi).
    SitePolynomial restrict_zero(int lo, int hi) const {
        SitePolynomial r(gens_);
        for (const auto& [m, c] : terms_) {
            bool kill = false;
            for (int g = lo; g < hi; ++g)
                if (m[g] != 0) { kill = true; break; }
            if (!kill) r.add_term(m, c);
        }
        return r;
    }

    // Largest degree in the generator range [lo, hi); -1 for the zero polynomial.
    int degree_range(int lo, int hi) const {
        int d = -1;
        for (const auto& [m, c] : terms_) d = std::max(d, mono_degree_range(m, lo, hi));
        return d;
    }
    int total_degree() const { return degree_range(0, gens_); }

    // Keep only terms whose degree in [lo,hi) equals d.
    SitePolynomial homogeneous_range(int lo, int hi, int d) const {
        SitePolynomial r(gens_);
        for (const auto& [m, c] : terms_)
            if (mono_degree_range(m, lo, hi) == d) r.add_term(m, c);
        return r;
    }

    // Smallest hbar order over all coefficients; INT_MAX-ish for zero.
    int hbar_order() const {
        int best = truncation_order() + 1;
        for (const auto& [m, c] : terms_) best = std::min(best, c.order());
        return best;
    }
    SitePolynomial hbar_shifted(int k) const {
        SitePolynomial r(gens_);
        for (const auto& [m, c] : terms_) r.add_term(m, c.shifted(k));
        return r;
    }
    // Exact division by h^k (see Scalar::divided_by_hbar for the truncation
    // caveat: the result is only meaningful modulo h^{N+1-k}).
    SitePolynomial hbar_divided(int k) const {
        SitePolynomial r(gens_);
        for (const auto& [m, c] : terms_) r.add_term(m, c.divided_by_hbar(k));
        return r;
    }
    SitePolynomial hbar_truncated(int k) const {
        SitePolynomial r(gens_);
        for (const auto& [m, c] : terms_) r.add_term(m, c.truncated(k));
        return r;
    }

    friend bool operator==(const SitePolynomial& a, const SitePolynomial& b) {
        a.check(b);
        return a.terms_ == b.terms_;
    }
    friend bool operator!=(const SitePolynomial& a, const SitePolynomial& b) { return !(a == b); }
    friend bool operator<(const SitePolynomial& a, const SitePolynomial& b) {
        return a.terms_ < b.terms_;
    }

    std::string str(const Site& site) const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [m, c] : terms_) {
            if (!first) os << " + ";
            os << "(" << c.str() << ")";
            for (int g = 0; g < gens_; ++g) {
                if (m[g] == 0) continue;
                os << "*" << site.gen_name(g);
                if (m[g] > 1) os << "^" << m[g];
            }
            first = false;
        }
        return os.str();
    }

  private:
    void check(const SitePolynomial& o) const {
        if (o.gens_ != gens_) throw std::logic_error("site polynomial generator count mismatch");
    }
    int gens_ = 0;
    std::map<Monomial, Scalar> terms_;
};

}  // namespace qred
