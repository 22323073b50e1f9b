/*
  Scalar: a truncated formal power series in the deformation parameter h
  ("hbar") with exact rational coefficients. All ring operations drop terms
  beyond the configured truncation order N; division is defined only when the
  h^0 coefficient of the divisor is invertible.
*/
#pragma once

#include "qred/rational.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace qred {

// Process-wide truncation order (coefficients h^0..h^N are kept). Set once at
// startup / test setup before building any Scalar values.
int& truncation_order_ref();
inline int truncation_order() { return truncation_order_ref(); }
inline void set_truncation_order(int n) {
    if (n < 0) throw std::invalid_argument("truncation order must be >= 0");
    truncation_order_ref() = n;
}

class Scalar {
  public:
    Scalar() : c_(truncation_order() + 1) {}
    explicit Scalar(const Rat& constant) : Scalar() { c_[0] = constant; }
    explicit Scalar(long constant) : Scalar(Rat(constant)) {}

    static Scalar zero() { return Scalar(); }
    static Scalar one() { return Scalar(Rat(1)); }
    // r * h^k
    static Scalar monomial(const Rat& r, int k) {
        Scalar s;
        if (k < 0) throw std::invalid_argument("negative hbar power");
        if (k <= truncation_order()) s.c_[k] = r;
        return s;
    }
    static Scalar hbar() { return monomial(Rat(1), 1); }

    int size() const { return static_cast<int>(c_.size()); }
    const Rat& coeff(int k) const { return c_.at(k); }
    Rat& coeff(int k) { return c_.at(k); }

    bool is_zero() const {
        for (const Rat& r : c_)
            if (sgn(r) != 0) return false;
        return true;
    }

    // Smallest k with nonzero h^k coefficient; size() if zero.
    int order() const {
        for (int k = 0; k < size(); ++k)
            if (sgn(c_[k]) != 0) return k;
        return size();
    }

    Scalar& operator+=(const Scalar& o) {
        check(o);
        for (int k = 0; k < size(); ++k) c_[k] += o.c_[k];
        return *this;
    }
    Scalar& operator-=(const Scalar& o) {
        check(o);
        for (int k = 0; k < size(); ++k) c_[k] -= o.c_[k];
        return *this;
    }
    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator-(const Scalar& a) {
        Scalar r = a;
        for (auto& x : r.c_) x = -x;
        return r;
    }

    friend Scalar operator*(const Scalar& a, const Scalar& b) {
        a.check(b);
        Scalar r;
        for (int i = 0; i < a.size(); ++i) {
            if (sgn(a.c_[i]) == 0) continue;
            for (int j = 0; i + j < a.size(); ++j) {
                if (sgn(b.c_[j]) == 0) continue;
                r.c_[i + j] += a.c_[i] * b.c_[j];
            }
        }
        return r;
    }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

    Scalar& operator*=(const Rat& r) {
        for (auto& x : c_) x *= r;
        return *this;
    }
    friend Scalar operator*(Scalar a, const Rat& r) { return a *= r; }
    friend Scalar operator*(const Rat& r, Scalar a) { return a *= r; }

    // Division by a series with invertible h^0 part (geometric expansion).
    friend Scalar operator/(const Scalar& a, const Scalar& b) {
        a.check(b);
        if (sgn(b.c_[0]) == 0)
            throw std::domain_error("scalar division: divisor has no invertible h^0 part");
        Scalar q;
        Scalar rem = a;
        for (int k = 0; k < a.size(); ++k) {
            Rat qk = rem.c_[k] / b.c_[0];
            q.c_[k] = qk;
            if (sgn(qk) != 0)
                for (int j = 0; k + j < a.size(); ++j) rem.c_[k + j] -= qk * b.c_[j];
        }
        return q;
    }
    Scalar& operator/=(const Rat& r) {
        if (sgn(r) == 0) throw std::domain_error("scalar division by zero rational");
        for (auto& x : c_) x /= r;
        return *this;
    }
    friend Scalar operator/(Scalar a, const Rat& r) { return a /= r; }

    // Multiply by h^k (terms pushed past the truncation vanish).
    Scalar shifted(int k) const {
        Scalar r;
        for (int i = 0; i + k < size(); ++i) r.c_[i + k] = c_[i];
        return r;
    }
    // Exact division by h^k; requires the low-order coefficients to vanish.
    // The top k coefficients of the result are unknown and set to zero, so
    // callers must only rely on the result modulo h^{N+1-k}.
    Scalar divided_by_hbar(int k) const {
        for (int i = 0; i < k && i < size(); ++i)
            if (sgn(c_[i]) != 0)
                throw std::domain_error("scalar not divisible by hbar^" + std::to_string(k));
        Scalar r;
        for (int i = k; i < size(); ++i) r.c_[i - k] = c_[i];
        return r;
    }

    // Truncate to orders < k (zero out h^k and above). Used when comparing
    // quantities only determined modulo h^k.
    Scalar truncated(int k) const {
        Scalar r = *this;
        for (int i = std::max(k, 0); i < size(); ++i) r.c_[i] = 0;
        return r;
    }

    friend bool operator==(const Scalar& a, const Scalar& b) {
        a.check(b);
        for (int k = 0; k < a.size(); ++k)
            if (a.c_[k] != b.c_[k]) return false;
        return true;
    }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }
    friend bool operator<(const Scalar& a, const Scalar& b) {
        a.check(b);
        for (int k = 0; k < a.size(); ++k)
            if (a.c_[k] != b.c_[k]) return a.c_[k] < b.c_[k];
        return false;
    }

    std::string str() const {
        std::ostringstream os;
        bool first = true;
        for (int k = 0; k < size(); ++k) {
            if (sgn(c_[k]) == 0) continue;
            if (!first) os << " + ";
            os << rat_to_string(c_[k]);
            if (k == 1) os << "*h";
            if (k > 1) os << "*h^" << k;
            first = false;
        }
        if (first) os << "0";
        return os.str();
    }
    friend std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

  private:
    void check(const Scalar& o) const {
        if (o.size() != size())
            throw std::logic_error("scalar truncation order mismatch (stale value?)");
    }
    std::vector<Rat> c_;  // c_[k] multiplies h^k
};

}  // namespace qred
