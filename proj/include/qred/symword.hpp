/*
  Graded symmetric words over an arbitrary payload type T and formal sums of
  such words with Scalar coefficients: the working representation of the
  cofree cocommutative coalgebra Sym^c(L[1]).

  Degrees are SHIFTED degrees throughout (degree in L[1]). Reordering factors
  costs the Koszul sign; a word containing two structurally equal odd factors
  is zero. T must provide: default construction, is_zero(), operator<,
  operator==, unary -, and multiplication by Scalar.
*/
#pragma once

#include "qred/scalar.hpp"

#include <algorithm>
#include <map>
#include <vector>

namespace qred {

template <class T>
struct GradedElement {
    int degree = 0;  // shifted degree
    T payload{};

    friend bool operator<(const GradedElement& a, const GradedElement& b) {
        if (a.degree != b.degree) return a.degree < b.degree;
        return a.payload < b.payload;
    }
    friend bool operator==(const GradedElement& a, const GradedElement& b) {
        return a.degree == b.degree && a.payload == b.payload;
    }
};

template <class T>
using SymWord = std::vector<GradedElement<T>>;  // ordered factor list

// Koszul sign of presenting (γ_{order[0]}, ..., γ_{order[n-1]}) relative to
// the ascending order; degrees are indexed by ORIGINAL position.
inline int koszul_sign(const std::vector<int>& order, const std::vector<int>& degrees) {
    int sign = 1;
    for (std::size_t i = 0; i < order.size(); ++i)
        for (std::size_t j = i + 1; j < order.size(); ++j)
            if (order[i] > order[j] && (degrees[order[i]] % 2) && (degrees[order[j]] % 2))
                sign = -sign;
    return sign;
}

// Sort a word into canonical order, accumulating the Koszul sign.
// Returns false (and *sign unspecified) when the word is zero because two
// equal odd factors collide.
template <class T>
bool canonicalize_word(SymWord<T>& w, int* sign) {
    *sign = 1;
    // insertion sort; each adjacent swap of factors with odd degrees flips sign
    for (std::size_t i = 1; i < w.size(); ++i) {
        std::size_t j = i;
        while (j > 0 && w[j] < w[j - 1]) {
            if ((w[j].degree % 2) && (w[j - 1].degree % 2)) *sign = -*sign;
            std::swap(w[j], w[j - 1]);
            --j;
        }
    }
    for (std::size_t i = 1; i < w.size(); ++i)
        if ((w[i].degree % 2) && w[i] == w[i - 1]) return false;
    return true;
}

template <class T>
class WordSum {
  public:
    WordSum() = default;

    static WordSum single(SymWord<T> w, const Scalar& c = Scalar::one()) {
        WordSum s;
        s.add(std::move(w), c);
        return s;
    }

    void add(SymWord<T> w, const Scalar& c) {
        if (c.is_zero()) return;
        for (const auto& f : w)
            if (f.payload.is_zero()) return;
        int sign = 1;
        if (!canonicalize_word(w, &sign)) return;
        Scalar v = sign < 0 ? -c : c;
        auto it = terms_.find(w);
        if (it == terms_.end()) {
            terms_.emplace(std::move(w), v);
        } else {
            it->second += v;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    WordSum& operator+=(const WordSum& o) {
        for (const auto& [w, c] : o.terms_) add(w, c);
        return *this;
    }
    WordSum& operator-=(const WordSum& o) {
        for (const auto& [w, c] : o.terms_) add(w, -c);
        return *this;
    }
    friend WordSum operator+(WordSum a, const WordSum& b) { return a += b; }
    friend WordSum operator-(WordSum a, const WordSum& b) { return a -= b; }
    WordSum& operator*=(const Scalar& s) {
        std::map<SymWord<T>, Scalar> out;
        for (const auto& [w, c] : terms_) {
            Scalar v = c * s;
            if (!v.is_zero()) out.emplace(w, v);
        }
        terms_ = std::move(out);
        return *this;
    }
    friend WordSum operator*(WordSum a, const Scalar& s) { return a *= s; }

    bool is_zero() const { return terms_.empty(); }
    const std::map<SymWord<T>, Scalar>& terms() const { return terms_; }

  private:
    std::map<SymWord<T>, Scalar> terms_;
};

}  // namespace qred
