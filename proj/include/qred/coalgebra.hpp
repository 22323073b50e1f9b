/*
  Cofree-coalgebra extension formulas: shuffles, the coderivation extension of
  arity-indexed structure maps Q_k, the coalgebra-morphism extension of Taylor
  coefficients F_k, and their Sym^i components.

  Structure maps are passed as a single callable taking the factor list
  (arity = list length, the empty list queries the curvature Q_0(1)) and
  returning the payload; the output degree is implied (sum + 1 for
  coderivations, sum for morphisms).
*/
#pragma once

#include "qred/symword.hpp"

#include <functional>
#include <numeric>
#include <vector>

namespace qred {

template <class T>
using TaylorMap = std::function<T(const std::vector<GradedElement<T>>&)>;

// All k-element subsets of {0..n-1}, each ascending.
inline std::vector<std::vector<int>> index_subsets(int n, int k) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    std::function<void(int)> rec = [&](int start) {
        if (static_cast<int>(cur.size()) == k) {
            out.push_back(cur);
            return;
        }
        for (int i = start; i <= n - (k - static_cast<int>(cur.size())); ++i) {
            cur.push_back(i);
            rec(i + 1);
            cur.pop_back();
        }
    };
    rec(0);
    return out;
}

// (k, n-k)-shuffles presented as order lists: the chosen k indices ascending,
// then the complement ascending.
inline std::vector<std::vector<int>> shuffle_orders(int n, int k) {
    std::vector<std::vector<int>> out;
    for (const auto& a : index_subsets(n, k)) {
        std::vector<int> order = a;
        std::vector<bool> used(n, false);
        for (int i : a) used[i] = true;
        for (int i = 0; i < n; ++i)
            if (!used[i]) order.push_back(i);
        out.push_back(std::move(order));
    }
    return out;
}

// Ordered block decompositions of {0..n-1} with block sizes ks, each block
// ascending; returned as concatenated order lists.
inline std::vector<std::vector<int>> multishuffle_orders(int n, const std::vector<int>& ks) {
    std::vector<std::vector<int>> out;
    std::vector<int> pool(n);
    std::iota(pool.begin(), pool.end(), 0);
    std::vector<int> acc;
    std::function<void(std::size_t, std::vector<int>)> rec = [&](std::size_t bi,
                                                                 std::vector<int> rest) {
        if (bi == ks.size()) {
            out.push_back(acc);
            return;
        }
        for (const auto& pick : index_subsets(static_cast<int>(rest.size()), ks[bi])) {
            std::vector<int> block, next;
            std::vector<bool> used(rest.size(), false);
            for (int i : pick) {
                block.push_back(rest[i]);
                used[i] = true;
            }
            for (std::size_t i = 0; i < rest.size(); ++i)
                if (!used[i]) next.push_back(rest[i]);
            acc.insert(acc.end(), block.begin(), block.end());
            rec(bi + 1, std::move(next));
            acc.resize(acc.size() - block.size());
        }
    };
    rec(0, pool);
    return out;
}

// All compositions of n into p parts, each between 1 and maxPart.
inline std::vector<std::vector<int>> compositions(int n, int p, int maxPart) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    std::function<void(int)> rec = [&](int left) {
        if (static_cast<int>(cur.size()) == p) {
            if (left == 0) out.push_back(cur);
            return;
        }
        int remainingBlocks = p - static_cast<int>(cur.size()) - 1;
        for (int k = 1; k <= std::min(maxPart, left - remainingBlocks); ++k) {
            cur.push_back(k);
            rec(left - k);
            cur.pop_back();
        }
    };
    rec(n);
    return out;
}

template <class T>
int word_degree_sum(const SymWord<T>& w) {
    int d = 0;
    for (const auto& f : w) d += f.degree;
    return d;
}

namespace detail {
template <class T>
std::vector<int> factor_degrees(const SymWord<T>& w) {
    std::vector<int> d(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) d[i] = w[i].degree;
    return d;
}
}  // namespace detail

// Coderivation extension: Q(γ_1∨…∨γ_n) = Σ_{k=0}^{min(n,K)} Σ_{Sh(k,n-k)}
// ε(σ) Q_k(block) ∨ rest. Pass maxArity = the largest k with Q_k possibly
// nonzero. The k = 0 term inserts the curvature Q_0(1).
template <class T>
WordSum<T> extend_coderivation(const TaylorMap<T>& Q, int maxArity, const SymWord<T>& word) {
    WordSum<T> out;
    const int n = static_cast<int>(word.size());
    const auto degs = detail::factor_degrees(word);
    for (int k = 0; k <= std::min(n, maxArity); ++k) {
        for (const auto& order : shuffle_orders(n, k)) {
            int sign = koszul_sign(order, degs);
            std::vector<GradedElement<T>> block;
            block.reserve(k);
            for (int i = 0; i < k; ++i) block.push_back(word[order[i]]);
            T val = Q(block);
            if (val.is_zero()) continue;
            int deg = 1;
            for (const auto& f : block) deg += f.degree;
            SymWord<T> w;
            w.push_back(GradedElement<T>{deg, std::move(val)});
            for (int i = k; i < n; ++i) w.push_back(word[order[i]]);
            out.add(std::move(w), sign < 0 ? -Scalar::one() : Scalar::one());
        }
    }
    return out;
}

// The Sym^i component Q^i_n of the coderivation (words of length i): the
// k = n - i + 1 summand of the extension.
template <class T>
WordSum<T> coderivation_component(const TaylorMap<T>& Q, int maxArity, int i,
                                  const SymWord<T>& word) {
    WordSum<T> out;
    const int n = static_cast<int>(word.size());
    const int k = n - i + 1;
    if (k < 0 || k > std::min(n, maxArity)) return out;
    const auto degs = detail::factor_degrees(word);
    for (const auto& order : shuffle_orders(n, k)) {
        int sign = koszul_sign(order, degs);
        std::vector<GradedElement<T>> block;
        for (int t = 0; t < k; ++t) block.push_back(word[order[t]]);
        T val = Q(block);
        if (val.is_zero()) continue;
        int deg = 1;
        for (const auto& f : block) deg += f.degree;
        SymWord<T> w;
        w.push_back(GradedElement<T>{deg, std::move(val)});
        for (int t = k; t < n; ++t) w.push_back(word[order[t]]);
        out.add(std::move(w), sign < 0 ? -Scalar::one() : Scalar::one());
    }
    return out;
}

// Coalgebra-morphism extension: F(γ_1∨…∨γ_n) = Σ_{p≥1} (1/p!)
// Σ_{k_1+…+k_p=n} Σ_{Sh(k_1..k_p)} ε(σ) F_{k_1}(block_1)∨…∨F_{k_p}(block_p).
template <class T>
WordSum<T> extend_morphism(const TaylorMap<T>& F, int maxArity, const SymWord<T>& word) {
    WordSum<T> out;
    const int n = static_cast<int>(word.size());
    if (n == 0) {
        out.add(SymWord<T>{}, Scalar::one());  // F(1) = 1
        return out;
    }
    const auto degs = detail::factor_degrees(word);
    for (int p = 1; p <= n; ++p) {
        Rat pfact(1);
        for (int i = 2; i <= p; ++i) pfact *= Rat(i);
        Scalar weight(Rat(1) / pfact);
        for (const auto& ks : compositions(n, p, maxArity)) {
            for (const auto& order : multishuffle_orders(n, ks)) {
                int sign = koszul_sign(order, degs);
                SymWord<T> w;
                std::size_t pos = 0;
                bool dead = false;
                for (int b = 0; b < p && !dead; ++b) {
                    std::vector<GradedElement<T>> block;
                    for (int t = 0; t < ks[b]; ++t) block.push_back(word[order[pos++]]);
                    T val = F(block);
                    if (val.is_zero()) {
                        dead = true;
                        break;
                    }
                    int deg = 0;
                    for (const auto& f : block) deg += f.degree;
                    w.push_back(GradedElement<T>{deg, std::move(val)});
                }
                if (dead) continue;
                out.add(std::move(w), sign < 0 ? -weight : weight);
            }
        }
    }
    return out;
}

// The Sym^j component F^j_n (words of length j): the p = j summands.
template <class T>
WordSum<T> morphism_component(const TaylorMap<T>& F, int maxArity, int j,
                              const SymWord<T>& word) {
    WordSum<T> out;
    const int n = static_cast<int>(word.size());
    if (n == 0) {
        if (j == 0) out.add(SymWord<T>{}, Scalar::one());
        return out;
    }
    if (j < 1 || j > n) return out;
    const auto degs = detail::factor_degrees(word);
    Rat pfact(1);
    for (int i = 2; i <= j; ++i) pfact *= Rat(i);
    Scalar weight(Rat(1) / pfact);
    for (const auto& ks : compositions(n, j, maxArity)) {
        for (const auto& order : multishuffle_orders(n, ks)) {
            int sign = koszul_sign(order, degs);
            SymWord<T> w;
            std::size_t pos = 0;
            bool dead = false;
            for (int b = 0; b < j && !dead; ++b) {
                std::vector<GradedElement<T>> block;
                for (int t = 0; t < ks[b]; ++t) block.push_back(word[order[pos++]]);
                T val = F(block);
                if (val.is_zero()) {
                    dead = true;
                    break;
                }
                int deg = 0;
                for (const auto& f : block) deg += f.degree;
                w.push_back(GradedElement<T>{deg, std::move(val)});
            }
            if (dead) continue;
            out.add(std::move(w), sign < 0 ? -weight : weight);
        }
    }
    return out;
}

// Apply an arity-indexed map linearly to every word of a sum, returning the
// accumulated payload (the Sym^1 corestriction of map∘sum).
template <class T>
T apply_to_words(const TaylorMap<T>& map, const WordSum<T>& sum, T zero) {
    T acc = std::move(zero);
    bool first = true;
    for (const auto& [w, c] : sum.terms()) {
        T val = map(w);
        if (val.is_zero()) continue;
        val = val * c;
        if (first && acc.is_zero()) {
            acc = std::move(val);
            first = false;
        } else {
            acc = acc + val;
        }
    }
    return acc;
}

}  // namespace qred
