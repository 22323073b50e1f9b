/*
  Curved L-infinity structures and morphisms as Taylor-coefficient callables
  over an arbitrary payload type, plus Maurer-Cartan calculus and twisting.

  A structure's callable Q takes k factors (k = 0 queries the curvature
  Q_0(1)) and returns the payload of the single resulting element; its shifted
  degree is (sum of input degrees) + 1. A morphism's callable F takes k >= 1
  factors and returns a payload of degree (sum of input degrees).

  `zero_beyond` records whether arities above K are identically zero (true for
  DGLAs) or merely uncomputed (transferred structures); checks and twists use
  it to decide which compositions are exactly available.
*/
#pragma once

#include "qred/coalgebra.hpp"
#include "qred/lie.hpp"

#include <sstream>

namespace qred {

// Accumulate payloads that may be shape-generic zeros (e.g. polydifferential
// operators carry an arity, and only genuinely nonzero values fix the shape).
template <class T>
void acc_add(T& acc, T val) {
    if (val.is_zero()) return;
    if (acc.is_zero())
        acc = std::move(val);
    else
        acc = acc + val;
}

template <class T>
struct LInftyStructure {
    int K = 2;               // largest computed arity
    bool zero_beyond = true; // Q_k = 0 identically for k > K
    TaylorMap<T> Q;
    T zero{};

    T curvature() const { return Q({}); }
};

template <class T>
struct LInftyMorphism {
    int K = 1;
    bool zero_beyond = true; // F_k = 0 identically for k > K
    TaylorMap<T> F;
    T zero{};
};

// A (curved) DGLA presented as an L-infinity structure:
// Q_0(1) = -R, Q_1 = -d, Q_2(x∨y) = -(-1)^{|x|}[x,y] (shifted degrees).
template <class T>
LInftyStructure<T> dgla_as_linfty(
    T R, std::function<T(const T&)> d,
    std::function<T(const GradedElement<T>&, const GradedElement<T>&)> bracket, T zero) {
    LInftyStructure<T> s;
    s.K = 2;
    s.zero_beyond = true;
    s.zero = zero;
    s.Q = [R, d, bracket, zero](const std::vector<GradedElement<T>>& xs) -> T {
        switch (xs.size()) {
            case 0: return -R;
            case 1: return -d(xs[0].payload);
            case 2: {
                T b = bracket(xs[0], xs[1]);
                return (xs[0].degree % 2) ? b : -b;
            }
            default: return zero;
        }
    };
    return s;
}

template <class T>
LInftyMorphism<T> identity_morphism(T zero) {
    LInftyMorphism<T> m;
    m.K = 1;
    m.zero_beyond = true;
    m.zero = zero;
    m.F = [zero](const std::vector<GradedElement<T>>& xs) -> T {
        return xs.size() == 1 ? xs[0].payload : zero;
    };
    return m;
}

// (G∘F) Taylor coefficient: Σ_j G^1_j ∘ F^j_n.
template <class T>
LInftyMorphism<T> compose_morphisms(const LInftyMorphism<T>& G, const LInftyMorphism<T>& F) {
    LInftyMorphism<T> m;
    m.K = (F.zero_beyond && G.zero_beyond) ? F.K * G.K : std::min(F.K, G.K);
    m.zero_beyond = F.zero_beyond && G.zero_beyond;
    m.zero = F.zero;
    TaylorMap<T> Ff = F.F, Gf = G.F;
    int FK = F.K;
    T zero = F.zero;
    m.F = [Ff, Gf, FK, zero](const std::vector<GradedElement<T>>& xs) -> T {
        const int n = static_cast<int>(xs.size());
        T acc = zero;
        for (int j = 1; j <= n; ++j) {
            WordSum<T> comp = morphism_component<T>(Ff, FK, j, xs);
            acc_add(acc, apply_to_words<T>(Gf, comp, zero));
        }
        return acc;
    };
    return m;
}

// -------- identity checks ---------------------------------------------------

// Verifies Σ_i Q^1_i ∘ Q^i_m = 0 on each sample word of length m <= arityBound.
template <class T>
CheckResult check_codifferential(const LInftyStructure<T>& S,
                                 const std::vector<SymWord<T>>& samples, int arityBound) {
    for (const auto& word : samples) {
        const int m = static_cast<int>(word.size());
        if (m > arityBound) continue;
        T defect = S.zero;
        for (int i = 1; i <= m + 1; ++i) {
            WordSum<T> comp = coderivation_component<T>(S.Q, S.K, i, word);
            if (comp.is_zero()) continue;
            if (i > S.K && !S.zero_beyond) {
                std::ostringstream os;
                os << "codifferential check needs arity " << i << " beyond bound " << S.K;
                return CheckResult::fail(os.str());
            }
            if (i > S.K) continue;  // identically zero arities
            acc_add(defect, apply_to_words<T>(S.Q, comp, S.zero));
        }
        if (!defect.is_zero()) {
            std::ostringstream os;
            os << "Q^2 != 0 on a word of length " << m;
            return CheckResult::fail(os.str());
        }
    }
    return CheckResult::pass();
}

// Verifies Σ_i F^1_i ∘ (Q_src)^i_m = Σ_j (Q_tgt)^1_j ∘ F^j_m on samples, and
// the curvature condition F_1(R_src) = R_tgt when either side is curved.
template <class T>
CheckResult check_morphism(const LInftyMorphism<T>& F, const LInftyStructure<T>& Qsrc,
                           const LInftyStructure<T>& Qtgt,
                           const std::vector<SymWord<T>>& samples, int arityBound) {
    {
        T rs = Qsrc.curvature(), rt = Qtgt.curvature();
        if (!rs.is_zero() || !rt.is_zero()) {
            T diff = rs.is_zero() ? F.zero : F.F({GradedElement<T>{1, rs}});
            acc_add(diff, -rt);
            if (!diff.is_zero())
                return CheckResult::fail("morphism does not match the curvatures");
        }
    }
    for (const auto& word : samples) {
        const int m = static_cast<int>(word.size());
        if (m > arityBound) continue;
        T lhs = F.zero;
        for (int i = 1; i <= m + 1; ++i) {
            WordSum<T> comp = coderivation_component<T>(Qsrc.Q, Qsrc.K, i, word);
            if (comp.is_zero()) continue;
            if (i > F.K && !F.zero_beyond) {
                std::ostringstream os;
                os << "morphism check needs F arity " << i << " beyond bound " << F.K;
                return CheckResult::fail(os.str());
            }
            if (i > F.K) continue;
            acc_add(lhs, apply_to_words<T>(F.F, comp, F.zero));
        }
        T rhs = F.zero;
        for (int j = (m == 0 ? 0 : 1); j <= m; ++j) {
            WordSum<T> comp = morphism_component<T>(F.F, F.K, j, word);
            if (comp.is_zero()) continue;
            if (j > Qtgt.K && !Qtgt.zero_beyond) {
                std::ostringstream os;
                os << "morphism check needs target arity " << j << " beyond bound " << Qtgt.K;
                return CheckResult::fail(os.str());
            }
            if (j > Qtgt.K) continue;
            acc_add(rhs, apply_to_words<T>(Qtgt.Q, comp, F.zero));
        }
        acc_add(lhs, -rhs);
        if (!lhs.is_zero()) {
            std::ostringstream os;
            os << "FQ != QF on a word of length " << m;
            return CheckResult::fail(os.str());
        }
    }
    return CheckResult::pass();
}

// -------- Maurer-Cartan calculus --------------------------------------------

// mc_defect = R + dπ + ½[π,π] + … = -Σ_{k>=0} 1/k! Q_k(π^{∨k}).
template <class T>
T mc_defect(const LInftyStructure<T>& S, const T& pi) {
    if (!pi.is_zero() && pi.hbar_order() < 1)
        throw std::invalid_argument("Maurer-Cartan element must sit in the hbar-filtration");
    const int N = truncation_order();
    T acc = S.zero;
    Rat kfact(1);
    std::vector<GradedElement<T>> word;
    for (int k = 0; k <= N; ++k) {
        if (k > 0) {
            kfact *= Rat(k);
            word.push_back(GradedElement<T>{0, pi});
        }
        if (k > S.K) {
            if (!S.zero_beyond)
                throw std::logic_error("mc_defect needs arities beyond the computed bound");
            break;
        }
        T val = S.Q(word);
        if (val.is_zero()) continue;
        acc_add(acc, val * Scalar(Rat(1) / kfact));
    }
    return -acc;
}

// π_F = Σ_{n>=1} 1/n! F_n(π∨…∨π), terminating under the hbar filtration.
template <class T>
T pushforward_mc(const LInftyMorphism<T>& F, const T& pi) {
    if (!pi.is_zero() && pi.hbar_order() < 1)
        throw std::invalid_argument("Maurer-Cartan element must sit in the hbar-filtration");
    const int N = truncation_order();
    T acc = F.zero;
    Rat nfact(1);
    std::vector<GradedElement<T>> word;
    for (int n = 1; n <= N; ++n) {
        nfact *= Rat(n);
        word.push_back(GradedElement<T>{0, pi});
        if (n > F.K) {
            if (!F.zero_beyond)
                throw std::logic_error("pushforward needs arities beyond the computed bound");
            break;
        }
        T val = F.F(word);
        if (val.is_zero()) continue;
        acc_add(acc, val * Scalar(Rat(1) / nfact));
    }
    return acc;
}

// -------- twisting -----------------------------------------------------------

// Q^π_k(x) = Σ_j 1/j! Q_{k+j}(π,…,π,x); for DGLAs this is d+[π,·] with
// curvature R + dπ + ½[π,π].
template <class T>
LInftyStructure<T> twist_structure(const LInftyStructure<T>& S, const T& pi) {
    if (!pi.is_zero() && pi.hbar_order() < 1)
        throw std::invalid_argument("twist requires an hbar-filtered element");
    LInftyStructure<T> out;
    const int N = truncation_order();
    out.zero = S.zero;
    out.zero_beyond = S.zero_beyond;
    out.K = S.zero_beyond ? S.K : std::max(0, S.K - N);
    TaylorMap<T> Q = S.Q;
    int SK = S.K;
    bool zb = S.zero_beyond;
    T zero = S.zero;
    out.Q = [Q, SK, zb, zero, pi, N](const std::vector<GradedElement<T>>& xs) -> T {
        T acc = zero;
        Rat jfact(1);
        std::vector<GradedElement<T>> word;
        for (int j = 0; j <= N; ++j) {
            if (j > 0) {
                jfact *= Rat(j);
                word.push_back(GradedElement<T>{0, pi});
            }
            const int arity = static_cast<int>(xs.size()) + j;
            if (arity > SK) {
                if (zb) break;
                throw std::logic_error("twisted structure map beyond the computed arity bound");
            }
            std::vector<GradedElement<T>> full = word;
            full.insert(full.end(), xs.begin(), xs.end());
            T val = Q(full);
            if (val.is_zero()) continue;
            acc_add(acc, val * Scalar(Rat(1) / jfact));
        }
        return acc;
    };
    return out;
}

// F^π_n(x) = Σ_k 1/k! F_{n+k}(π,…,π,x): morphism from the π-twisted source to
// the target twisted by the pushforward of π.
template <class T>
LInftyMorphism<T> twist_morphism(const LInftyMorphism<T>& F, const T& pi) {
    if (!pi.is_zero() && pi.hbar_order() < 1)
        throw std::invalid_argument("twist requires an hbar-filtered element");
    LInftyMorphism<T> out;
    const int N = truncation_order();
    out.zero = F.zero;
    out.zero_beyond = F.zero_beyond;
    out.K = F.zero_beyond ? F.K : std::max(0, F.K - N);
    TaylorMap<T> Ff = F.F;
    int FK = F.K;
    bool zb = F.zero_beyond;
    T zero = F.zero;
    out.F = [Ff, FK, zb, zero, pi, N](const std::vector<GradedElement<T>>& xs) -> T {
        T acc = zero;
        Rat kfact(1);
        std::vector<GradedElement<T>> word;
        for (int k = 0; k <= N; ++k) {
            if (k > 0) {
                kfact *= Rat(k);
                word.push_back(GradedElement<T>{0, pi});
            }
            const int arity = static_cast<int>(xs.size()) + k;
            if (arity < 1) continue;
            if (arity > FK) {
                if (zb) break;
                throw std::logic_error("twisted morphism coefficient beyond the computed bound");
            }
            std::vector<GradedElement<T>> full = word;
            full.insert(full.end(), xs.begin(), xs.end());
            T val = Ff(full);
            if (val.is_zero()) continue;
            acc_add(acc, val * Scalar(Rat(1) / kfact));
        }
        return acc;
    };
    return out;
}

}  // namespace qred
