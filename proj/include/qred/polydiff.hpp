/*
  Polydifferential operators on the site: k-linear operators acting on
  polynomial arguments, written as sums of terms

      coefficient(c, e) * d^{alpha_0} (x) ... (x) d^{alpha_{k-1}}

  with one derivative multi-index per argument slot. The complex degree of an
  arity-k operator is k - 1. Elements of the operator complex are normalized
  (every slot has total order >= 1, so they vanish on constants); the
  commutative product mu, whose slots have order 0, is supported as an
  auxiliary value, and insertions produced while composing are merged so that
  brackets of normalized operators are normalized again.

  Conventions:
    (D o E)(a_0..a_{d+e}) = sum_{i=0}^{d} (-1)^{i e}
        D(a_0,..,a_{i-1}, E(a_i,..,a_{i+e}), a_{i+e+1},..),   d = |D|, e = |E|
    [D,E] = (-1)^{|E||D|} (D o E - (-1)^{|D||E|} E o D)
    hochschild differential  dD = [mu, D]
    cup product  (D u E)(a_0,..) = D(a_0,..,a_{d}) * E(a_{d+1},..)  (no sign)
*/
#pragma once

#include "qred/sitemodel.hpp"
#include "qred/sitepoly.hpp"

#include <functional>
#include <map>
#include <sstream>
#include <vector>

namespace qred {

using SlotTuple = std::vector<Monomial>;

inline bool parity_odd(long a) { return (a % 2) != 0; }
inline int sign_pow(long a) { return parity_odd(a) ? -1 : 1; }

class PolyDiffOp {
  public:
    PolyDiffOp() = default;
    PolyDiffOp(int gens, int arity) : gens_(gens), arity_(arity) {}

    static PolyDiffOp from_polynomial(const SitePolynomial& p) {
        PolyDiffOp d(p.gens(), 0);
        if (!p.is_zero()) d.terms_.emplace(SlotTuple{}, p);
        return d;
    }
    // The commutative product as an arity-2 operator (order-0 slots).
    static PolyDiffOp multiplication(int gens) {
        PolyDiffOp d(gens, 2);
        d.add_term(SlotTuple{Monomial(gens, 0), Monomial(gens, 0)},
                   SitePolynomial::constant(gens, Scalar::one()));
        return d;
    }
    // coefficient * single slot d^alpha, arity 1.
    static PolyDiffOp first_order(const SitePolynomial& coeff, const Monomial& alpha) {
        PolyDiffOp d(coeff.gens(), 1);
        d.add_term(SlotTuple{alpha}, coeff);
        return d;
    }

    int gens() const { return gens_; }
    int arity() const { return arity_; }
    int degree() const { return arity_ - 1; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<SlotTuple, SitePolynomial>& terms() const { return terms_; }

    // True when every slot of every term has total order >= 1.
    bool is_normalized() const {
        for (const auto& [slots, c] : terms_)
            for (const auto& a : slots)
                if (mono_total(a) == 0) return false;
        return true;
    }

    void add_term(const SlotTuple& slots, const SitePolynomial& c) {
        if (c.is_zero()) return;
        if (static_cast<int>(slots.size()) != arity_)
            throw std::logic_error("slot count does not match arity");
        auto it = terms_.find(slots);
        if (it == terms_.end()) {
            terms_.emplace(slots, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    PolyDiffOp& operator+=(const PolyDiffOp& o) {
        check_same(o);
        for (const auto& [s, c] : o.terms_) add_term(s, c);
        return *this;
    }
    PolyDiffOp& operator-=(const PolyDiffOp& o) {
        check_same(o);
        for (const auto& [s, c] : o.terms_) add_term(s, -c);
        return *this;
    }
    friend PolyDiffOp operator+(PolyDiffOp a, const PolyDiffOp& b) { return a += b; }
    friend PolyDiffOp operator-(PolyDiffOp a, const PolyDiffOp& b) { return a -= b; }
    friend PolyDiffOp operator-(const PolyDiffOp& a) {
        PolyDiffOp r(a.gens_, a.arity_);
        for (const auto& [s, c] : a.terms_) r.terms_.emplace(s, -c);
        return r;
    }
    PolyDiffOp& operator*=(const Scalar& s) {
        std::map<SlotTuple, SitePolynomial> out;
        for (const auto& [slots, c] : terms_) {
            SitePolynomial v = c * s;
            if (!v.is_zero()) out.emplace(slots, std::move(v));
        }
        terms_ = std::move(out);
        return *this;
    }
    friend PolyDiffOp operator*(PolyDiffOp a, const Scalar& s) { return a *= s; }
    friend PolyDiffOp operator*(const Scalar& s, PolyDiffOp a) { return a *= s; }
    PolyDiffOp& operator*=(const Rat& r) { return *this *= Scalar(r); }
    friend PolyDiffOp operator*(PolyDiffOp a, const Rat& r) { return a *= Scalar(r); }
    friend PolyDiffOp operator*(const Rat& r, PolyDiffOp a) { return a *= Scalar(r); }

    friend bool operator==(const PolyDiffOp& a, const PolyDiffOp& b) {
        a.check_same(b);
        return a.terms_ == b.terms_;
    }
    friend bool operator!=(const PolyDiffOp& a, const PolyDiffOp& b) { return !(a == b); }
    friend bool operator<(const PolyDiffOp& a, const PolyDiffOp& b) {
        if (a.arity_ != b.arity_) return a.arity_ < b.arity_;
        return a.terms_ < b.terms_;
    }

    SitePolynomial evaluate(const std::vector<SitePolynomial>& args) const {
        if (static_cast<int>(args.size()) != arity_)
            throw std::invalid_argument("evaluate: argument count does not match arity");
        SitePolynomial out(gens_);
        for (const auto& [slots, c] : terms_) {
            SitePolynomial prod = c;
            bool dead = false;
            for (int j = 0; j < arity_; ++j) {
                SitePolynomial d = args[j].derivative(slots[j]);
                if (d.is_zero()) { dead = true; break; }
                prod *= d;
            }
            if (!dead) out += prod;
        }
        return out;
    }

    int hbar_order() const {
        int best = truncation_order() + 1;
        for (const auto& [s, c] : terms_) best = std::min(best, c.hbar_order());
        return best;
    }
    PolyDiffOp hbar_truncated(int k) const {
        PolyDiffOp r(gens_, arity_);
        for (const auto& [s, c] : terms_) r.add_term(s, c.hbar_truncated(k));
        return r;
    }

    std::string str(const Site& site) const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [slots, c] : terms_) {
            if (!first) os << "  +  ";
            os << "[" << c.str(site) << "]";
            for (const auto& a : slots) {
                os << " (x) d{";
                bool f2 = true;
                for (int g = 0; g < gens_; ++g) {
                    if (a[g] == 0) continue;
                    if (!f2) os << " ";
                    os << site.gen_name(g);
                    if (a[g] > 1) os << "^" << a[g];
                    f2 = false;
                }
                if (f2) os << "1";
                os << "}";
            }
            first = false;
        }
        return os.str();
    }

    // --- composition machinery -------------------------------------------

    // Insert E into slot position i of this operator (no Gerstenhaber sign):
    // the single summand D(a_0,..,a_{i-1}, E(..), ..). Distributes the slot's
    // multi-index over E's coefficient and slots via the generalized Leibniz
    // rule with multinomial weights.
    PolyDiffOp insert_at(int i, const PolyDiffOp& E) const {
        check_gens(E);
        if (i < 0 || i >= arity_) throw std::invalid_argument("insert_at: bad position");
        PolyDiffOp out(gens_, arity_ + E.arity_ - 1);
        for (const auto& [ds, dc] : terms_) {
            for (const auto& [es, ec] : E.terms_) {
                // distribute ds[i] over (coefficient, es[0..]) -> parts[0..E.arity]
                std::vector<Monomial> parts(E.arity_ + 1, Monomial(gens_, 0));
                distribute(ds[i], 0, Rat(1), parts, [&](const std::vector<Monomial>& p,
                                                        const Rat& multinom) {
                    SitePolynomial coeff = ec.derivative(p[0]);
                    if (coeff.is_zero()) return;
                    coeff *= dc;
                    if (coeff.is_zero()) return;
                    coeff *= multinom;
                    SlotTuple slots;
                    slots.reserve(arity_ + E.arity_ - 1);
                    for (int j = 0; j < i; ++j) slots.push_back(ds[j]);
                    for (int j = 0; j < E.arity_; ++j) slots.push_back(mono_mul(es[j], p[j + 1]));
                    for (int j = i + 1; j < arity_; ++j) slots.push_back(ds[j]);
                    out.add_term(slots, coeff);
                });
            }
        }
        return out;
    }

    // Gerstenhaber pre-composition D o E with the alternating-insertion signs.
    friend PolyDiffOp circ(const PolyDiffOp& D, const PolyDiffOp& E) {
        D.check_gens(E);
        PolyDiffOp out(D.gens_, D.arity_ + E.arity_ - 1);
        const long e = E.degree();
        for (int i = 0; i < D.arity_; ++i) {
            PolyDiffOp t = D.insert_at(i, E);
            if (sign_pow(static_cast<long>(i) * e) < 0) t = -t;
            out += t;
        }
        return out;
    }

    friend PolyDiffOp gerstenhaber(const PolyDiffOp& D, const PolyDiffOp& E) {
        const long d = D.degree(), e = E.degree();
        PolyDiffOp de = circ(D, E);
        PolyDiffOp ed = circ(E, D);
        if (sign_pow(d * e) < 0) ed = -ed;
        PolyDiffOp r = de - ed;
        if (sign_pow(d * e) < 0) r = -r;
        return r;
    }

    friend PolyDiffOp hochschild_d(const PolyDiffOp& D) {
        return gerstenhaber(multiplication(D.gens_), D);
    }

    friend PolyDiffOp cup(const PolyDiffOp& D, const PolyDiffOp& E) {
        D.check_gens(E);
        PolyDiffOp out(D.gens_, D.arity_ + E.arity_);
        for (const auto& [ds, dc] : D.terms_)
            for (const auto& [es, ec] : E.terms_) {
                SitePolynomial c = dc * ec;
                if (c.is_zero()) continue;
                SlotTuple slots = ds;
                slots.insert(slots.end(), es.begin(), es.end());
                out.add_term(slots, c);
            }
        return out;
    }

  private:
    void check_same(const PolyDiffOp& o) const {
        if (o.gens_ != gens_ || o.arity_ != arity_)
            throw std::logic_error("polydiff operator shape mismatch");
    }
    void check_gens(const PolyDiffOp& o) const {
        if (o.gens_ != gens_) throw std::logic_error("polydiff generator count mismatch");
    }

    // Enumerate all splittings of alpha into parts.size() multi-indices with
    // multinomial weights, invoking sink(parts, weight) for each.
    template <class Sink>
    void distribute(const Monomial& alpha, int g, const Rat& w, std::vector<Monomial>& parts,
                    const Sink& sink) const {
        if (g == gens_) {
            sink(parts, w);
            return;
        }
        const int total = alpha[g];
        if (total == 0) {
            distribute(alpha, g + 1, w, parts, sink);
            return;
        }
        // compositions of `total` into parts.size() nonnegative integers,
        // each composition weighted by total! / prod(comp_j!)
        const int P = static_cast<int>(parts.size());
        std::vector<int> comp(P, 0);
        std::function<void(int, int)> rec = [&](int idx, int left) {
            if (idx == P - 1) {
                comp[idx] = left;
                Rat mult = factorial(total);
                for (int j = 0; j < P; ++j) mult /= factorial(comp[j]);
                for (int j = 0; j < P; ++j) parts[j][g] = comp[j];
                distribute(alpha, g + 1, w * mult, parts, sink);
                for (int j = 0; j < P; ++j) parts[j][g] = 0;
                return;
            }
            for (int take = 0; take <= left; ++take) {
                comp[idx] = take;
                rec(idx + 1, left - take);
            }
        };
        rec(0, total);
    }

    static Rat factorial(int k) {
        Rat r(1);
        for (int i = 2; i <= k; ++i) r *= Rat(i);
        return r;
    }

    int gens_ = 0;
    int arity_ = 0;
    std::map<SlotTuple, SitePolynomial> terms_;
};

inline PolyDiffOp multiplication_op(int gens) { return PolyDiffOp::multiplication(gens); }

// The fundamental vector field (e_a)_M as an arity-1 operator.
inline PolyDiffOp fundamental_field_op(const SiteModel& model, int a) {
    const Site& site = model.site();
    const int G = site.gens();
    PolyDiffOp X(G, 1);
    for (int k = 0; k < site.m; ++k)
        if (!model.base_coeff(a, k).is_zero())
            X += PolyDiffOp::first_order(model.base_coeff(a, k), mono_unit(G, k));
    for (int b = 0; b < site.n; ++b)
        for (int c = 0; c < site.n; ++c) {
            const Rat& fc = model.lie().f(c, a, b);
            if (sgn(fc) == 0) continue;
            X += PolyDiffOp::first_order(
                SitePolynomial::generator(G, site.m + c) * (-fc), mono_unit(G, site.m + b));
        }
    return X;
}

// Operator Lie derivative along (e_a)_M: [X, D] = X o D - D o X for the
// arity-1 field X (equals the Gerstenhaber bracket since |X| = 0).
inline PolyDiffOp lie_derivative(const SiteModel& model, int a, const PolyDiffOp& D) {
    return gerstenhaber(fundamental_field_op(model, a), D);
}

}  // namespace qred
