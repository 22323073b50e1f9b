/*
  Equivariant polydifferential operators: finite sums of eps-monomial tensor
  PolyDiffOp, where eps^1..eps^n span the dual symmetry algebra polynomial
  factor. A piece eps-degree i, arity j is homogeneous of total degree
  2i + (j-1). The bracket multiplies eps-parts (they sit in even degree, so no
  Koszul signs) and takes the Gerstenhaber bracket of operator parts; the
  differential acts on the operator part only.

  The symmetry acts on the eps-alphabet by rho_a(eps^c) = f^c_{ab} eps^b and
  on operator parts by the Lie derivative along the fundamental field; this is
  the unique extension making lambda = sum_a eps^a (x) Lie_{(e_a)_M} and
  J = sum_a eps^a (x) e_a invariant.
*/
#pragma once

#include "qred/polydiff.hpp"

#include <map>
#include <utility>
#include <vector>

namespace qred {

using EpsMono = std::vector<std::uint32_t>;

class EquivariantOp {
  public:
    // key: (eps exponent vector of length n, operator arity)
    using Key = std::pair<EpsMono, int>;

    EquivariantOp() = default;
    EquivariantOp(int gens, int n) : gens_(gens), n_(n) {}

    static EquivariantOp wrap(int n, const PolyDiffOp& op) {
        EquivariantOp a(op.gens(), n);
        a.add_part(EpsMono(n, 0), op);
        return a;
    }

    int gens() const { return gens_; }
    int eps_dim() const { return n_; }
    bool is_zero() const { return parts_.empty(); }
    const std::map<Key, PolyDiffOp>& parts() const { return parts_; }

    void add_part(const EpsMono& eps, const PolyDiffOp& op) {
        if (op.is_zero()) return;
        if (static_cast<int>(eps.size()) != n_)
            throw std::logic_error("eps monomial width mismatch");
        if (op.gens() != gens_) throw std::logic_error("operator generator width mismatch");
        Key k{eps, op.arity()};
        auto it = parts_.find(k);
        if (it == parts_.end()) {
            parts_.emplace(std::move(k), op);
        } else {
            it->second += op;
            if (it->second.is_zero()) parts_.erase(it);
        }
    }

    // The operator part for a fixed eps-monomial and arity (zero if absent).
    PolyDiffOp part(const EpsMono& eps, int arity) const {
        auto it = parts_.find(Key{eps, arity});
        if (it == parts_.end()) return PolyDiffOp(gens_, arity);
        return it->second;
    }

    EquivariantOp& operator+=(const EquivariantOp& o) {
        check_same(o);
        for (const auto& [k, op] : o.parts_) add_part(k.first, op);
        return *this;
    }
    EquivariantOp& operator-=(const EquivariantOp& o) {
        check_same(o);
        for (const auto& [k, op] : o.parts_) add_part(k.first, -op);
        return *this;
    }
    friend EquivariantOp operator+(EquivariantOp a, const EquivariantOp& b) { return a += b; }
    friend EquivariantOp operator-(EquivariantOp a, const EquivariantOp& b) { return a -= b; }
    friend EquivariantOp operator-(const EquivariantOp& a) {
        EquivariantOp r(a.gens_, a.n_);
        for (const auto& [k, op] : a.parts_) r.parts_.emplace(k, -op);
        return r;
    }
    EquivariantOp& operator*=(const Scalar& s) {
        std::map<Key, PolyDiffOp> out;
        for (const auto& [k, op] : parts_) {
            PolyDiffOp v = op * s;
            if (!v.is_zero()) out.emplace(k, std::move(v));
        }
        parts_ = std::move(out);
        return *this;
    }
    friend EquivariantOp operator*(EquivariantOp a, const Scalar& s) { return a *= s; }
    friend EquivariantOp operator*(const Scalar& s, EquivariantOp a) { return a *= s; }
    EquivariantOp& operator*=(const Rat& r) { return *this *= Scalar(r); }
    friend EquivariantOp operator*(EquivariantOp a, const Rat& r) { return a *= Scalar(r); }
    friend EquivariantOp operator*(const Rat& r, EquivariantOp a) { return a *= Scalar(r); }

    friend bool operator==(const EquivariantOp& a, const EquivariantOp& b) {
        a.check_same(b);
        return a.parts_ == b.parts_;
    }
    friend bool operator!=(const EquivariantOp& a, const EquivariantOp& b) { return !(a == b); }
    friend bool operator<(const EquivariantOp& a, const EquivariantOp& b) {
        return a.parts_ < b.parts_;
    }

    int hbar_order() const {
        int best = truncation_order() + 1;
        for (const auto& [k, op] : parts_) best = std::min(best, op.hbar_order());
        return best;
    }
    EquivariantOp hbar_truncated(int k) const {
        EquivariantOp r(gens_, n_);
        for (const auto& [key, op] : parts_) r.add_part(key.first, op.hbar_truncated(k));
        return r;
    }

    // Decomposition by total degree 2 * eps-degree + arity - 1.
    std::map<int, EquivariantOp> by_total_degree() const {
        std::map<int, EquivariantOp> out;
        for (const auto& [k, op] : parts_) {
            int deg = 2 * mono_total(k.first) + k.second - 1;
            auto it = out.find(deg);
            if (it == out.end()) it = out.emplace(deg, EquivariantOp(gens_, n_)).first;
            it->second.add_part(k.first, op);
        }
        return out;
    }

    std::string str(const Site& site) const {
        if (parts_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [k, op] : parts_) {
            if (!first) os << "\n + ";
            os << "eps{";
            bool f2 = true;
            for (int c = 0; c < n_; ++c) {
                if (k.first[c] == 0) continue;
                if (!f2) os << " ";
                os << "eps" << c + 1;
                if (k.first[c] > 1) os << "^" << k.first[c];
                f2 = false;
            }
            if (f2) os << "1";
            os << "} (x) " << op.str(site);
            first = false;
        }
        return os.str();
    }

  private:
    void check_same(const EquivariantOp& o) const {
        if (o.gens_ != gens_ || o.n_ != n_)
            throw std::logic_error("equivariant operator shape mismatch");
    }

    int gens_ = 0;
    int n_ = 0;
    std::map<Key, PolyDiffOp> parts_;
};

inline EquivariantOp eq_bracket(const EquivariantOp& A, const EquivariantOp& B) {
    EquivariantOp out(A.gens(), A.eps_dim());
    for (const auto& [ka, da] : A.parts())
        for (const auto& [kb, db] : B.parts()) {
            PolyDiffOp br = gerstenhaber(da, db);
            if (!br.is_zero()) out.add_part(mono_mul(ka.first, kb.first), br);
        }
    return out;
}

inline EquivariantOp eq_d(const EquivariantOp& A) {
    EquivariantOp out(A.gens(), A.eps_dim());
    for (const auto& [k, op] : A.parts()) {
        PolyDiffOp d = hochschild_d(op);
        if (!d.is_zero()) out.add_part(k.first, d);
    }
    return out;
}

// lambda = sum_a eps^a (x) Lie_{(e_a)_M}, the curvature-generating element.
inline EquivariantOp lambda_element(const SiteModel& model) {
    const int n = model.lie().dim();
    EquivariantOp out(model.site().gens(), n);
    for (int a = 0; a < n; ++a)
        out.add_part(mono_unit(n, a), fundamental_field_op(model, a));
    return out;
}

// J = sum_a eps^a (x) e_a (classical momentum map components as arity-0 ops).
inline EquivariantOp j_element(const SiteModel& model) {
    const Site& site = model.site();
    const int n = model.lie().dim();
    EquivariantOp out(site.gens(), n);
    for (int a = 0; a < n; ++a) {
        SitePolynomial ea = SitePolynomial::generator(site.gens(), site.m + a);
        out.add_part(mono_unit(n, a), PolyDiffOp::from_polynomial(ea));
    }
    return out;
}

// The infinitesimal action of basis element a on the full equivariant object.
inline EquivariantOp eq_act(const SiteModel& model, int a, const EquivariantOp& A) {
    const LieData& lie = model.lie();
    const int n = A.eps_dim();
    EquivariantOp out(A.gens(), n);
    for (const auto& [k, op] : A.parts()) {
        // coadjoint part on the eps-monomial: derivation by rho_a(eps^c) = f^c_{ab} eps^b
        const EpsMono& eps = k.first;
        for (int c = 0; c < n; ++c) {
            if (eps[c] == 0) continue;
            for (int b = 0; b < n; ++b) {
                const Rat& fc = lie.f(c, a, b);
                if (sgn(fc) == 0) continue;
                EpsMono eps2 = eps;
                eps2[c] -= 1;
                eps2[b] += 1;
                out.add_part(eps2, op * Rat(fc * Rat(static_cast<long>(eps[c]))));
            }
        }
        // operator part: Lie derivative along the fundamental field
        PolyDiffOp ld = lie_derivative(model, a, op);
        if (!ld.is_zero()) out.add_part(eps, ld);
    }
    return out;
}

inline bool eq_is_invariant(const SiteModel& model, const EquivariantOp& A) {
    for (int a = 0; a < model.lie().dim(); ++a)
        if (!eq_act(model, a, A).is_zero()) return false;
    return true;
}

}  // namespace qred
