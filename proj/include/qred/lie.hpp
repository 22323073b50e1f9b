/*
  Finite-dimensional Lie algebra data: dimension and structure constants
  f^c_{ab} over the exact rationals, with validation of antisymmetry and the
  Jacobi identity.
*/
#pragma once

#include "qred/rational.hpp"

#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace qred {

struct CheckResult {
    bool ok = true;
    std::string detail;  // empty when ok

    static CheckResult pass() { return {}; }
    static CheckResult fail(std::string why) { return {false, std::move(why)}; }
};

class LieData {
  public:
    LieData() = default;
    explicit LieData(int dim) : n_(dim), f_(static_cast<size_t>(dim) * dim * dim, Rat(0)) {}

    int dim() const { return n_; }

    // f^c_{ab}; indices zero-based.
    const Rat& f(int c, int a, int b) const { return f_[idx(c, a, b)]; }
    void set_f(int c, int a, int b, const Rat& v) {
        f_[idx(c, a, b)] = v;
        f_[idx(c, b, a)] = -v;
    }

    // bracket [x, y]^c for coefficient vectors x, y is sum f^c_{ab} x^a y^b;
    // here we expose the structure-constant contraction for basis pairs.
    std::vector<Rat> bracket_basis(int a, int b) const {
        std::vector<Rat> out(n_, Rat(0));
        for (int c = 0; c < n_; ++c) out[c] = f(c, a, b);
        return out;
    }

    // Modular form Delta_a = f^b_{ab} (trace of ad(e_a)).
    Rat modular(int a) const {
        Rat t(0);
        for (int b = 0; b < n_; ++b) t += f(b, a, b);
        return t;
    }

    CheckResult validate() const {
        for (int a = 0; a < n_; ++a)
            for (int b = 0; b < n_; ++b)
                for (int c = 0; c < n_; ++c)
                    if (f(c, a, b) != -f(c, b, a)) {
                        std::ostringstream os;
                        os << "antisymmetry fails at f^" << c + 1 << "_{" << a + 1 << b + 1 << "}";
                        return CheckResult::fail(os.str());
                    }
        // Jacobi: sum_c f^c_{ab} f^g_{cd} + f^c_{bd} f^g_{ca} + f^c_{da} f^g_{cb} = 0
        for (int a = 0; a < n_; ++a)
            for (int b = 0; b < n_; ++b)
                for (int d = 0; d < n_; ++d)
                    for (int g = 0; g < n_; ++g) {
                        Rat s(0);
                        for (int c = 0; c < n_; ++c)
                            s += f(c, a, b) * f(g, c, d) + f(c, b, d) * f(g, c, a) +
                                 f(c, d, a) * f(g, c, b);
                        if (sgn(s) != 0) {
                            std::ostringstream os;
                            os << "Jacobi fails at (a,b,d,g) = (" << a + 1 << "," << b + 1 << ","
                               << d + 1 << "," << g + 1 << "), defect " << rat_to_string(s);
                            return CheckResult::fail(os.str());
                        }
                    }
        return CheckResult::pass();
    }

  private:
    size_t idx(int c, int a, int b) const {
        return (static_cast<size_t>(c) * n_ + a) * n_ + b;
    }
    int n_ = 0;
    std::vector<Rat> f_;
};

inline CheckResult validate_lie(const LieData& lie) { return lie.validate(); }

}  // namespace qred
