/*
  Formal rational-series combinations of named symbols: the minimal payload
  algebra used to exercise the coalgebra and L-infinity layers structurally.
*/
#pragma once

#include "qred/scalar.hpp"

#include <map>
#include <sstream>
#include <string>

namespace qred::testutil {

struct Formal {
    std::map<std::string, Scalar> coef;  // invariant: no zero entries

    Formal() = default;

    static Formal sym(const std::string& name, Scalar weight = Scalar::one()) {
        Formal f;
        if (!weight.is_zero()) f.coef.emplace(name, std::move(weight));
        return f;
    }

    bool is_zero() const { return coef.empty(); }

    Formal operator+(const Formal& o) const {
        Formal out = *this;
        for (const auto& [k, v] : o.coef) {
            auto it = out.coef.find(k);
            if (it == out.coef.end()) {
                out.coef.emplace(k, v);
            } else {
                it->second = it->second + v;
                if (it->second.is_zero()) out.coef.erase(it);
            }
        }
        return out;
    }

    Formal operator-() const {
        Formal out;
        for (const auto& [k, v] : coef) out.coef.emplace(k, -v);
        return out;
    }

    Formal operator-(const Formal& o) const { return *this + (-o); }

    Formal operator*(const Scalar& s) const {
        Formal out;
        for (const auto& [k, v] : coef) {
            Scalar w = v * s;
            if (!w.is_zero()) out.coef.emplace(k, std::move(w));
        }
        return out;
    }

    bool operator==(const Formal& o) const { return coef == o.coef; }
    bool operator!=(const Formal& o) const { return !(*this == o); }
    bool operator<(const Formal& o) const { return coef < o.coef; }

    // Smallest power of hbar appearing in any coefficient.
    int hbar_order() const {
        int best = truncation_order() + 1;
        for (const auto& [k, v] : coef) best = std::min(best, v.order());
        return best;
    }

    std::string str() const {
        if (coef.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [k, v] : coef) {
            if (!first) os << " + ";
            first = false;
            os << "(" << v.str() << ")*" << k;
        }
        return os.str();
    }
};

}  // namespace qred::testutil
