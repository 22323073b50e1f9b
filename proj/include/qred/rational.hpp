/*
  Exact rational arithmetic. Thin alias over GMP's mpq_class plus the few
  helpers the rest of the code needs (parsing "p/q" strings, hashing keys).
*/
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace qred {

using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

// Parses "p", "-p", "p/q" (optional whitespace), exact.
inline Rat rat_from_string(const std::string& s) {
    std::string t;
    t.reserve(s.size());
    for (char c : s)
        if (!isspace(static_cast<unsigned char>(c))) t += c;
    if (t.empty()) throw std::invalid_argument("empty rational literal");
    Rat r;
    if (r.set_str(t, 10) != 0) throw std::invalid_argument("bad rational literal: " + s);
    r.canonicalize();
    if (r.get_den() == 0) throw std::invalid_argument("rational with zero denominator: " + s);
    return r;
}

inline std::string rat_to_string(const Rat& r) { return r.get_str(); }

inline bool is_zero(const Rat& r) { return sgn(r) == 0; }

}  // namespace qred
