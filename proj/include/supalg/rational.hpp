#pragma once

#include <gmpxx.h>

#include <string>

#include "supalg/error.hpp"

namespace supalg {

// Exact rationals. GMP keeps values canonical (lowest terms, positive
// denominator), which is exactly the contract everything else relies on.
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
    if (den == 0) throw input_error("rational with zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline bool is_zero(const Rational& r) { return sgn(r) == 0; }

inline std::string to_string(const Rational& r) {
    return r.get_str();
}

// Parses "num", "num/den" or "-num/den". Used by JSON I/O and the CLI.
inline Rational rational_from_string(const std::string& s) {
    if (s.empty()) throw input_error("empty rational literal");
    for (size_t i = 0; i < s.size(); ++i) {
        char c = s[i];
        bool ok = (c >= '0' && c <= '9') || c == '/' || (c == '-' && i == 0);
        if (!ok) throw input_error("malformed rational literal: " + s);
    }
    Rational r;
    if (r.set_str(s, 10) != 0) throw input_error("malformed rational literal: " + s);
    if (r.get_den() == 0) throw input_error("rational with zero denominator: " + s);
    r.canonicalize();
    return r;
}

} // namespace supalg
