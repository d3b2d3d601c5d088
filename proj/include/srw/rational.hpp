#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace srw {

using Rational = mpq_class;

// Accepts "p/q", integers and plain decimals ("0.25", "-1.5e-2").
Rational parse_rational(std::string_view text);

// Shortest decimal that round-trips the double, then read exactly.
Rational rational_from_double(double x);

// Always "p/q", with q = 1 for integers.
std::string format_rational(const Rational& r);

inline double to_double(const Rational& r) { return r.get_d(); }

}  // namespace srw
