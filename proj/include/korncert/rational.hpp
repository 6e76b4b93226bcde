#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace korncert {

/// Arbitrary-precision rational, always kept in canonical (reduced) form.
using Rational = mpq_class;

std::string to_string(const Rational& q);

/// Parses "p" or "p/q" with an optional leading sign. Throws
/// std::invalid_argument on anything else, including decimal points.
Rational parse_rational(std::string_view text);

inline double to_double(const Rational& q) { return q.get_d(); }

}  // namespace korncert
