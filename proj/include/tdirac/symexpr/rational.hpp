#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace tdirac::symexpr {

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
using Rational = mpq_class;

inline std::string to_string(const Rational& q) { return q.get_str(); }

/// Parses "n" or "n/d" (optional leading sign). Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

} // namespace tdirac::symexpr
