#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace epsnet {

/// Exact arbitrary-precision rational. All geometry and all thresholds in
/// this library go through this type; nothing is decided in floating point.
using Rational = mpq_class;

/// Builds num/den in canonical form. Throws std::invalid_argument on den == 0.
Rational make_rational(std::int64_t num, std::int64_t den = 1);

/// Parses "P/Q" or "P" (decimal integers, optional sign).
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& q);

/// 2^-k and c^-k as exact rationals.
Rational pow2_inverse(unsigned k);
Rational inverse_power(std::int64_t base, unsigned k);

std::int64_t ipow(std::int64_t base, unsigned exp);

/// Returns q as an int64, throwing if q is not an integer or does not fit.
std::int64_t to_int64_exact(const Rational& q);

}  // namespace epsnet
