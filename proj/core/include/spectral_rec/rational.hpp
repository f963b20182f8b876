#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace spectral_rec {

/// Arbitrary-precision rational. gmpxx keeps values canonical (reduced,
/// positive denominator) after every arithmetic operation.
using Rational = mpq_class;
using Integer = mpz_class;

/// Builds num/den in canonical form. Throws on a zero denominator.
Rational make_rational(std::int64_t num, std::int64_t den = 1);

/// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& r);

/// Accepts "p", "-p", "p/q". Throws Error(kMalformedInput) otherwise.
Rational parse_rational(std::string_view text);

inline bool is_zero(const Rational& r) { return sgn(r) == 0; }

}  // namespace spectral_rec
