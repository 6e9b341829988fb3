#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace codedensity {

/// Exact non-negative counts. Never narrowed to machine integers on formula paths.
using Count = mpz_class;
/// Exact rationals, always kept in canonical (reduced) form.
using Rational = mpq_class;

Count power(std::uint64_t base, unsigned long exponent);

/// Narrowing for values that index memory; throws std::overflow_error when out of range.
std::uint64_t to_u64(const Count& value);

Count floor(const Rational& value);
Count ceil(const Rational& value);

/// Decimal rendering with `significant` significant digits; locale independent.
std::string to_decimal(const Rational& value, int significant = 15);

/// The exact value of a finite double.
Rational from_double(double value);

/// Parses "p/q", an integer, or a finite decimal such as "0.25" into an exact rational.
Rational parse_rational(const std::string& text);

}  // namespace codedensity
