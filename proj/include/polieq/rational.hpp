#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace polieq {

using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "-12", "+3" or "355/113" exactly. The denominator must be positive.
/// Throws std::invalid_argument on anything else (no decimals, no spaces).
Rational parse_rational(std::string_view text);

/// Canonical lowest-terms form: "p" when the denominator is one, else "p/q".
std::string to_string(const Rational& r);

double to_double(const Rational& r);

/// Least common multiple of the denominators of a range of rationals.
template <typename Range>
Integer common_denominator(const Range& values) {
  Integer d = 1;
  for (const Rational& v : values) {
    mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), v.get_den_mpz_t());
  }
  return d;
}

/// Converts to int64, throwing std::overflow_error when out of range.
std::int64_t to_int64(const Integer& z);

}  // namespace polieq
