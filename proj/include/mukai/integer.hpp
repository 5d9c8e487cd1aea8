#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace mukai {

/// Arbitrary precision integer used throughout the library.
using Integer = mpz_class;

Integer gcd(const Integer& x, const Integer& y);

/// True when d divides n. Zero divides only zero.
bool divides(const Integer& d, const Integer& n);

/// n / d, throwing DivisibilityFailure when the quotient is not exact.
Integer exact_div(const Integer& n, const Integer& d);

/// Floor division (rounds toward negative infinity).
Integer floor_div(const Integer& n, const Integer& d);

/// Nonnegative residue of n modulo m (m > 0).
Integer mod_nonneg(const Integer& n, const Integer& m);

int sign(const Integer& x);

std::string to_string(const Integer& x);

/// Parses an optionally signed decimal integer. Throws Parse on bad input.
Integer parse_integer(std::string_view text);

}  // namespace mukai
