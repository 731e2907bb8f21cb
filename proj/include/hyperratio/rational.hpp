#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace hyperratio {

// Exact rational scalar. gmpxx keeps every arithmetic result canonical
// (positive denominator, reduced), which the certificates rely on.
using Rational = mpq_class;
using Integer = mpz_class;

// Accepts "p/q", integers and decimals with an optional exponent
// ("0.99", "-1.5e-3"). Decimals are converted exactly, never through a binary
// float. Throws ParseError.
Rational parse_rational(std::string_view text);

// Comma separated list of rationals; an empty string is the empty list.
std::vector<Rational> parse_rational_list(std::string_view text);

// Canonical "numerator/denominator" form; integers keep the "/1".
std::string to_string(const Rational& value);

bool is_nonpositive_integer(const Rational& value);

Integer factorial(unsigned long n);

}  // namespace hyperratio
