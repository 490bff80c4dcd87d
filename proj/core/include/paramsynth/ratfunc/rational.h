#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace paramsynth {

// Canonical arbitrary-precision fraction; GMP keeps it reduced with a positive denominator.
using Rational = mpq_class;
using Integer = mpz_class;

// Accepts "3", "-3", "3/4", "0.4", "-1.25"; decimals convert exactly.
Rational parseRational(std::string_view text);
bool tryParseRational(std::string_view text, Rational& result);

std::string toString(Rational const& value);
double toDouble(Rational const& value);
Rational power(Rational const& base, unsigned exponent);

}  // namespace paramsynth
