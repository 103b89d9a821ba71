#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace bratteli {

using BigInt = mpz_class;
using Rational = mpq_class;

// Canonical num/den; throws ConfigError on a zero denominator.
Rational make_rational(const BigInt& num, const BigInt& den);

// Always "num/den", so integers print as "n/1".
std::string to_fraction_string(const Rational& q);
// Accepts "num/den" or a bare integer.
Rational parse_rational(std::string_view text);

std::string to_decimal_string(const Rational& q, int significant = 12);
double to_double(const Rational& q);

BigInt ipow(const BigInt& base, unsigned long exp);
Rational ipow(const Rational& base, unsigned long exp);

BigInt parse_bigint(std::string_view text);

}  // namespace bratteli
