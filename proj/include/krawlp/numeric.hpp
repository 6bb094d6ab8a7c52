#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>

namespace krawlp {

using BigInt = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

/// n!, memoized; safe to call from several threads.
const BigInt& factorial(int n);

BigInt binomial(int n, int k);

/// n! / prod(parts!). Parts must be non-negative and sum to n.
BigInt multinomial(int n, const int* parts, std::size_t count);

BigInt pow2(unsigned exponent);

/// Exact "p/q" form, or "p" when the denominator is 1.
std::string to_fraction_string(const Rational& value);
std::string to_fraction_string(const BigInt& value);

/// Accepts "p", "-p", "p/q". Throws Error(InvalidInput) otherwise.
Rational parse_fraction(std::string_view text);

double to_double(const Rational& value);

/// Exact rational value of a finite double.
Rational from_double(double value);

}  // namespace krawlp
