#ifndef LATVAL_RATIONAL_HPP
#define LATVAL_RATIONAL_HPP

#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace latval
{

// Arbitrary precision rational, always kept canonical (reduced, den > 0).
using Rational = mpq_class;
using Integer = mpz_class;

Rational make_rational(std::int64_t num, std::int64_t den = 1);

// "n" for integers, "n/d" otherwise.
std::string to_string(const Rational &q);

// Accepts "n", "-n", "n/d". Throws Error(malformed_input) otherwise.
Rational parse_rational(std::string_view text);

Integer factorial(unsigned n);
Integer binomial(unsigned n, unsigned k);

// Exact integer power of a rational.
Rational pow(const Rational &base, unsigned exp);

} // namespace latval

#endif
