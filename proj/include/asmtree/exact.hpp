#pragma once

// Exact integer and rational arithmetic, backed by GMP.

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace asmtree {

using BigInt = mpz_class;
// mpq_class keeps values canonical (gcd 1, positive denominator) after every
// arithmetic operation; values built from raw parts must be canonicalized.
using Rational = mpq_class;

std::string to_string(const BigInt& v);
// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& v);

// Accepts "p", "-p", "p/q". Throws InputError on anything else or q == 0.
Rational parse_rational(std::string_view text);

BigInt factorial(unsigned long n);
BigInt binomial(unsigned long n, unsigned long k);

// Generalized binomial C(1/2, m) = (1/2)(1/2 - 1)...(1/2 - m + 1) / m!.
Rational half_binomial(unsigned long m);

bool is_integer(const Rational& v);

}  // namespace asmtree
