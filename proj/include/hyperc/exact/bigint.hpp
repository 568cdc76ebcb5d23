#pragma once

#include <gmpxx.h>

#include <string>

namespace hyperc::exact {

using BigInt = mpz_class;

bool is_zero(const BigInt& a);
// Quotient a / b; throws DivisibilityError unless b divides a.
BigInt exact_quotient(const BigInt& a, const BigInt& b);
BigInt times_int(const BigInt& a, long k);
// Bit length of |a| (0 for a = 0).
long max_bits(const BigInt& a);

std::string to_decimal(const BigInt& a);
// Throws InputError on malformed input.
BigInt from_decimal(const std::string& s);

BigInt ipow(const BigInt& base, unsigned long e);

}  // namespace hyperc::exact
