#include "hyperc/exact/bigint.hpp"

#include "hyperc/errors.hpp"

namespace hyperc::exact {

bool is_zero(const BigInt& a) { return sgn(a) == 0; }

BigInt exact_quotient(const BigInt& a, const BigInt& b) {
    if (is_zero(b)) throw DivisibilityError("division by zero");
    if (!mpz_divisible_p(a.get_mpz_t(), b.get_mpz_t())) throw DivisibilityError("integer division leaves a remainder");
    BigInt q;
    mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

BigInt times_int(const BigInt& a, long k) {
    BigInt r;
    mpz_mul_si(r.get_mpz_t(), a.get_mpz_t(), k);
    return r;
}

long max_bits(const BigInt& a) { return is_zero(a) ? 0 : static_cast<long>(mpz_sizeinbase(a.get_mpz_t(), 2)); }

std::string to_decimal(const BigInt& a) { return a.get_str(10); }

BigInt from_decimal(const std::string& s) {
    BigInt r;
    if (s.empty() || r.set_str(s, 10) != 0) throw InputError("malformed integer: '" + s + "'");
    return r;
}

BigInt ipow(const BigInt& base, unsigned long e) {
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

}  // namespace hyperc::exact
