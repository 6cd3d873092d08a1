#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace modcert::arith {

using BigInt = mpz_class;
using Rational = mpq_class;

/// floor(sqrt(n)) for n >= 0.
BigInt isqrt_floor(const BigInt& n);
/// Smallest m >= 0 with m^2 >= n.
BigInt isqrt_ceil(const BigInt& n);
/// Smallest m >= 0 with m^k >= n, for n >= 0 and k >= 1.
BigInt iroot_ceil(const BigInt& n, unsigned long k);

BigInt pow(const BigInt& base, unsigned long exp);

/// Smallest (probable) prime strictly greater than n. Exact below 2^64.
BigInt next_prime(const BigInt& n);
bool is_prime(const BigInt& n);

/// Smallest integer >= r.
BigInt ceil(const Rational& r);

bool fits_u64(const BigInt& n);
std::uint64_t to_u64(const BigInt& n);
std::int64_t to_i64(const BigInt& n);
BigInt from_u64(std::uint64_t v);
BigInt from_i64(std::int64_t v);

}  // namespace modcert::arith
