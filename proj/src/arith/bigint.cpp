#include "modcert/arith/bigint.hpp"

#include "modcert/arith/prime_field.hpp"
#include "modcert/error.hpp"

namespace modcert::arith {

BigInt isqrt_floor(const BigInt& n) {
    if (n < 0) throw Error(Errc::InvalidArgument, "isqrt of negative");
    BigInt r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

BigInt isqrt_ceil(const BigInt& n) {
    BigInt r = isqrt_floor(n);
    if (r * r < n) ++r;
    return r;
}

BigInt iroot_ceil(const BigInt& n, unsigned long k) {
    if (n < 0 || k == 0) throw Error(Errc::InvalidArgument, "iroot_ceil domain");
    BigInt r;
    int exact = mpz_root(r.get_mpz_t(), n.get_mpz_t(), k);
    if (!exact) ++r;
    return r;
}

BigInt pow(const BigInt& base, unsigned long exp) {
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
    return r;
}

bool is_prime(const BigInt& n) {
    if (n < 2) return false;
    if (fits_u64(n)) return is_prime_u64(to_u64(n));
    return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

BigInt next_prime(const BigInt& n) {
    if (n < 1) return 2;
    // 2^64 - 59 is the largest 64-bit prime.
    constexpr std::uint64_t kLargestPrime64 = 18446744073709551557ULL;
    if (fits_u64(n) && to_u64(n) < kLargestPrime64) return from_u64(next_prime_u64(to_u64(n)));
    BigInt r;
    mpz_nextprime(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

BigInt ceil(const Rational& r) {
    BigInt q;
    mpz_cdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return q;
}

bool fits_u64(const BigInt& n) {
    return n >= 0 && mpz_sizeinbase(n.get_mpz_t(), 2) <= 64;
}

std::uint64_t to_u64(const BigInt& n) {
    if (!fits_u64(n)) throw Error(Errc::InvalidArgument, "value does not fit in 64 bits: " + n.get_str());
    std::uint64_t out = 0;
    mpz_export(&out, nullptr, -1, sizeof(out), 0, 0, n.get_mpz_t());
    return out;
}

std::int64_t to_i64(const BigInt& n) {
    if (!mpz_fits_slong_p(n.get_mpz_t()))
        throw Error(Errc::InvalidArgument, "value does not fit in int64: " + n.get_str());
    return static_cast<std::int64_t>(n.get_si());
}

BigInt from_u64(std::uint64_t v) {
    BigInt r;
    mpz_import(r.get_mpz_t(), 1, -1, sizeof(v), 0, 0, &v);
    return r;
}

BigInt from_i64(std::int64_t v) {
    if (v >= 0) return from_u64(static_cast<std::uint64_t>(v));
    // avoid overflow on INT64_MIN
    return -from_u64(static_cast<std::uint64_t>(-(v + 1)) + 1);
}

}  // namespace modcert::arith
