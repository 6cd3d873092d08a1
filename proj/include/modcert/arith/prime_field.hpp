#pragma once

#include <cstdint>

namespace modcert::arith {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

/// Deterministic Miller-Rabin, exact for every 64-bit input.
bool is_prime_u64(u64 n) noexcept;

/// Smallest prime strictly greater than n. n must leave room below 2^64.
u64 next_prime_u64(u64 n);

/// Residue field F_p for a machine-width prime p.
///
/// Elements are plain u64 values in [0, p). Construction runs the primality
/// test, so every live PrimeField has a prime modulus.
class PrimeField {
public:
    explicit PrimeField(u64 p);

    u64 modulus() const noexcept { return p_; }

    u64 reduce(i64 a) const noexcept {
        i64 r = a % static_cast<i64>(p_);
        return static_cast<u64>(r < 0 ? r + static_cast<i64>(p_) : r);
    }

    u64 add(u64 a, u64 b) const noexcept {
        u64 s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    u64 sub(u64 a, u64 b) const noexcept { return a >= b ? a - b : a + p_ - b; }
    u64 neg(u64 a) const noexcept { return a == 0 ? 0 : p_ - a; }
    u64 mul(u64 a, u64 b) const noexcept {
        return static_cast<u64>(static_cast<u128>(a) * b % p_);
    }
    u64 pow(u64 a, u64 e) const noexcept;
    /// Inverse of a nonzero element (Fermat).
    u64 inv(u64 a) const;

    /// Euler's criterion: a^((p-1)/2) mapped to {-1, 0, 1}. p = 2 gives 0 or 1.
    int legendre(u64 a) const noexcept;

private:
    u64 p_;
};

/// Legendre symbol (a / p). Rejects even or composite p.
int legendre_symbol(i64 a, u64 p);

}  // namespace modcert::arith
