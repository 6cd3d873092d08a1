#include "modcert/arith/prime_field.hpp"

#include <array>
#include <limits>
#include <string>

#include "modcert/error.hpp"

namespace modcert::arith {

namespace {

u64 mulmod(u64 a, u64 b, u64 m) noexcept { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 powmod(u64 a, u64 e, u64 m) noexcept {
    u64 r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

}  // namespace

bool is_prime_u64(u64 n) noexcept {
    if (n < 2) return false;
    static constexpr std::array<u64, 12> kBases = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (u64 b : kBases) {
        if (n % b == 0) return n == b;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (u64 b : kBases) {
        u64 x = powmod(b, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

u64 next_prime_u64(u64 n) {
    for (u64 c = n + 1; c > n; ++c) {
        if (is_prime_u64(c)) return c;
    }
    throw Error(Errc::InvalidArgument, "next_prime_u64 overflow past 2^64");
}

PrimeField::PrimeField(u64 p) : p_(p) {
    if (p > static_cast<u64>(std::numeric_limits<i64>::max()))
        throw Error(Errc::InvalidArgument, "field modulus must fit in 63 bits");
    if (!is_prime_u64(p)) throw Error(Errc::NotPrime, std::to_string(p) + " is not prime");
}

u64 PrimeField::pow(u64 a, u64 e) const noexcept { return powmod(a, e, p_); }

u64 PrimeField::inv(u64 a) const {
    if (a % p_ == 0) throw Error(Errc::InvalidArgument, "inverse of zero");
    return powmod(a, p_ - 2, p_);
}

int PrimeField::legendre(u64 a) const noexcept {
    a %= p_;
    if (a == 0) return 0;
    if (p_ == 2) return 1;
    u64 r = powmod(a, (p_ - 1) / 2, p_);
    return r == 1 ? 1 : -1;
}

int legendre_symbol(i64 a, u64 p) {
    if (p == 2) throw Error(Errc::InvalidArgument, "legendre_symbol needs an odd prime");
    PrimeField f(p);
    return f.legendre(f.reduce(a));
}

}  // namespace modcert::arith
