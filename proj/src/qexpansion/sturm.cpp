#include "modcert/qexpansion/sturm.hpp"

#include "modcert/error.hpp"

namespace modcert::qexpansion {

std::uint64_t gamma0_index(std::uint64_t level) {
    if (level == 0) throw Error(Errc::InvalidArgument, "level must be positive");
    arith::Rational idx(arith::from_u64(level));
    std::uint64_t n = level;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        idx *= arith::Rational(arith::from_u64(p + 1), arith::from_u64(p));
        while (n % p == 0) n /= p;
    }
    if (n > 1) idx *= arith::Rational(arith::from_u64(n + 1), arith::from_u64(n));
    idx.canonicalize();
    return arith::to_u64(arith::ceil(idx));
}

std::uint64_t sturm_bound(std::uint64_t level, int weight) {
    if (weight < 2 || weight % 2 != 0) throw Error(Errc::InvalidArgument, "weight must be even and >= 2");
    arith::Rational b(arith::from_u64(static_cast<std::uint64_t>(weight)) * arith::from_u64(gamma0_index(level)),
                      12);
    b.canonicalize();
    return arith::to_u64(arith::ceil(b));
}

}  // namespace modcert::qexpansion
