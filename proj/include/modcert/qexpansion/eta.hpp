#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "modcert/arith/bigint.hpp"

namespace modcert::qexpansion {

using arith::BigInt;

struct EtaFactor {
    std::uint64_t scale;  // m in eta(m tau)
    int exponent;         // r
};

/// prod eta(m tau)^r at level N.
class EtaQuotient {
public:
    EtaQuotient(std::vector<EtaFactor> factors, std::uint64_t level);

    const std::vector<EtaFactor>& factors() const noexcept { return factors_; }
    std::uint64_t level() const noexcept { return level_; }
    int weight() const noexcept { return weight_; }
    /// sum(m r) / 24: the q-order of the leading term.
    std::uint64_t leading_exponent() const noexcept { return lead_; }
    std::string to_string() const;

private:
    std::vector<EtaFactor> factors_;
    std::uint64_t level_;
    int weight_;
    std::uint64_t lead_;
};

inline constexpr std::size_t kDefaultPrecisionCap = 100000;

/// Exact coefficients c_0..c_precision (index = power of q).
std::vector<BigInt> eta_expand(const EtaQuotient& eta, std::size_t precision,
                               std::size_t hard_cap = kDefaultPrecisionCap);

struct HeckeViolation {
    std::uint64_t n;
    std::string relation;
};

struct HeckeCheck {
    bool ok = true;
    std::optional<HeckeViolation> first_violation;
};

/// Checks c_mn = c_m c_n for coprime m, n and
/// c_{p^(r+1)} = c_p c_{p^r} - p^(k-1) c_{p^(r-1)} for every index up to the
/// end of `coeffs` (indexed by n; coeffs[0] is ignored). Primes dividing
/// `level` use c_{p^(r+1)} = c_p c_{p^r}. The first violation is the smallest
/// failing n. Throws NotNormalized unless c_1 = 1.
HeckeCheck hecke_selfcheck(const std::vector<BigInt>& coeffs, int weight, std::uint64_t level = 1);

}  // namespace modcert::qexpansion
