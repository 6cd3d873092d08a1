#pragma once

#include <cstdint>

#include "modcert/arith/bigint.hpp"

namespace modcert::qexpansion {

/// Index of Gamma_0(N) in SL_2(Z): N * prod_{p | N} (1 + 1/p).
std::uint64_t gamma0_index(std::uint64_t level);

/// ceil(k * [SL_2(Z) : Gamma_0(N)] / 12).
std::uint64_t sturm_bound(std::uint64_t level, int weight);

}  // namespace modcert::qexpansion
