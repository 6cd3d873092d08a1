#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "modcert/congruence/characters.hpp"
#include "modcert/congruence/trace_system.hpp"

namespace modcert::congruence {

struct ReducibilityVerdict {
    bool pattern_found = false;
    /// Index into the scanned list, with the exponent j of the root of unity
    /// zeta^j used as the embedding of zeta_n.
    std::optional<std::size_t> character_index;
    std::optional<std::uint32_t> embedding_power;
    std::size_t characters_scanned = 0;
};

/// Looks for epsilon with a_q = epsilon(q) + epsilon(q)^{-1} q^(k-1) mod p at
/// every prime of T. A hit is evidence of residual reducibility at p, not a
/// proof either way. Characters are tried in list order, embeddings in
/// increasing j; the first hit is reported.
ReducibilityVerdict reducibility_scan(const TraceSystem& T, std::uint64_t p,
                                      const std::vector<DirichletCharacterTable>& chars, unsigned max_degree = 4,
                                      unsigned threads = 1);

}  // namespace modcert::congruence
