#pragma once

#include <cstdint>
#include <map>
#include <optional>

namespace modcert::congruence {

/// Frobenius traces of a compatible family at good primes.
///
/// Invariants checked on construction: every key is a prime not dividing the
/// conductor, and every trace satisfies a_q^2 <= 4 q^(k-1).
class TraceSystem {
public:
    using Table = std::map<std::uint64_t, std::int64_t>;

    TraceSystem(std::uint64_t conductor, int weight, Table traces);

    /// Skips the Weil check. For synthetic systems such as Eisenstein traces
    /// 1 + q^(k-1), which only the reducibility scan accepts.
    static TraceSystem impure(std::uint64_t conductor, int weight, Table traces);

    std::uint64_t conductor() const noexcept { return conductor_; }
    int weight() const noexcept { return weight_; }
    const Table& traces() const noexcept { return traces_; }
    std::optional<std::int64_t> at(std::uint64_t q) const;
    bool is_pure() const noexcept { return pure_; }

private:
    std::uint64_t conductor_;
    int weight_;
    Table traces_;
    bool pure_ = true;

    TraceSystem(std::uint64_t conductor, int weight, Table traces, bool check_purity);
};

/// True iff a^2 <= 4 q^(k-1), i.e. both roots of x^2 - a x + q^(k-1) have
/// absolute value q^((k-1)/2).
bool purity_check(std::int64_t a, std::uint64_t q, int k);

}  // namespace modcert::congruence
