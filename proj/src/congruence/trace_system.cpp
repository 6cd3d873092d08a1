#include "modcert/congruence/trace_system.hpp"

#include <string>
#include <utility>

#include "modcert/arith/bigint.hpp"
#include "modcert/arith/prime_field.hpp"
#include "modcert/error.hpp"

namespace modcert::congruence {

using arith::BigInt;

bool purity_check(std::int64_t a, std::uint64_t q, int k) {
    if (!arith::is_prime_u64(q)) throw Error(Errc::NotPrime, std::to_string(q));
    if (k < 2 || k % 2 != 0) throw Error(Errc::InvalidArgument, "weight must be even and >= 2");
    BigInt lhs = arith::from_i64(a);
    lhs *= lhs;
    BigInt rhs = 4 * arith::pow(arith::from_u64(q), static_cast<unsigned long>(k - 1));
    return lhs <= rhs;
}

TraceSystem::TraceSystem(std::uint64_t conductor, int weight, Table traces)
    : TraceSystem(conductor, weight, std::move(traces), true) {}

TraceSystem TraceSystem::impure(std::uint64_t conductor, int weight, Table traces) {
    return TraceSystem(conductor, weight, std::move(traces), false);
}

TraceSystem::TraceSystem(std::uint64_t conductor, int weight, Table traces, bool check_purity)
    : conductor_(conductor), weight_(weight), traces_(std::move(traces)), pure_(check_purity) {
    if (conductor_ == 0) throw Error(Errc::InvalidArgument, "conductor must be positive");
    for (const auto& [q, a] : traces_) {
        if (!arith::is_prime_u64(q)) throw Error(Errc::NotPrime, "trace key " + std::to_string(q));
        if (conductor_ % q == 0)
            throw Error(Errc::BadReductionPrime, "trace at q=" + std::to_string(q) + " divides the conductor");
        if (check_purity && !purity_check(a, q, weight_))
            throw Error(Errc::WeilBoundViolation,
                        "a_" + std::to_string(q) + " = " + std::to_string(a) + " exceeds 2 q^((k-1)/2)");
    }
}

std::optional<std::int64_t> TraceSystem::at(std::uint64_t q) const {
    auto it = traces_.find(q);
    if (it == traces_.end()) return std::nullopt;
    return it->second;
}

}  // namespace modcert::congruence
