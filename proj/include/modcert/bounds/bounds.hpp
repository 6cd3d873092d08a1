#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "modcert/arith/bigint.hpp"
#include "modcert/json_util.hpp"

namespace modcert::bounds {

using arith::BigInt;
using arith::Rational;

/// How the effective Chebotarev bound B' is chosen from the conductor.
///
///  - sturm: B' = max(sturm, next prime after sturm)
///  - power: B' = ceil(c0 * C^e0)
///  - fixed: B' = fixed_value
///
/// None of these is a proven Chebotarev constant; certificates carry the
/// policy so a reader knows what "verified up to B'" was measured against.
struct BoundPolicy {
    enum class Mode { Sturm, Power, Fixed };

    Mode mode = Mode::Power;
    std::optional<Rational> c0;
    std::optional<Rational> e0;
    std::optional<BigInt> fixed_value;

    static BoundPolicy sturm();
    static BoundPolicy power(Rational c0, Rational e0);
    static BoundPolicy fixed(BigInt value);
    /// Power mode with c0 = 1, e0 = 2.
    static BoundPolicy default_policy();

    /// "sturm", "fixed:N", "power:C0:E0" (rationals like 3/2 allowed).
    static BoundPolicy parse(const std::string& text);

    /// Throws InvalidPolicy when the active mode lacks its parameters.
    void validate() const;
    std::string to_string() const;
};

json policy_to_json(const BoundPolicy& p);
BoundPolicy policy_from_json(const json& j);

BigInt chebotarev_bound(std::uint64_t conductor, const BoundPolicy& policy, std::uint64_t sturm);

/// Smallest integer >= (4 q^((k-1)/2))^d, i.e. ceil(sqrt(16^d q^((k-1)d))).
BigInt weil_product_threshold(const BigInt& q, unsigned long d, int k);

/// Smallest integer >= (4 B'^(3/2))^d, raised above max(bad_floor, 4) if needed.
BigInt modularity_bound(const BigInt& b_prime, unsigned long d, const BigInt& bad_floor);

/// Smallest integer >= (4 q sqrt(q))^d for a prime q.
BigInt per_prime_threshold(std::uint64_t q, unsigned long d);

struct BoundCertificate {
    std::uint64_t conductor = 1;
    unsigned long coeff_degree = 1;
    std::uint64_t sturm = 1;
    BigInt chebotarev_bound;
    BigInt modularity_bound;
    BoundPolicy policy;
    BigInt bad_reduction_floor;
    bool sturm_compliant = true;
};

/// Full ladder for conductor C and degree d. With `sturm_compliant`, B' is
/// raised to at least the Sturm bound of weight `weight` at level C.
BoundCertificate compute_bounds(std::uint64_t conductor, unsigned long coeff_degree, const BoundPolicy& policy,
                                const BigInt& bad_floor, int weight = 4, bool sturm_compliant = true);

json bound_certificate_to_json(const BoundCertificate& c);

}  // namespace modcert::bounds
