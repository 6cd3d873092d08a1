#pragma once

#include <cstdint>
#include <vector>

#include "modcert/arith/bigint.hpp"
#include "modcert/arith/prime_field.hpp"

namespace modcert::congruence {

/// F_{p^f} = F_p[x] / (g) for a monic irreducible g of degree f, chosen as the
/// lexicographically first one. Elements are coefficient vectors of length f.
class ExtensionField {
public:
    using Elem = std::vector<std::uint64_t>;

    ExtensionField(std::uint64_t p, unsigned degree);

    const arith::PrimeField& base() const noexcept { return base_; }
    unsigned degree() const noexcept { return degree_; }
    /// p^f
    const arith::BigInt& order() const noexcept { return order_; }

    Elem embed(std::uint64_t a) const;
    Elem one() const { return embed(1); }
    Elem add(const Elem& a, const Elem& b) const;
    Elem mul(const Elem& a, const Elem& b) const;
    Elem pow(Elem a, const arith::BigInt& e) const;
    Elem scale(const Elem& a, std::uint64_t s) const;

private:
    arith::PrimeField base_;
    unsigned degree_;
    std::vector<std::uint64_t> modulus_;  // low first, monic, length degree + 1
    arith::BigInt order_;
};

/// Primitive n-th roots of unity in the smallest F_{p^f} with n | p^f - 1,
/// f <= max_degree. Throws CharacterEmbeddingUnavailable when none exists.
struct RootsOfUnity {
    ExtensionField field;
    std::vector<ExtensionField::Elem> primitive_roots;  // zeta^j, gcd(j, n) = 1
};
RootsOfUnity roots_of_unity(std::uint64_t p, std::uint32_t n, unsigned max_degree = 4);

}  // namespace modcert::congruence
