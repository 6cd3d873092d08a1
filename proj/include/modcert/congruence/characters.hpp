#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace modcert::congruence {

/// A Dirichlet character of modulus M and order n, stored as exponents:
/// epsilon(a) = zeta_n^values[a mod M] for a coprime to M.
class DirichletCharacterTable {
public:
    DirichletCharacterTable(std::uint64_t modulus, std::uint32_t order, std::map<std::uint64_t, std::uint32_t> values,
                            std::string label = {});

    std::uint64_t modulus() const noexcept { return modulus_; }
    std::uint32_t order() const noexcept { return order_; }
    const std::map<std::uint64_t, std::uint32_t>& values() const noexcept { return values_; }
    const std::string& label() const noexcept { return label_; }
    bool is_trivial() const noexcept { return order_ == 1; }

    /// Exponent of epsilon(a); nullopt when gcd(a, M) > 1.
    std::optional<std::uint32_t> exponent(std::uint64_t a) const;

private:
    std::uint64_t modulus_;
    std::uint32_t order_;
    std::map<std::uint64_t, std::uint32_t> values_;
    std::string label_;
};

/// All characters mod M of order <= max_order, optionally only the primitive
/// ones, in a fixed order (trivial character first).
std::vector<DirichletCharacterTable> characters_mod(std::uint64_t modulus, std::uint32_t max_order,
                                                    bool primitive_only);

/// Primitive characters of every conductor M | C with order <= max_order,
/// ordered by M. Each character mod C appears once, through its primitive
/// inducing character.
std::vector<DirichletCharacterTable> default_character_list(std::uint64_t conductor, std::uint32_t max_order = 8);

}  // namespace modcert::congruence
