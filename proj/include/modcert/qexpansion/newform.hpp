#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "modcert/congruence/algebraic_integer.hpp"
#include "modcert/json_util.hpp"
#include "modcert/qexpansion/eta.hpp"

namespace modcert::qexpansion {

enum class NewformSource { Eta, Table, Remote };
std::string source_name(NewformSource s);

/// A candidate Hecke eigenform: level, weight, a bound d on the degree of its
/// coefficient field, and eigenvalues a_q at primes.
struct NewformDescriptor {
    std::uint64_t level = 1;
    int weight = 4;
    unsigned long coeff_degree = 1;
    std::map<std::uint64_t, congruence::AlgebraicInteger> eigenvalues;
    NewformSource source = NewformSource::Table;
    std::string label;
    /// Free-form origin note, e.g. the SHA-256 of a cached remote response.
    std::string provenance;
    /// Fixture asserts the Weil bound on conjugates that Fujiwara can't prove.
    bool weil_certified = false;

    /// Rejects d below an eigenvalue's degree and any eigenvalue whose
    /// conjugates are not shown to satisfy |a_q^sigma| <= 2 q^((k-1)/2).
    void validate() const;
};

/// Expands the eta quotient to `precision`, runs the Hecke self-check, and
/// reads a_q = c_q at every prime q <= precision. Throws InvalidArgument if
/// the expansion is not a normalized eigenform.
NewformDescriptor newform_from_eta(const EtaQuotient& eta, unsigned long coeff_degree, std::string label,
                                   std::size_t precision);

/// Fixture JSON: `level`, `weight`, `coeff_degree`, and either `eta_factors`
/// ([[m, r], ...]) or `eigenvalues` ({"q": int | [min-poly coeffs, low first]}).
NewformDescriptor newform_from_json(const json& j, std::size_t eta_precision = 1000);
NewformDescriptor load_newform(const std::filesystem::path& path, std::size_t eta_precision = 1000);

EtaQuotient eta_from_json(const json& j);
json eigenvalue_to_json(const congruence::AlgebraicInteger& a);

}  // namespace modcert::qexpansion
