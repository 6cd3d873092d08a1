#include "modcert/qexpansion/newform.hpp"

#include <utility>

#include "modcert/arith/prime_field.hpp"
#include "modcert/error.hpp"

namespace modcert::qexpansion {

std::string source_name(NewformSource s) {
    switch (s) {
        case NewformSource::Eta: return "eta";
        case NewformSource::Table: return "table";
        case NewformSource::Remote: return "remote";
    }
    return "?";
}

void NewformDescriptor::validate() const {
    if (level == 0) throw Error(Errc::InvalidArgument, "newform level must be positive");
    if (weight < 2 || weight % 2 != 0) throw Error(Errc::InvalidArgument, "newform weight must be even and >= 2");
    if (coeff_degree < 1) throw Error(Errc::InvalidArgument, "coeff_degree must be >= 1");
    for (const auto& [q, a] : eigenvalues) {
        if (!arith::is_prime_u64(q)) throw Error(Errc::NotPrime, "eigenvalue key " + std::to_string(q));
        if (a.degree() > coeff_degree)
            throw Error(Errc::InvalidArgument, "a_" + std::to_string(q) + " has degree " +
                                                   std::to_string(a.degree()) + " > coeff_degree " +
                                                   std::to_string(coeff_degree));
        if (level % q == 0) continue;
        bool ok = congruence::conjugates_within_weil_bound(a, q, weight);
        if (!ok && !(weil_certified && a.degree() > 1))
            throw Error(Errc::WeilBoundViolation, "a_" + std::to_string(q) + " of '" + label + "'");
    }
}

NewformDescriptor newform_from_eta(const EtaQuotient& eta, unsigned long coeff_degree, std::string label,
                                   std::size_t precision) {
    auto c = eta_expand(eta, precision);
    HeckeCheck hc = hecke_selfcheck(c, eta.weight(), eta.level());
    if (!hc.ok)
        throw Error(Errc::InvalidArgument, eta.to_string() + " is not a Hecke eigenform: " +
                                               hc.first_violation->relation);
    NewformDescriptor nf;
    nf.level = eta.level();
    nf.weight = eta.weight();
    nf.coeff_degree = coeff_degree;
    nf.source = NewformSource::Eta;
    nf.label = std::move(label);
    nf.provenance = eta.to_string() + " to precision " + std::to_string(precision);
    for (std::uint64_t q = 2; q <= precision; ++q)
        if (arith::is_prime_u64(q)) nf.eigenvalues.emplace(q, congruence::AlgebraicInteger::rational(c[q]));
    nf.validate();
    return nf;
}

EtaQuotient eta_from_json(const json& j) {
    std::vector<EtaFactor> factors;
    for (const auto& f : j.at("eta_factors")) {
        if (!f.is_array() || f.size() != 2) throw Error(Errc::SchemaMismatch, "eta factor must be [m, r]");
        factors.push_back({f.at(0).get<std::uint64_t>(), f.at(1).get<int>()});
    }
    return EtaQuotient(std::move(factors), j.at("level").get<std::uint64_t>());
}

json eigenvalue_to_json(const congruence::AlgebraicInteger& a) {
    if (a.rational_value()) return bigint_to_json(*a.rational_value());
    return poly_to_json(a.min_poly());
}

NewformDescriptor newform_from_json(const json& j, std::size_t eta_precision) {
    try {
        std::string label = j.value("source_label", j.value("label", std::string()));
        unsigned long d = j.value("coeff_degree", 1ul);
        if (j.contains("eta_factors")) {
            EtaQuotient eta = eta_from_json(j);
            if (j.contains("weight") && j.at("weight").get<int>() != eta.weight())
                throw Error(Errc::SchemaMismatch, "declared weight disagrees with eta exponents");
            std::size_t prec = std::max<std::size_t>(eta_precision, j.value("precision", std::size_t{0}));
            return newform_from_eta(eta, d, label, prec);
        }
        NewformDescriptor nf;
        nf.level = j.at("level").get<std::uint64_t>();
        nf.weight = j.value("weight", 4);
        nf.coeff_degree = d;
        nf.source = NewformSource::Table;
        nf.label = label;
        nf.weil_certified = j.value("weil_certified", false);
        nf.provenance = "eigenvalue table";
        for (const auto& [key, value] : j.at("eigenvalues").items()) {
            std::uint64_t q = std::stoull(key);
            if (value.is_array())
                nf.eigenvalues.emplace(q, congruence::AlgebraicInteger(poly_from_json(value)));
            else
                nf.eigenvalues.emplace(q, congruence::AlgebraicInteger::rational(bigint_from_json(value)));
        }
        nf.validate();
        return nf;
    } catch (const json::exception& e) {
        throw Error(Errc::SchemaMismatch, std::string("newform fixture: ") + e.what());
    } catch (const std::invalid_argument&) {
        throw Error(Errc::SchemaMismatch, "newform fixture: non-numeric eigenvalue key");
    }
}

NewformDescriptor load_newform(const std::filesystem::path& path, std::size_t eta_precision) {
    return newform_from_json(read_json_file(path), eta_precision);
}

}  // namespace modcert::qexpansion
