#include "modcert/bounds/bounds.hpp"

#include <algorithm>
#include <vector>

#include "modcert/arith/prime_field.hpp"
#include "modcert/error.hpp"
#include "modcert/qexpansion/sturm.hpp"

namespace modcert::bounds {

namespace {

Rational parse_rational(const std::string& s) {
    Rational r;
    if (s.empty() || r.set_str(s, 10) != 0) throw Error(Errc::InvalidPolicy, "bad rational '" + s + "'");
    r.canonicalize();
    return r;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        std::size_t pos = s.find(sep, start);
        out.push_back(s.substr(start, pos - start));
        if (pos == std::string::npos) break;
        start = pos + 1;
    }
    return out;
}

std::string mode_name(BoundPolicy::Mode m) {
    switch (m) {
        case BoundPolicy::Mode::Sturm: return "sturm";
        case BoundPolicy::Mode::Power: return "power";
        case BoundPolicy::Mode::Fixed: return "fixed";
    }
    return "?";
}

}  // namespace

BoundPolicy BoundPolicy::sturm() { return BoundPolicy{Mode::Sturm, std::nullopt, std::nullopt, std::nullopt}; }

BoundPolicy BoundPolicy::power(Rational c0, Rational e0) {
    BoundPolicy p{Mode::Power, std::move(c0), std::move(e0), std::nullopt};
    p.validate();
    return p;
}

BoundPolicy BoundPolicy::fixed(BigInt value) {
    BoundPolicy p{Mode::Fixed, std::nullopt, std::nullopt, std::move(value)};
    p.validate();
    return p;
}

BoundPolicy BoundPolicy::default_policy() { return power(Rational(1), Rational(2)); }

BoundPolicy BoundPolicy::parse(const std::string& text) {
    auto parts = split(text, ':');
    BoundPolicy p;
    if (parts[0] == "sturm" && parts.size() == 1) {
        p = sturm();
    } else if (parts[0] == "fixed" && parts.size() == 2) {
        BigInt v;
        if (v.set_str(parts[1], 10) != 0) throw Error(Errc::InvalidPolicy, "fixed value '" + parts[1] + "'");
        p = BoundPolicy{Mode::Fixed, std::nullopt, std::nullopt, v};
    } else if (parts[0] == "power" && parts.size() == 3) {
        p = BoundPolicy{Mode::Power, parse_rational(parts[1]), parse_rational(parts[2]), std::nullopt};
    } else {
        throw Error(Errc::InvalidPolicy, "unrecognized policy '" + text + "'");
    }
    p.validate();
    return p;
}

void BoundPolicy::validate() const {
    switch (mode) {
        case Mode::Sturm:
            break;
        case Mode::Power:
            if (!c0 || !e0) throw Error(Errc::InvalidPolicy, "power mode needs c0 and e0");
            if (*c0 <= 0 || *e0 <= 0) throw Error(Errc::InvalidPolicy, "power mode needs positive c0 and e0");
            break;
        case Mode::Fixed:
            if (!fixed_value) throw Error(Errc::InvalidPolicy, "fixed mode needs a value");
            if (*fixed_value <= 0) throw Error(Errc::InvalidPolicy, "fixed value must be positive");
            break;
    }
}

std::string BoundPolicy::to_string() const {
    switch (mode) {
        case Mode::Sturm: return "sturm";
        case Mode::Fixed: return "fixed:" + (fixed_value ? fixed_value->get_str() : std::string("?"));
        case Mode::Power:
            return "power:" + (c0 ? c0->get_str() : std::string("?")) + ":" + (e0 ? e0->get_str() : std::string("?"));
    }
    return "?";
}

json policy_to_json(const BoundPolicy& p) {
    json j{{"mode", mode_name(p.mode)}};
    if (p.c0) j["c0"] = p.c0->get_str();
    if (p.e0) j["e0"] = p.e0->get_str();
    if (p.fixed_value) j["fixed_value"] = bigint_to_json(*p.fixed_value);
    return j;
}

BoundPolicy policy_from_json(const json& j) {
    if (j.is_string()) return BoundPolicy::parse(j.get<std::string>());
    std::string mode = j.at("mode").get<std::string>();
    auto rat = [&](const char* key) -> std::optional<Rational> {
        if (!j.contains(key)) return std::nullopt;
        const auto& v = j.at(key);
        if (v.is_number_integer()) return Rational(v.get<long>());
        return parse_rational(v.get<std::string>());
    };
    BoundPolicy p;
    if (mode == "sturm")
        p.mode = BoundPolicy::Mode::Sturm;
    else if (mode == "power")
        p.mode = BoundPolicy::Mode::Power;
    else if (mode == "fixed")
        p.mode = BoundPolicy::Mode::Fixed;
    else
        throw Error(Errc::InvalidPolicy, "unknown mode " + mode);
    p.c0 = rat("c0");
    p.e0 = rat("e0");
    if (j.contains("fixed_value")) p.fixed_value = bigint_from_json(j.at("fixed_value"));
    p.validate();
    return p;
}

BigInt chebotarev_bound(std::uint64_t conductor, const BoundPolicy& policy, std::uint64_t sturm) {
    if (conductor == 0) throw Error(Errc::InvalidArgument, "conductor must be positive");
    policy.validate();
    switch (policy.mode) {
        case BoundPolicy::Mode::Sturm:
            return std::max(arith::from_u64(sturm), arith::next_prime(arith::from_u64(sturm)));
        case BoundPolicy::Mode::Fixed:
            return *policy.fixed_value;
        case BoundPolicy::Mode::Power: {
            // ceil(u/v * C^(a/b)): smallest n with (n v)^b >= C^a u^b.
            const Rational& c0 = *policy.c0;
            const Rational& e0 = *policy.e0;
            BigInt a = e0.get_num(), b = e0.get_den();
            BigInt u = c0.get_num(), v = c0.get_den();
            unsigned long ai = arith::to_u64(a), bi = arith::to_u64(b);
            BigInt target = arith::pow(arith::from_u64(conductor), ai) * arith::pow(u, bi);
            BigInt m = arith::iroot_ceil(target, bi);
            BigInt n;
            mpz_cdiv_q(n.get_mpz_t(), m.get_mpz_t(), v.get_mpz_t());
            return std::max(n, BigInt(1));
        }
    }
    throw Error(Errc::InvalidPolicy, "unreachable");
}

BigInt weil_product_threshold(const BigInt& q, unsigned long d, int k) {
    if (q < 2 || d < 1 || k < 2) throw Error(Errc::InvalidArgument, "weil_product_threshold domain");
    BigInt radicand = arith::pow(BigInt(16), d) * arith::pow(q, static_cast<unsigned long>(k - 1) * d);
    return arith::isqrt_ceil(radicand);
}

BigInt modularity_bound(const BigInt& b_prime, unsigned long d, const BigInt& bad_floor) {
    if (b_prime < 2 || d < 1) throw Error(Errc::InvalidArgument, "modularity_bound needs B' >= 2 and d >= 1");
    BigInt b = weil_product_threshold(b_prime, d, 4);
    BigInt floor = std::max(bad_floor, BigInt(4));
    if (b <= floor) b = floor + 1;
    return b;
}

BigInt per_prime_threshold(std::uint64_t q, unsigned long d) {
    if (!arith::is_prime_u64(q)) throw Error(Errc::NotPrime, "per_prime_threshold q=" + std::to_string(q));
    return weil_product_threshold(arith::from_u64(q), d, 4);
}

BoundCertificate compute_bounds(std::uint64_t conductor, unsigned long coeff_degree, const BoundPolicy& policy,
                                const BigInt& bad_floor, int weight, bool sturm_compliant) {
    if (coeff_degree < 1) throw Error(Errc::InvalidArgument, "coefficient degree must be >= 1");
    BoundCertificate c;
    c.conductor = conductor;
    c.coeff_degree = coeff_degree;
    c.sturm = qexpansion::sturm_bound(conductor, weight);
    c.policy = policy;
    c.bad_reduction_floor = bad_floor;
    c.sturm_compliant = sturm_compliant;
    c.chebotarev_bound = chebotarev_bound(conductor, policy, c.sturm);
    if (sturm_compliant) c.chebotarev_bound = std::max(c.chebotarev_bound, arith::from_u64(c.sturm));
    c.chebotarev_bound = std::max(c.chebotarev_bound, BigInt(2));
    c.modularity_bound = modularity_bound(c.chebotarev_bound, coeff_degree, bad_floor);
    return c;
}

json bound_certificate_to_json(const BoundCertificate& c) {
    return json{{"conductor", c.conductor},
                {"coeff_degree", c.coeff_degree},
                {"sturm", c.sturm},
                {"chebotarev_bound", bigint_to_json(c.chebotarev_bound)},
                {"modularity_bound", bigint_to_json(c.modularity_bound)},
                {"policy", policy_to_json(c.policy)},
                {"bad_reduction_floor", bigint_to_json(c.bad_reduction_floor)},
                {"sturm_compliant", c.sturm_compliant}};
}

}  // namespace modcert::bounds
