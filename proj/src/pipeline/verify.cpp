#include "modcert/pipeline/verify.hpp"

#include <algorithm>
#include <string>

#include "modcert/arith/prime_field.hpp"
#include "modcert/congruence/characters.hpp"
#include "modcert/congruence/reducibility.hpp"
#include "modcert/counting/fibration.hpp"
#include "modcert/counting/fixture.hpp"
#include "modcert/error.hpp"
#include "modcert/parallel.hpp"
#include "modcert/pipeline/digest.hpp"
#include "modcert/qexpansion/sturm.hpp"

namespace modcert::pipeline {

namespace {

// Past these sizes an uncapped run cannot finish; the caller must pass q_cap.
constexpr std::uint64_t kMaxUncappedRange = 10'000'000;
constexpr std::size_t kMaxAutoPrimeBits = 4096;

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
    std::filesystem::path path(p);
    return path.is_absolute() ? path : base / path;
}

std::uint64_t largest_prime_factor(std::uint64_t n) {
    std::uint64_t best = 1;
    for (std::uint64_t p = 2; p * p <= n; ++p)
        while (n % p == 0) {
            best = p;
            n /= p;
        }
    return n > 1 ? n : best;
}

FinalVerdict unmet(std::string reason) {
    FinalVerdict v;
    v.kind = FinalVerdict::Kind::PreconditionUnmet;
    v.reason = std::move(reason);
    return v;
}

json newform_to_json(const qexpansion::NewformDescriptor& f) {
    json ev = json::object();
    for (const auto& [q, a] : f.eigenvalues) ev[std::to_string(q)] = qexpansion::eigenvalue_to_json(a);
    return json{{"level", f.level},
                {"weight", f.weight},
                {"coeff_degree", f.coeff_degree},
                {"label", f.label},
                {"source", qexpansion::source_name(f.source)},
                {"eigenvalues", ev}};
}

std::string digest_inputs(const congruence::TraceSystem& T, const qexpansion::NewformDescriptor& f,
                          const VerifyOptions& o) {
    json j{{"traces", counting::trace_system_to_json(T)},
           {"newform", newform_to_json(f)},
           {"options",
            {{"residual_prime", o.residual_prime ? bigint_to_json(*o.residual_prime) : json("auto")},
             {"policy", bounds::policy_to_json(o.bound_policy)},
             {"q_cap", o.q_cap ? json(*o.q_cap) : json(nullptr)},
             {"character_scan", o.character_scan},
             {"max_character_order", o.max_character_order},
             {"bad_floor", bigint_to_json(o.bad_floor)}}}};
    return sha256_hex(j.dump());
}

}  // namespace

std::string verdict_name(PrimeVerdict v) {
    switch (v) {
        case PrimeVerdict::Equal: return "Equal";
        case PrimeVerdict::NotCongruent: return "NotCongruent";
        case PrimeVerdict::CongruenceOnly: return "CongruenceOnly";
    }
    return "?";
}

VerificationConfig config_from_json(const json& j, const std::filesystem::path& fixture_dir) {
    try {
        VerificationConfig cfg;
        cfg.fixture_dir = fixture_dir;
        const json& ts = j.at("trace_source");
        std::string tkind = ts.at("kind").get<std::string>();
        if (tkind == "trace_file")
            cfg.trace_source.kind = TraceSourceSpec::Kind::TraceFile;
        else if (tkind == "fiber_product")
            cfg.trace_source.kind = TraceSourceSpec::Kind::FiberProduct;
        else
            throw Error(Errc::SchemaMismatch, "unknown trace_source kind " + tkind);
        cfg.trace_source.path = resolve(fixture_dir, ts.at("path").get<std::string>());

        const json& ns = j.at("newform_source");
        std::string nkind = ns.at("kind").get<std::string>();
        if (nkind == "eta" || nkind == "table") {
            cfg.newform_source.kind = nkind == "eta" ? NewformSourceSpec::Kind::Eta : NewformSourceSpec::Kind::Table;
            cfg.newform_source.path = resolve(fixture_dir, ns.at("path").get<std::string>());
        } else if (nkind == "remote") {
            cfg.newform_source.kind = NewformSourceSpec::Kind::Remote;
            cfg.newform_source.label = ns.at("label").get<std::string>();
        } else {
            throw Error(Errc::SchemaMismatch, "unknown newform_source kind " + nkind);
        }

        if (j.contains("residual_prime")) {
            const json& p = j.at("residual_prime");
            if (!(p.is_string() && p.get<std::string>() == "auto")) cfg.residual_prime = bigint_from_json(p);
        }
        if (j.contains("bound_policy")) cfg.bound_policy = bounds::policy_from_json(j.at("bound_policy"));
        if (j.contains("q_cap") && !j.at("q_cap").is_null()) cfg.q_cap = j.at("q_cap").get<std::uint64_t>();
        cfg.character_scan = j.value("character_scan", true);
        cfg.max_character_order = j.value("max_character_order", 8u);
        return cfg;
    } catch (const json::exception& e) {
        throw Error(Errc::SchemaMismatch, std::string("verification config: ") + e.what());
    }
}

json config_to_json(const VerificationConfig& cfg) {
    json ts{{"kind", cfg.trace_source.kind == TraceSourceSpec::Kind::TraceFile ? "trace_file" : "fiber_product"},
            {"path", cfg.trace_source.path.string()}};
    json ns;
    switch (cfg.newform_source.kind) {
        case NewformSourceSpec::Kind::Eta: ns = {{"kind", "eta"}, {"path", cfg.newform_source.path.string()}}; break;
        case NewformSourceSpec::Kind::Table: ns = {{"kind", "table"}, {"path", cfg.newform_source.path.string()}}; break;
        case NewformSourceSpec::Kind::Remote: ns = {{"kind", "remote"}, {"label", cfg.newform_source.label}}; break;
    }
    return json{{"trace_source", ts},
                {"newform_source", ns},
                {"residual_prime", cfg.residual_prime ? bigint_to_json(*cfg.residual_prime) : json("auto")},
                {"bound_policy", bounds::policy_to_json(cfg.bound_policy)},
                {"q_cap", cfg.q_cap ? json(*cfg.q_cap) : json(nullptr)},
                {"character_scan", cfg.character_scan},
                {"max_character_order", cfg.max_character_order}};
}

SturmReport sturm_rationality_report(std::optional<std::uint64_t> verified_up_to, std::uint64_t level, int weight) {
    SturmReport r;
    r.sturm = qexpansion::sturm_bound(level, weight);
    r.verified_up_to = verified_up_to;
    r.covered = verified_up_to && *verified_up_to >= r.sturm;
    if (r.covered)
        r.annotation = "a_q(f) = a_q(X) in Z at every good prime up to the Sturm bound " + std::to_string(r.sturm) +
                       " of weight " + std::to_string(weight) + " and level " + std::to_string(level) +
                       "; coefficient field of f inferred to be Q (not re-proved)";
    return r;
}

SturmReport sturm_rationality_report(const congruence::TraceSystem& T, const qexpansion::NewformDescriptor& f,
                                     const BigInt& b_prime, const std::vector<PrimeRecord>& records) {
    std::optional<std::uint64_t> up_to;
    for (const auto& r : records) {
        if (arith::from_u64(r.q) >= b_prime && up_to) break;
        if (r.verdict != PrimeVerdict::Equal) break;
        up_to = r.q;
    }
    return sturm_rationality_report(up_to, T.conductor(), f.weight);
}

ModularityCertificate verify_traces(const congruence::TraceSystem& T, const qexpansion::NewformDescriptor& f,
                                    const VerifyOptions& o) {
    ModularityCertificate cert;
    cert.inputs_digest = digest_inputs(T, f, o);
    cert.q_cap = o.q_cap;
    cert.newform_label = f.label;
    cert.newform_source = qexpansion::source_name(f.source);
    cert.scan.enabled = o.character_scan;
    const std::uint64_t C = T.conductor();
    const int k = T.weight();

    try {
        if (!T.is_pure())
            throw Error(Errc::WeilBoundViolation, "trace system is marked impure; only the reducibility scan accepts it");
        if (C % f.level != 0)
            throw Error(Errc::LevelMismatch, "newform level " + std::to_string(f.level) +
                                                 " does not divide conductor " + std::to_string(C));
        if (f.weight != k)
            throw Error(Errc::LevelMismatch, "newform weight " + std::to_string(f.weight) +
                                                 " differs from trace weight " + std::to_string(k));

        BigInt floor = std::max(o.bad_floor, arith::from_u64(largest_prime_factor(C)));
        cert.bounds = bounds::compute_bounds(C, f.coeff_degree, o.bound_policy, floor, k);
        const auto& B = *cert.bounds;

        // primes to scan
        std::uint64_t upper;  // inclusive
        if (o.q_cap) {
            upper = *o.q_cap;
        } else {
            if (B.chebotarev_bound > kMaxUncappedRange)
                throw Error(Errc::InvalidArgument, "B' = " + B.chebotarev_bound.get_str() +
                                                       " is out of desk range; pass q_cap");
            upper = arith::to_u64(B.chebotarev_bound) - 1;
        }
        std::vector<std::uint64_t> primes;
        for (std::uint64_t q = 2; q <= upper; ++q)
            if (C % q != 0 && arith::is_prime_u64(q)) primes.push_back(q);
        const bool covers_b_prime = arith::from_u64(upper) + 1 >= B.chebotarev_bound;
        cert.effective_bound = o.q_cap ? arith::from_u64(*o.q_cap) : B.chebotarev_bound;

        // residual prime
        BigInt p;
        if (o.residual_prime) {
            p = *o.residual_prime;
        } else {
            cert.residual_prime_auto = true;
            BigInt target = 0;
            for (auto q : primes) target = std::max(target, bounds::per_prime_threshold(q, f.coeff_degree));
            if (covers_b_prime) {
                if (mpz_sizeinbase(B.modularity_bound.get_mpz_t(), 2) > kMaxAutoPrimeBits)
                    throw Error(Errc::InvalidArgument, "modularity bound has more than " +
                                                           std::to_string(kMaxAutoPrimeBits) +
                                                           " bits; pass q_cap for a desk-scale run");
                target = std::max(target, B.modularity_bound);
            }
            target = std::max(target, BigInt(k));
            p = arith::next_prime(target);
            const BigInt cz = arith::from_u64(C);
            while (mpz_divisible_p(cz.get_mpz_t(), p.get_mpz_t())) p = arith::next_prime(p);
        }
        cert.residual_prime = p;
        if (!arith::is_prime(p)) throw Error(Errc::BadResidualPrime, p.get_str() + " is not prime");
        if (mpz_divisible_p(arith::from_u64(C).get_mpz_t(), p.get_mpz_t()))
            throw Error(Errc::BadResidualPrime, p.get_str() + " divides the conductor");
        if (p <= k) throw Error(Errc::BadResidualPrime, p.get_str() + " does not exceed the weight");

        cert.mode = (p > B.modularity_bound && covers_b_prime) ? "full" : "desk-scale";

        // per-prime loop
        std::vector<std::optional<PrimeRecord>> slots(primes.size());
        parallel_for(primes.size(), o.threads, [&](std::size_t i) {
            const std::uint64_t q = primes[i];
            auto ax = T.at(q);
            if (!ax) throw Error(Errc::InvalidArgument, "no trace a_" + std::to_string(q) + "(X)");
            auto it = f.eigenvalues.find(q);
            if (it == f.eigenvalues.end())
                throw Error(Errc::InvalidArgument, "no eigenvalue a_" + std::to_string(q) + "(f)");
            const auto& alpha = it->second;
            const BigInt c = arith::from_i64(*ax);
            PrimeRecord rec{q, *ax, alpha, congruence::congruence_check(alpha, c, p), PrimeVerdict::CongruenceOnly,
                            bounds::per_prime_threshold(q, f.coeff_degree)};
            if (p > rec.threshold) {
                auto v = congruence::equality_from_congruence(alpha, c, q, p, k, f.weil_certified);
                rec.verdict = v == congruence::EqualityVerdict::Equal ? PrimeVerdict::Equal : PrimeVerdict::NotCongruent;
            }
            slots[i] = std::move(rec);
        });
        for (auto& s : slots) cert.records.push_back(std::move(*s));

        // reducibility evidence
        if (o.character_scan) {
            if (!arith::fits_u64(p) || p >= BigInt(1) << 62) {
                cert.scan.note = "scan skipped: residual prime exceeds machine width";
            } else {
                congruence::TraceSystem::Table sub;
                for (auto q : primes) sub.emplace(q, *T.at(q));
                congruence::TraceSystem scanned(C, k, std::move(sub));
                auto chars = congruence::default_character_list(C, o.max_character_order);
                auto v = congruence::reducibility_scan(scanned, arith::to_u64(p), chars, 4, o.threads);
                cert.scan.ran = true;
                cert.scan.characters_scanned = v.characters_scanned;
                cert.scan.pattern_found = v.pattern_found;
                if (v.pattern_found) {
                    cert.scan.character = chars[*v.character_index].label();
                    cert.scan.embedding_power = *v.embedding_power;
                }
                cert.scan.note = "evidence only: covers the scanned characters, not every finite-order character";
            }
        }

        cert.sturm_report = sturm_rationality_report(T, f, B.chebotarev_bound, cert.records);

        // aggregate
        auto fail = std::find_if(cert.records.begin(), cert.records.end(), [](const PrimeRecord& r) {
            return !r.congruent || r.verdict == PrimeVerdict::NotCongruent;
        });
        auto only = std::find_if(cert.records.begin(), cert.records.end(),
                                 [](const PrimeRecord& r) { return r.verdict == PrimeVerdict::CongruenceOnly; });
        cert.congruence_only = only != cert.records.end();
        if (fail != cert.records.end()) {
            cert.verdict.kind = FinalVerdict::Kind::CongruenceFails;
            cert.verdict.q = fail->q;
        } else if (cert.congruence_only) {
            cert.verdict = unmet("congruence-only: p = " + p.get_str() + " does not exceed the threshold " +
                                 only->threshold.get_str() + " at q = " + std::to_string(only->q));
        } else if (cert.scan.pattern_found) {
            cert.verdict = unmet("reducible pattern mod p for character " + cert.scan.character);
        } else {
            cert.verdict.kind = FinalVerdict::Kind::VerifiedUpTo;
            cert.verdict.bound = *cert.effective_bound;
        }
        if (cert.mode == "desk-scale")
            cert.notes.push_back("desk-scale: verified range and residual prime do not reach the full bound B");
        cert.notes.push_back("B' follows the recorded policy; no unconditional Chebotarev constant is claimed");
    } catch (const Error& e) {
        cert.verdict = unmet(e.what());
    }
    return cert;
}

ModularityCertificate run_verification(const VerificationConfig& cfg) {
    VerifyOptions o;
    o.residual_prime = cfg.residual_prime;
    o.bound_policy = cfg.bound_policy;
    o.q_cap = cfg.q_cap;
    o.character_scan = cfg.character_scan;
    o.max_character_order = cfg.max_character_order;
    o.threads = cfg.threads;

    std::optional<congruence::TraceSystem> T;
    std::optional<qexpansion::NewformDescriptor> f;
    std::optional<counting::FiberProductVariety> X;
    try {
        switch (cfg.newform_source.kind) {
            case NewformSourceSpec::Kind::Eta:
            case NewformSourceSpec::Kind::Table: {
                json j = read_json_file(cfg.newform_source.path);
                // expansion must reach the scanned range
                std::size_t prec = std::max<std::size_t>(1000, cfg.q_cap.value_or(0));
                f = qexpansion::newform_from_json(j, prec);
                break;
            }
            case NewformSourceSpec::Kind::Remote:
                f = fetch_remote_newform(cfg.newform_source.label, cfg.remote);
                break;
        }
        if (cfg.trace_source.kind == TraceSourceSpec::Kind::TraceFile) {
            T = counting::trace_system_from_json(read_json_file(cfg.trace_source.path));
        } else {
            X = counting::load_fiber_product(cfg.trace_source.path);
            std::uint64_t upper = 0;
            if (cfg.q_cap) {
                upper = *cfg.q_cap;
            } else {
                auto b = bounds::compute_bounds(X->conductor, f->coeff_degree, cfg.bound_policy,
                                                arith::from_u64(*X->bad_primes.rbegin()));
                if (b.chebotarev_bound > kMaxUncappedRange)
                    throw Error(Errc::InvalidArgument, "B' = " + b.chebotarev_bound.get_str() +
                                                           " is out of desk range; pass q_cap");
                upper = arith::to_u64(b.chebotarev_bound);
            }
            T = counting::build_trace_system(*X, upper, cfg.threads);
        }
    } catch (const Error& e) {
        ModularityCertificate cert;
        cert.verdict = unmet(e.what());
        cert.scan.enabled = cfg.character_scan;
        cert.q_cap = cfg.q_cap;
        cert.inputs_digest = sha256_hex(config_to_json(cfg).dump());
        return cert;
    }
    if (X && !X->bad_primes.empty()) o.bad_floor = arith::from_u64(*X->bad_primes.rbegin());
    return verify_traces(*T, *f, o);
}

json certificate_to_json(const ModularityCertificate& c) {
    json records = json::array();
    for (const auto& r : c.records)
        records.push_back({{"q", r.q},
                           {"a_q_X", r.trace_x},
                           {"a_q_f", qexpansion::eigenvalue_to_json(r.trace_f)},
                           {"congruent", r.congruent},
                           {"verdict", verdict_name(r.verdict)},
                           {"threshold", bigint_to_json(r.threshold)}});

    json verdict;
    switch (c.verdict.kind) {
        case FinalVerdict::Kind::VerifiedUpTo:
            verdict = {{"kind", "VerifiedUpTo"}, {"bound", bigint_to_json(c.verdict.bound)}};
            break;
        case FinalVerdict::Kind::CongruenceFails:
            verdict = {{"kind", "CongruenceFails"}, {"q", c.verdict.q}};
            break;
        case FinalVerdict::Kind::PreconditionUnmet:
            verdict = {{"kind", "PreconditionUnmet"}, {"reason", c.verdict.reason}};
            break;
    }

    json scan{{"enabled", c.scan.enabled}, {"ran", c.scan.ran}, {"note", c.scan.note}};
    if (c.scan.ran) {
        scan["characters_scanned"] = c.scan.characters_scanned;
        scan["verdict"] = c.scan.pattern_found ? "ReduciblePattern" : "NoPatternFound";
        if (c.scan.pattern_found) {
            scan["character"] = c.scan.character;
            scan["embedding_power"] = c.scan.embedding_power;
        }
    }

    json out{{"schema", 1},
             {"inputs_digest", c.inputs_digest},
             {"mode", c.mode},
             {"congruence_only", c.congruence_only},
             {"residual_prime", c.residual_prime ? bigint_to_json(*c.residual_prime) : json(nullptr)},
             {"residual_prime_auto", c.residual_prime_auto},
             {"q_cap", c.q_cap ? json(*c.q_cap) : json(nullptr)},
             {"effective_bound", c.effective_bound ? bigint_to_json(*c.effective_bound) : json(nullptr)},
             {"bounds", c.bounds ? bounds::bound_certificate_to_json(*c.bounds) : json(nullptr)},
             {"newform", {{"label", c.newform_label}, {"source", c.newform_source}}},
             {"records", records},
             {"reducibility_scan", scan},
             {"final_verdict", verdict},
             {"notes", c.notes}};
    if (c.sturm_report) {
        const auto& s = *c.sturm_report;
        json sr{{"sturm_bound", s.sturm},
                {"verified_up_to", s.verified_up_to ? json(*s.verified_up_to) : json(nullptr)},
                {"covered", s.covered}};
        if (s.annotation) sr["annotation"] = *s.annotation;
        out["sturm_rationality"] = sr;
    }
    return out;
}

std::string certificate_to_string(const ModularityCertificate& c) { return certificate_to_json(c).dump(2) + "\n"; }

}  // namespace modcert::pipeline
