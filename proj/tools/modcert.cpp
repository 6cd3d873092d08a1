#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "modcert/bounds/bounds.hpp"
#include "modcert/congruence/characters.hpp"
#include "modcert/congruence/reducibility.hpp"
#include "modcert/counting/fixture.hpp"
#include "modcert/error.hpp"
#include "modcert/json_util.hpp"
#include "modcert/pipeline/verify.hpp"
#include "modcert/qexpansion/newform.hpp"

using namespace modcert;

namespace {

struct Common {
    std::string fixture_dir = ".";
    std::string cache_dir;
    std::optional<std::uint64_t> qcap;
    std::string policy;
    bool offline = false;
    bool online = false;
    std::string output;
    unsigned threads = 1;
};

void emit(const Common& c, const std::string& text) {
    if (c.output.empty())
        std::cout << text;
    else
        write_text_file(c.output, text);
}

std::filesystem::path under_fixtures(const Common& c, const std::string& p) {
    std::filesystem::path path(p);
    if (path.is_absolute() || std::filesystem::exists(path)) return path;
    return std::filesystem::path(c.fixture_dir) / path;
}

std::vector<qexpansion::EtaFactor> parse_eta_spec(const std::string& spec) {
    // "2:4,4:4" -> eta(2t)^4 eta(4t)^4
    std::vector<qexpansion::EtaFactor> out;
    std::size_t start = 0;
    while (start < spec.size()) {
        std::size_t comma = spec.find(',', start);
        std::string item = spec.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        std::size_t colon = item.find(':');
        if (colon == std::string::npos) throw Error(Errc::InvalidArgument, "eta factor '" + item + "' needs m:r");
        out.push_back({std::stoull(item.substr(0, colon)), std::stoi(item.substr(colon + 1))});
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"modcert: Frobenius traces, bound ladders and modularity certificates"};
    app.require_subcommand(1);
    app.fallthrough();

    Common common;
    if (const char* env = std::getenv("MODCERT_FIXTURE_DIR")) common.fixture_dir = env;
    if (const char* env = std::getenv("MODCERT_CACHE_DIR")) common.cache_dir = env;
    app.add_option("--fixture-dir", common.fixture_dir, "Directory that relative fixture paths resolve against");
    app.add_option("--cache-dir", common.cache_dir, "Remote response cache (env MODCERT_CACHE_DIR)");
    app.add_option("--qcap", common.qcap, "Largest prime q to scan (desk-scale override of B')");
    app.add_option("--policy", common.policy, "Chebotarev bound policy: sturm | power:C0:E0 | fixed:N");
    app.add_flag("--offline", common.offline, "Never open a socket; use the cache only");
    app.add_flag("--online", common.online, "Allow remote fetches for uncached labels");
    app.add_option("--output,-o", common.output, "Write the result here instead of stdout");
    app.add_option("--threads", common.threads, "Worker threads (0 = all cores)");

    // count
    auto* count = app.add_subcommand("count", "Fiber-product fixture -> trace file");
    std::string count_fixture;
    std::uint64_t qmax = 200;
    count->add_option("fixture", count_fixture, "Fibration fixture JSON")->required();
    count->add_option("--qmax", qmax, "Largest prime to count");

    // qexp
    auto* qexp = app.add_subcommand("qexp", "Eta quotient -> coefficient file");
    std::string qexp_fixture, eta_spec;
    std::uint64_t level = 0;
    std::size_t precision = 100;
    qexp->add_option("--fixture", qexp_fixture, "Newform fixture with eta_factors");
    qexp->add_option("--eta", eta_spec, "Factors as m:r,m:r (e.g. 2:4,4:4)");
    qexp->add_option("--level", level, "Level, with --eta");
    qexp->add_option("--precision", precision, "Number of coefficients");

    // bounds
    auto* bnd = app.add_subcommand("bounds", "Conductor, degree, policy -> bound certificate");
    std::uint64_t conductor = 0;
    unsigned long degree = 1;
    std::string bad_floor = "0";
    int weight = 4;
    bnd->add_option("--conductor,-C", conductor, "Conductor C")->required();
    bnd->add_option("--degree,-d", degree, "Coefficient-field degree bound d");
    bnd->add_option("--bad-floor", bad_floor, "Largest bad prime (B must exceed it)");
    bnd->add_option("--weight", weight, "Weight for the Sturm bound");

    // verify
    auto* ver = app.add_subcommand("verify", "Full pipeline -> modularity certificate");
    std::string config_path, prime_override, remote_url;
    ver->add_option("config", config_path, "Verification config JSON")->required();
    ver->add_option("--prime,-p", prime_override, "Residual prime (integer or auto)");
    ver->add_option("--remote-url", remote_url, "Base URL of the modular forms database");

    // scan-reducible
    auto* scan = app.add_subcommand("scan-reducible", "Trace file, p -> reducibility scan verdict");
    std::string traces_path;
    std::uint64_t scan_prime = 0;
    std::uint32_t max_order = 8;
    scan->add_option("traces", traces_path, "Trace file JSON")->required();
    scan->add_option("--prime,-p", scan_prime, "Residual prime")->required();
    scan->add_option("--max-order", max_order, "Largest character order scanned");

    CLI11_PARSE(app, argc, argv);
    if (common.cache_dir.empty()) common.cache_dir = (std::filesystem::path(common.fixture_dir) / "cache").string();

    try {
        if (*count) {
            auto X = counting::load_fiber_product(under_fixtures(common, count_fixture));
            auto T = counting::build_trace_system(X, common.qcap.value_or(qmax), common.threads);
            emit(common, counting::trace_system_to_json(T).dump(2) + "\n");
            return 0;
        }
        if (*qexp) {
            std::optional<qexpansion::EtaQuotient> eta;
            if (!qexp_fixture.empty())
                eta = qexpansion::eta_from_json(read_json_file(under_fixtures(common, qexp_fixture)));
            else if (!eta_spec.empty() && level > 0)
                eta.emplace(parse_eta_spec(eta_spec), level);
            else
                throw Error(Errc::InvalidArgument, "qexp needs --fixture or --eta with --level");
            auto c = qexpansion::eta_expand(*eta, precision);
            json coeffs = json::array();
            for (std::size_t n = 1; n <= precision; ++n) coeffs.push_back(bigint_to_json(c[n]));
            json factors = json::array();
            for (const auto& f : eta->factors()) factors.push_back({f.scale, f.exponent});
            json out{{"level", eta->level()}, {"weight", eta->weight()}, {"eta_factors", factors},
                     {"precision", precision}, {"coefficients", coeffs}};
            if (c.size() > 1 && c[1] == 1) {
                auto hc = qexpansion::hecke_selfcheck(c, eta->weight(), eta->level());
                out["hecke"] = {{"ok", hc.ok}};
                if (!hc.ok) out["hecke"]["first_violation"] = {{"n", hc.first_violation->n},
                                                               {"relation", hc.first_violation->relation}};
            }
            emit(common, out.dump(2) + "\n");
            return 0;
        }
        if (*bnd) {
            auto policy = common.policy.empty() ? bounds::BoundPolicy::default_policy()
                                                : bounds::BoundPolicy::parse(common.policy);
            arith::BigInt floor(bad_floor);
            auto cert = bounds::compute_bounds(conductor, degree, policy, floor, weight);
            emit(common, bounds::bound_certificate_to_json(cert).dump(2) + "\n");
            return 0;
        }
        if (*ver) {
            auto cfg = pipeline::config_from_json(read_json_file(under_fixtures(common, config_path)),
                                                  common.fixture_dir);
            if (common.qcap) cfg.q_cap = common.qcap;
            if (!common.policy.empty()) cfg.bound_policy = bounds::BoundPolicy::parse(common.policy);
            if (!prime_override.empty())
                cfg.residual_prime = prime_override == "auto" ? std::nullopt
                                                              : std::optional<arith::BigInt>(arith::BigInt(prime_override));
            cfg.remote.cache_dir = common.cache_dir;
            cfg.remote.offline = !common.online || common.offline;
            if (!remote_url.empty()) cfg.remote.base_url = remote_url;
            cfg.threads = common.threads;
            auto cert = pipeline::run_verification(cfg);
            emit(common, pipeline::certificate_to_string(cert));
            return cert.verdict.kind == pipeline::FinalVerdict::Kind::VerifiedUpTo ? 0 : 1;
        }
        if (*scan) {
            auto T = counting::trace_system_from_json(read_json_file(under_fixtures(common, traces_path)));
            auto chars = congruence::default_character_list(T.conductor(), max_order);
            auto v = congruence::reducibility_scan(T, scan_prime, chars, 4, common.threads);
            json out{{"prime", scan_prime},
                     {"characters_scanned", v.characters_scanned},
                     {"verdict", v.pattern_found ? "ReduciblePattern" : "NoPatternFound"}};
            if (v.pattern_found) {
                out["character"] = chars[*v.character_index].label();
                out["embedding_power"] = *v.embedding_power;
            }
            emit(common, out.dump(2) + "\n");
            return 0;
        }
    } catch (const Error& e) {
        std::cerr << "modcert: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "modcert: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
