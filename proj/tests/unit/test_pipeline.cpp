#define CPPHTTPLIB_OPENSSL_SUPPORT
#include "httplib.h"

#include <filesystem>
#include <thread>

#include "doctest.h"
#include "modcert/counting/fixture.hpp"
#include "modcert/error.hpp"
#include "modcert/json_util.hpp"
#include "modcert/pipeline/digest.hpp"
#include "modcert/pipeline/remote.hpp"
#include "modcert/pipeline/verify.hpp"
#include "modcert/qexpansion/eta.hpp"
#include "modcert/qexpansion/newform.hpp"

using namespace modcert;
using namespace modcert::pipeline;
using arith::BigInt;
namespace fs = std::filesystem;

namespace {

const fs::path kFixtures = MODCERT_FIXTURE_DIR;

qexpansion::NewformDescriptor level8_form() { return qexpansion::load_newform(kFixtures / "newforms/8.4.a.a.json", 500); }

congruence::TraceSystem own_traces(const qexpansion::NewformDescriptor& f, std::uint64_t q_max) {
    congruence::TraceSystem::Table t;
    for (const auto& [q, a] : f.eigenvalues)
        if (q <= q_max && f.level % q != 0) t[q] = arith::to_i64(*a.rational_value());
    return congruence::TraceSystem(f.level, f.weight, t);
}

fs::path scratch_dir(const std::string& name) {
    auto d = fs::temp_directory_path() / ("modcert_test_" + name + "_" + std::to_string(::getpid()));
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
}

}  // namespace

TEST_CASE("sha256") {
    CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("sturm_rationality_report examples") {
    auto wide = sturm_rationality_report(50, 8, 4);
    CHECK(wide.covered);
    CHECK(wide.annotation.has_value());
    auto none = sturm_rationality_report(std::nullopt, 8, 4);
    CHECK_FALSE(none.covered);
    CHECK_FALSE(none.annotation);
    auto narrow = sturm_rationality_report(3, 8, 4);
    CHECK(narrow.sturm == 4);
    CHECK_FALSE(narrow.covered);
    CHECK_FALSE(narrow.annotation);
}

TEST_CASE("self-comparison verifies reflexively") {
    auto f = level8_form();
    VerifyOptions opts;
    opts.q_cap = 200;
    auto cert = verify_traces(own_traces(f, 200), f, opts);
    CHECK(cert.verdict.kind == FinalVerdict::Kind::VerifiedUpTo);
    CHECK(cert.verdict.bound == 200);
    CHECK_FALSE(cert.congruence_only);
    for (const auto& r : cert.records) CHECK(r.verdict == PrimeVerdict::Equal);
    CHECK(cert.scan.ran);
    CHECK_FALSE(cert.scan.pattern_found);

    for (const char* name : {"6.4.a.a", "9.4.a.a"}) {
        auto g = qexpansion::load_newform(kFixtures / "newforms" / (std::string(name) + ".json"), 300);
        VerifyOptions o;
        o.q_cap = 100;
        CHECK(verify_traces(own_traces(g, 100), g, o).verdict.kind == FinalVerdict::Kind::VerifiedUpTo);
    }
}

TEST_CASE("a +1 perturbation is detected and localized") {
    auto f = level8_form();
    for (std::uint64_t q0 : {3, 47, 199}) {
        auto t = own_traces(f, 200).traces();
        t[q0] += 1;
        VerifyOptions opts;
        opts.q_cap = 200;
        auto cert = verify_traces(congruence::TraceSystem(8, 4, t), f, opts);
        CHECK(cert.verdict.kind == FinalVerdict::Kind::CongruenceFails);
        CHECK(cert.verdict.q == q0);
    }
}

TEST_CASE("larger q_cap agrees on the overlap") {
    auto f = level8_form();
    auto T = own_traces(f, 300);
    VerifyOptions a, b;
    a.q_cap = 100;
    b.q_cap = 300;
    auto ca = verify_traces(T, f, a), cb = verify_traces(T, f, b);
    REQUIRE(ca.records.size() < cb.records.size());
    for (std::size_t i = 0; i < ca.records.size(); ++i) {
        CHECK(ca.records[i].q == cb.records[i].q);
        CHECK(ca.records[i].verdict == cb.records[i].verdict);
        CHECK(ca.records[i].congruent == cb.records[i].congruent);
    }
}

TEST_CASE("precondition failures become PreconditionUnmet") {
    auto f = level8_form();
    auto T = own_traces(f, 100);
    SUBCASE("level mismatch") {
        congruence::TraceSystem T9(9, 4, {{5, -2}});
        auto cert = verify_traces(T9, f, {});
        CHECK(cert.verdict.kind == FinalVerdict::Kind::PreconditionUnmet);
    }
    SUBCASE("impure trace system") {
        auto cert = verify_traces(congruence::TraceSystem::impure(8, 4, {{3, 28}}), f, {});
        CHECK(cert.verdict.kind == FinalVerdict::Kind::PreconditionUnmet);
    }
    SUBCASE("p dividing C or p <= k") {
        for (long p : {2, 3}) {
            VerifyOptions o;
            o.q_cap = 50;
            o.residual_prime = BigInt(p);
            CHECK(verify_traces(T, f, o).verdict.kind == FinalVerdict::Kind::PreconditionUnmet);
        }
    }
    SUBCASE("small p gives congruence-only records") {
        VerifyOptions o;
        o.q_cap = 50;
        o.residual_prime = BigInt(101);
        auto cert = verify_traces(T, f, o);
        CHECK(cert.congruence_only);
        CHECK(cert.verdict.kind != FinalVerdict::Kind::VerifiedUpTo);
        bool some_only = false;
        for (const auto& r : cert.records) some_only |= r.verdict == PrimeVerdict::CongruenceOnly;
        CHECK(some_only);
    }
}

TEST_CASE("run_verification from configs is deterministic") {
    for (const char* name : {"legendre_vs_8.4.a.a", "legendre_vs_remote_8.4.a.a", "tracefile_vs_8.4.a.a"}) {
        auto j = read_json_file(kFixtures / "configs" / (std::string(name) + ".json"));
        auto cfg = config_from_json(j, kFixtures);
        cfg.remote.cache_dir = kFixtures / "cache";
        auto a = certificate_to_string(run_verification(cfg));
        cfg.threads = 4;
        auto b = certificate_to_string(run_verification(cfg));
        CHECK(a == b);
        auto cj = json::parse(a);
        CHECK(cj["schema"] == 1);
        CHECK(cj["final_verdict"]["kind"] == "VerifiedUpTo");
    }
}

TEST_CASE("fiber product certificate at q_cap 200") {
    auto cfg = config_from_json(read_json_file(kFixtures / "configs/legendre_vs_8.4.a.a.json"), kFixtures);
    auto cert = run_verification(cfg);
    CHECK(cert.verdict.kind == FinalVerdict::Kind::VerifiedUpTo);
    CHECK(cert.verdict.bound == 200);
    CHECK(cert.mode == "full");
    REQUIRE(cert.residual_prime);
    // auto p clears (4 * 199^1.5)^1 = 11230 and B = 2048
    CHECK(*cert.residual_prime > 11230);
    CHECK(cert.records.size() == 45);
    REQUIRE(cert.sturm_report);
    CHECK(cert.sturm_report->covered);
}

TEST_CASE("remote client") {
    auto f = level8_form();
    RemoteOptions opts;
    opts.cache_dir = kFixtures / "cache";
    SUBCASE("cached replay") {
        auto g = fetch_remote_newform("8.4.a.a", opts);
        auto bytes = read_text_file(cache_path(opts, "8.4.a.a"));
        CHECK(g.provenance == "sha256:" + sha256_hex(bytes));
        CHECK(g.source == qexpansion::NewformSource::Remote);
        for (const auto& [q, a] : g.eigenvalues)
            if (f.eigenvalues.count(q)) CHECK(a == f.eigenvalues.at(q));
    }
    SUBCASE("unknown label offline") {
        try {
            fetch_remote_newform("99.4.a.z", opts);
            FAIL("expected RemoteUnavailable");
        } catch (const Error& e) {
            CHECK(e.code() == Errc::RemoteUnavailable);
        }
    }
    SUBCASE("schema mismatch") {
        CHECK_THROWS_AS(newform_from_remote_response("{\"data\": []}", "8.4.a.a"), Error);
        CHECK_THROWS_AS(newform_from_remote_response("not json", "8.4.a.a"), Error);
        CHECK_THROWS_AS(newform_from_remote_response(
                            R"({"data":[{"label":"x","level":1,"weight":2,"dim":2,"traces":[2]}]})", "x"),
                        Error);
    }
    SUBCASE("live fetch from a local server caches the body verbatim") {
        const std::string body = read_text_file(kFixtures / "cache/8.4.a.a.json");
        httplib::Server srv;
        int hits = 0;
        std::string seen_label;
        srv.Get("/api/mf_newforms/", [&](const httplib::Request& req, httplib::Response& res) {
            ++hits;
            seen_label = req.get_param_value("label");
            res.set_content(body, "application/json");
        });
        int port = srv.bind_to_any_port("127.0.0.1");
        std::thread th([&] { srv.listen_after_bind(); });
        srv.wait_until_ready();

        RemoteOptions live;
        live.cache_dir = scratch_dir("remote");
        live.offline = false;
        live.base_url = "http://127.0.0.1:" + std::to_string(port);
        auto g = fetch_remote_newform("8.4.a.a", live);
        CHECK(hits == 1);
        CHECK(seen_label == "8.4.a.a");
        CHECK(read_text_file(cache_path(live, "8.4.a.a")) == body);
        CHECK(g.provenance == "sha256:" + sha256_hex(body));
        // Second call replays the cache.
        live.offline = true;
        fetch_remote_newform("8.4.a.a", live);
        CHECK(hits == 1);

        srv.stop();
        th.join();
        fs::remove_all(live.cache_dir);
    }
}

TEST_CASE("certificate serializes long integers as strings") {
    auto f = level8_form();
    VerifyOptions o;
    o.q_cap = 30;
    o.residual_prime = BigInt("1000000000000000000000007");
    auto j = certificate_to_json(verify_traces(own_traces(f, 30), f, o));
    CHECK(j["residual_prime"].is_string());
    CHECK(j["residual_prime"] == "1000000000000000000000007");
}
