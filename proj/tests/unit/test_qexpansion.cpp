#include <numeric>

#include "doctest.h"
#include "modcert/congruence/trace_system.hpp"
#include "modcert/error.hpp"
#include "modcert/qexpansion/eta.hpp"
#include "modcert/qexpansion/newform.hpp"
#include "modcert/qexpansion/sturm.hpp"

using namespace modcert;
using namespace modcert::qexpansion;
using arith::BigInt;

namespace {

// Product oracle: start from q^lead and multiply (1 - q^(mn))^r in one factor at
// a time, dividing by (1 - x) as a running prefix sum when r < 0.
std::vector<BigInt> eta_by_products(const std::vector<EtaFactor>& factors, std::size_t precision) {
    long lead = 0;
    for (auto f : factors) lead += static_cast<long>(f.scale) * f.exponent;
    lead /= 24;
    std::vector<BigInt> s(precision + 1, 0);
    if (static_cast<std::size_t>(lead) > precision) return s;
    s[lead] = 1;
    for (auto f : factors) {
        for (std::size_t n = 1; f.scale * n <= precision; ++n) {
            std::size_t step = f.scale * n;
            for (int r = 0; r < std::abs(f.exponent); ++r) {
                if (f.exponent > 0) {
                    for (std::size_t i = precision; i >= step; --i) s[i] -= s[i - step];
                } else {
                    for (std::size_t i = step; i <= precision; ++i) s[i] += s[i - step];
                }
            }
        }
    }
    return s;
}

// Index of Gamma_0(N) by counting points of P^1(Z/N): pairs (c, d) with
// gcd(c, d, N) = 1 modulo units.
std::uint64_t index_by_cosets(std::uint64_t N) {
    std::uint64_t pairs = 0, units = 0;
    for (std::uint64_t c = 0; c < N; ++c)
        for (std::uint64_t d = 0; d < N; ++d)
            if (std::gcd(std::gcd(c, d), N) == 1) ++pairs;
    for (std::uint64_t u = 0; u < N; ++u)
        if (std::gcd(u, N) == 1) ++units;
    return N == 1 ? 1 : pairs / units;
}

}  // namespace

TEST_CASE("sturm_bound examples") {
    CHECK(sturm_bound(1, 12) == 1);
    CHECK(sturm_bound(8, 4) == 4);
    CHECK(sturm_bound(11, 2) == 2);
    CHECK(gamma0_index(8) == 12);
    CHECK_THROWS_AS(sturm_bound(0, 4), Error);
}

TEST_CASE("sturm_bound against coset counting and monotone in k") {
    for (std::uint64_t N = 1; N <= 60; ++N) {
        std::uint64_t idx = index_by_cosets(N);
        CHECK(gamma0_index(N) == idx);
        for (int k : {2, 4}) CHECK(sturm_bound(N, k) == (k * idx + 11) / 12);
        for (int k = 2; k <= 20; k += 2) CHECK(sturm_bound(N, k) <= sturm_bound(N, k + 2));
    }
}

TEST_CASE("eta_expand: Delta") {
    EtaQuotient delta({{1, 24}}, 1);
    CHECK(delta.weight() == 12);
    CHECK(delta.leading_exponent() == 1);
    auto c = eta_expand(delta, 3);
    REQUIRE(c.size() == 4);
    CHECK(c[0] == 0);
    CHECK(c[1] == 1);
    CHECK(c[2] == -24);
    CHECK(c[3] == 252);
    auto c12 = eta_expand(delta, 12);
    CHECK(c12[11] == 534612);
    CHECK(c12[12] == -370944);
}

TEST_CASE("eta_expand matches the product oracle") {
    std::vector<std::pair<std::vector<EtaFactor>, std::uint64_t>> cases = {
        {{{2, 4}, {4, 4}}, 8},
        {{{1, 2}, {2, 2}, {3, 2}, {6, 2}}, 6},
        {{{3, 8}}, 9},
        {{{1, 2}, {11, 2}}, 11},
        {{{1, 24}}, 1},
        {{{1, -8}, {2, 16}}, 2},
        {{{1, 16}, {2, -8}}, 2},
        {{{1, 4}, {2, -2}, {4, 4}, {8, -2}}, 8},
    };
    for (auto& [factors, level] : cases) {
        EtaQuotient eta(factors, level);
        auto got = eta_expand(eta, 150);
        auto want = eta_by_products(factors, 150);
        CHECK(got == want);
        for (std::size_t n = 0; n < eta.leading_exponent(); ++n) CHECK(got[n] == 0);
    }
}

TEST_CASE("eta_expand truncation is consistent") {
    EtaQuotient eta({{2, 4}, {4, 4}}, 8);
    auto big = eta_expand(eta, 300);
    for (std::size_t P : {1, 7, 40, 123}) {
        auto small = eta_expand(eta, P);
        CHECK(std::equal(small.begin(), small.end(), big.begin()));
    }
    CHECK_THROWS_AS(eta_expand(eta, 20, 10), Error);
}

TEST_CASE("eta quotient validation") {
    CHECK_THROWS_AS(EtaQuotient({{1, 3}}, 1), Error);          // odd weight
    CHECK_THROWS_AS(EtaQuotient({{1, 2}, {2, 2}}, 2), Error);  // 24 does not divide sum m r
    CHECK_THROWS_AS(EtaQuotient({{3, 8}}, 8), Error);          // 3 does not divide 8
}

TEST_CASE("level-8 weight-4 newform coefficients") {
    // q - 4q^3 - 2q^5 + 24q^7 - 11q^9 - 44q^11 + ...
    EtaQuotient eta({{2, 4}, {4, 4}}, 8);
    auto c = eta_expand(eta, 12);
    std::vector<long> want = {0, 1, 0, -4, 0, -2, 0, 24, 0, -11, 0, -44, 0};
    for (std::size_t n = 0; n <= 12; ++n) CHECK(c[n] == want[n]);
}

TEST_CASE("hecke_selfcheck") {
    SUBCASE("eta fixture to 200") {
        auto c = eta_expand(EtaQuotient({{2, 4}, {4, 4}}, 8), 200);
        CHECK(hecke_selfcheck(c, 4, 8).ok);
    }
    SUBCASE("c_n = n fails at 4") {
        std::vector<BigInt> c(50);
        for (std::size_t n = 0; n < c.size(); ++n) c[n] = static_cast<long>(n);
        auto r = hecke_selfcheck(c, 4);
        CHECK_FALSE(r.ok);
        REQUIRE(r.first_violation);
        CHECK(r.first_violation->n == 4);
    }
    SUBCASE("(1, 0, 0, ...) fails at 4") {
        std::vector<BigInt> c(30, 0);
        c[1] = 1;
        auto r = hecke_selfcheck(c, 4);
        CHECK_FALSE(r.ok);
        CHECK(r.first_violation->n == 4);
    }
    SUBCASE("c_1 must be 1") {
        std::vector<BigInt> c(10, 0);
        CHECK_THROWS_AS(hecke_selfcheck(c, 4), Error);
    }
    SUBCASE("a single wrong coefficient is located") {
        auto c = eta_expand(EtaQuotient({{1, 24}}, 1), 100);
        c[35] += 1;
        auto r = hecke_selfcheck(c, 12);
        CHECK_FALSE(r.ok);
        CHECK(r.first_violation->n == 35);
    }
}

TEST_CASE("eigenform fixtures load, pass Hecke and purity") {
    for (const char* name : {"8.4.a.a", "6.4.a.a", "9.4.a.a", "1.12.a.a", "11.2.a.a"}) {
        auto f = load_newform(std::string(MODCERT_FIXTURE_DIR "/newforms/") + name + ".json", 500);
        CHECK(f.label == name);
        CHECK(f.source == NewformSource::Eta);
        CHECK_FALSE(f.eigenvalues.empty());
        for (const auto& [q, a] : f.eigenvalues) {
            REQUIRE(a.rational_value());
            CHECK(congruence::purity_check(arith::to_i64(*a.rational_value()), q, f.weight));
        }
    }
}

TEST_CASE("table descriptors") {
    json good = {{"level", 23},
                 {"weight", 4},
                 {"coeff_degree", 2},
                 {"eigenvalues", {{"2", json::array({-1, 1, 1})}, {"3", json::array({-1, -2, 1})}, {"5", 4}}}};
    SUBCASE("quadratic eigenvalues are accepted") {
        auto f = newform_from_json(good);
        CHECK(f.source == NewformSource::Table);
        CHECK(f.eigenvalues.at(2).degree() == 2);
        CHECK(f.eigenvalues.at(5).rational_value().value() == 4);
    }
    SUBCASE("weight 2 needs the fixture's Weil certification") {
        // 1 +- sqrt(2) is within 2 sqrt(3), but Fujiwara only gives 4.
        json j = good;
        j["weight"] = 2;
        j["eigenvalues"].erase("5");
        CHECK_THROWS_AS(newform_from_json(j), Error);
        j["weil_certified"] = true;
        CHECK(newform_from_json(j).weil_certified);
    }
    SUBCASE("d below the eigenvalue degree is rejected") {
        json j = good;
        j["coeff_degree"] = 1;
        CHECK_THROWS_AS(newform_from_json(j), Error);
    }
    SUBCASE("eigenvalue outside the Weil bound is rejected") {
        json j = good;
        j["eigenvalues"]["5"] = 23;  // 529 > 4 * 125
        CHECK_THROWS_AS(newform_from_json(j), Error);
    }
    SUBCASE("non-eigenform eta quotient is rejected") {
        json j = {{"level", 2}, {"weight", 4}, {"coeff_degree", 1}, {"eta_factors", {{1, -8}, {2, 16}}}};
        CHECK_THROWS_AS(newform_from_json(j, 100), Error);
    }
}
