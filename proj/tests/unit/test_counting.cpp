#include <random>

#include "doctest.h"
#include "modcert/arith/prime_field.hpp"
#include "modcert/counting/fibration.hpp"
#include "modcert/counting/fixture.hpp"
#include "modcert/error.hpp"
#include "modcert/json_util.hpp"
#include "modcert/qexpansion/eta.hpp"

using namespace modcert;
using namespace modcert::counting;
using arith::IntPolynomial;
using arith::PrimeField;

namespace {

// q + 1 - #E(F_q), counting every affine (x, y) pair directly.
std::int64_t trace_by_enumeration(std::int64_t a2, std::int64_t a4, std::int64_t a6, std::uint64_t q) {
    auto md = [q](std::int64_t v) { return static_cast<std::uint64_t>(((v % (std::int64_t)q) + (std::int64_t)q) % (std::int64_t)q); };
    std::uint64_t pts = 1;
    for (std::uint64_t x = 0; x < q; ++x) {
        std::uint64_t rhs = (x * x % q * x + md(a2) * (x * x % q) + md(a4) * x + md(a6)) % q;
        for (std::uint64_t y = 0; y < q; ++y)
            if (y * y % q == rhs) ++pts;
    }
    return static_cast<std::int64_t>(q + 1) - static_cast<std::int64_t>(pts);
}

bool smooth_short(std::int64_t a, std::int64_t b, std::uint64_t q) {
    PrimeField F(q);
    std::uint64_t ra = F.reduce(a), rb = F.reduce(b);
    std::uint64_t d = F.add(F.mul(4, F.pow(ra, 3)), F.mul(27, F.mul(rb, rb)));
    return d != 0;
}

FiberProductVariety constant_product(std::int64_t a1, std::int64_t b1, std::int64_t a2, std::int64_t b2,
                                     std::set<std::uint64_t> bad, std::uint64_t conductor) {
    auto c = [](std::int64_t v) { return IntPolynomial{v}; };
    auto f1 = EllipticFibration::short_form("E1", c(a1), c(b1));
    auto f2 = EllipticFibration::short_form("E2", c(a2), c(b2));
    // A constant family has the same fiber at infinity.
    EllipticFibration g1("E1", f1.affine(), f1.affine());
    EllipticFibration g2("E2", f2.affine(), f2.affine());
    return FiberProductVariety{"toy", g1, g2, std::move(bad), conductor, BadFiberMode::Skip, false, std::nullopt};
}

std::vector<std::uint64_t> odd_primes(std::uint64_t lo, std::uint64_t hi) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t p = lo; p <= hi; ++p)
        if (p > 2 && arith::is_prime_u64(p)) out.push_back(p);
    return out;
}

}  // namespace

TEST_CASE("ec_trace examples") {
    CHECK(ec_trace(1, 0, 3) == 0);
    CHECK(ec_trace(0, 1, 5) == 0);
    CHECK_THROWS_AS(ec_trace(0, 0, 7), Error);
    try {
        ec_trace(0, 0, 7);
    } catch (const Error& e) {
        CHECK(e.code() == Errc::SingularFiber);
    }
}

TEST_CASE("ec_trace agrees with brute-force point counts") {
    for (std::uint64_t q : odd_primes(3, 61)) {
        for (std::int64_t a = -3; a <= 3; ++a)
            for (std::int64_t b = -3; b <= 3; ++b) {
                if (!smooth_short(a, b, q)) continue;
                REQUIRE(ec_trace(a, b, q) == trace_by_enumeration(0, a, b, q));
            }
    }
    // Models with an x^2 term.
    for (std::uint64_t q : odd_primes(3, 31)) {
        PrimeField F(q);
        for (std::int64_t a2 = -2; a2 <= 2; ++a2)
            for (std::int64_t a4 = -2; a4 <= 2; ++a4)
                for (std::int64_t a6 = -2; a6 <= 2; ++a6) {
                    std::int64_t t;
                    try {
                        t = ec_trace(F, F.reduce(a2), F.reduce(a4), F.reduce(a6));
                    } catch (const Error&) {
                        continue;
                    }
                    REQUIRE(t == trace_by_enumeration(a2, a4, a6, q));
                }
    }
}

TEST_CASE("Hasse bound and quadratic twist sign flip") {
    std::mt19937_64 rng(3);
    auto primes = odd_primes(3, 997);
    int checked = 0;
    while (checked < 2000) {
        std::uint64_t q = primes[rng() % primes.size()];
        std::int64_t a = static_cast<std::int64_t>(rng() % q), b = static_cast<std::int64_t>(rng() % q);
        if (!smooth_short(a, b, q)) continue;
        std::int64_t t = ec_trace(a, b, q);
        CHECK(t * t <= 4 * static_cast<std::int64_t>(q));
        // Twist by a non-residue d: (a d^2, b d^3).
        std::int64_t d = 2;
        while (arith::legendre_symbol(d, q) != -1) ++d;
        PrimeField F(q);
        std::int64_t at = F.mul(F.reduce(a), F.mul(d, d));
        std::int64_t bt = F.mul(F.reduce(b), F.pow(d, 3));
        CHECK(ec_trace(at, bt, q) == -t);
        ++checked;
    }
}

TEST_CASE("singular fibers: split, non-split, additive") {
    PrimeField F(7);
    // y^2 = x^3 + x^2: node with tangents y = +-x, split.
    CHECK(singular_fiber_trace(F, 1, 0, 0) == 1);
    // y^2 = x^3 + 3x^2: tangents y^2 = 3x^2, 3 is a non-residue mod 7.
    CHECK(singular_fiber_trace(F, 3, 0, 0) == -1);
    // cusp
    CHECK(singular_fiber_trace(F, 0, 0, 0) == 0);
    // Affine count of a nodal cubic agrees with the convention.
    CHECK(singular_fiber_trace(F, 1, 0, 0) == trace_by_enumeration(1, 0, 0, 7) );
}

TEST_CASE("fiber_trace_profile") {
    SUBCASE("constant fibration a=1, b=0 at q=3 is zero everywhere") {
        auto f = EllipticFibration::short_form("c", IntPolynomial{1}, IntPolynomial{});
        EllipticFibration g("c", f.affine(), f.affine());
        auto prof = fiber_trace_profile(g, 3);
        REQUIRE(prof.size() == 4);
        for (const auto& v : prof) {
            CHECK_FALSE(v.bad);
            CHECK(v.trace == 0);
        }
    }
    SUBCASE("root of the discriminant is marked bad, missing infinity model is bad") {
        // y^2 = x^3 + t: singular at t = 0.
        auto f = EllipticFibration::short_form("t", IntPolynomial{}, IntPolynomial{0, 1});
        for (std::uint64_t q : odd_primes(5, 31)) {
            auto prof = fiber_trace_profile(f, q);
            REQUIRE(prof.size() == q + 1);
            CHECK(prof[0].bad);
            CHECK(prof[q].bad);
            for (std::uint64_t t = 1; t < q; ++t) CHECK_FALSE(prof[t].bad);
        }
    }
}

TEST_CASE("fiber_product_sum over constant fibrations is (q+1) a1 a2") {
    auto X = constant_product(1, 0, -1, 1, {2}, 2);
    for (std::uint64_t q : odd_primes(3, 101)) {
        if (!smooth_short(1, 0, q) || !smooth_short(-1, 1, q)) continue;
        std::int64_t a1 = trace_by_enumeration(0, 1, 0, q), a2 = trace_by_enumeration(0, -1, 1, q);
        CHECK(fiber_product_sum(X, q) == static_cast<std::int64_t>(q + 1) * a1 * a2);
    }
}

TEST_CASE("fiber_product_sum symmetry and self-product positivity") {
    auto f = EllipticFibration::short_form("f", IntPolynomial{1, 1}, IntPolynomial{0, 0, 1});
    auto g = EllipticFibration::short_form("g", IntPolynomial{-2}, IntPolynomial{1, 3});
    FiberProductVariety fg{"fg", f, g, {2, 3}, 6, BadFiberMode::Skip, false, std::nullopt};
    FiberProductVariety gf{"gf", g, f, {2, 3}, 6, BadFiberMode::Skip, false, std::nullopt};
    FiberProductVariety ff{"ff", f, f, {2, 3}, 6, BadFiberMode::Skip, false, std::nullopt};
    for (std::uint64_t q : odd_primes(5, 97)) {
        CHECK(fiber_product_sum(fg, q) == fiber_product_sum(gf, q));
        CHECK(fiber_product_sum(ff, q) >= 0);
    }
}

TEST_CASE("threefold_trace errors") {
    auto X = load_fiber_product(MODCERT_FIXTURE_DIR "/fibrations/legendre_t2_self_product.json");
    CHECK_THROWS_AS(threefold_trace(X, 2), Error);
    try {
        threefold_trace(X, 2);
    } catch (const Error& e) {
        CHECK(e.code() == Errc::BadReductionPrime);
    }
    // y^2 = x^3 + x is supersingular at 3 and 7, and has a_5 = +-2; the untwisted
    // self-product trace -(q+1) a^2 = -24 overshoots 2 * 5^(3/2).
    auto toy = constant_product(1, 0, 1, 0, {2}, 2);
    CHECK(threefold_trace(toy, 3) == 0);
    CHECK(threefold_trace(toy, 7) == 0);
    try {
        threefold_trace(toy, 5);
        FAIL("expected WeilBoundViolation");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::WeilBoundViolation);
    }
}

TEST_CASE("build_trace_system") {
    auto toy = constant_product(1, 0, 1, 0, {2}, 2);
    SUBCASE("q_max = 2 with 2 bad is empty") {
        CHECK(build_trace_system(toy, 2).traces().empty());
    }
    SUBCASE("constant toy at q_max = 3 matches direct summation") {
        auto T = build_trace_system(toy, 3);
        REQUIRE(T.traces().size() == 1);
        std::int64_t a = trace_by_enumeration(0, 1, 0, 3);
        CHECK(T.at(3).value() == -(3 + 1) * a * a);
        CHECK(T.weight() == 4);
    }
    SUBCASE("q_max = 7 trips the Weil check at 5") {
        CHECK_THROWS_AS(build_trace_system(toy, 7), Error);
    }
}

TEST_CASE("fiber-product fixture matches the paired eta quotient") {
    auto X = load_fiber_product(MODCERT_FIXTURE_DIR "/fibrations/legendre_t2_self_product.json");
    CHECK(X.conductor == 8);
    CHECK(X.expected_eta_pair.value() == "8.4.a.a");
    auto T1 = build_trace_system(X, 200, 1);
    auto T4 = build_trace_system(X, 200, 4);
    CHECK(T1.traces() == T4.traces());
    qexpansion::EtaQuotient eta({{2, 4}, {4, 4}}, 8);
    auto c = qexpansion::eta_expand(eta, 200);
    CHECK(T1.traces().size() == 45);
    for (auto [q, a] : T1.traces()) {
        CHECK(c[q] == a);
        CHECK(static_cast<double>(a) * a <= 4.0 * q * q * q);
    }
    CHECK(T1.at(3).value() == -4);
    CHECK(T1.at(5).value() == -2);
    CHECK(T1.at(7).value() == 24);
}

TEST_CASE("trace file round trip") {
    auto X = load_fiber_product(MODCERT_FIXTURE_DIR "/fibrations/legendre_t2_self_product.json");
    auto T = build_trace_system(X, 60);
    auto j = trace_system_to_json(T);
    CHECK(j["traces"].contains("3"));
    auto back = trace_system_from_json(j);
    CHECK(back.traces() == T.traces());
    CHECK(back.conductor() == 8);

    auto stored = trace_system_from_json(read_json_file(MODCERT_FIXTURE_DIR "/traces/legendre_t2_q200.json"));
    for (auto [q, a] : T.traces()) CHECK(stored.at(q).value() == a);
}
