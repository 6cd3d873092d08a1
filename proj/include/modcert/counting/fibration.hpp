#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "modcert/arith/int_poly.hpp"
#include "modcert/arith/prime_field.hpp"
#include "modcert/congruence/trace_system.hpp"

namespace modcert::counting {

using arith::IntPolynomial;
using arith::PrimeField;

/// y^2 = x^3 + a2(t) x^2 + a4(t) x + a6(t). With a2 = 0 this is the short
/// model y^2 = x^3 + a(t) x + b(t).
struct WeierstrassFamily {
    IntPolynomial a2;
    IntPolynomial a4;
    IntPolynomial a6;

    /// 16 * disc(x^3 + a2 x^2 + a4 x + a6) as a polynomial in t.
    IntPolynomial discriminant() const;
};

/// Elliptic surface over the t-line. The fiber at t = infinity is read from
/// `at_infinity` (a model in s = 1/t evaluated at s = 0); without it the
/// fiber at infinity counts as bad.
class EllipticFibration {
public:
    EllipticFibration(std::string label, WeierstrassFamily affine,
                      std::optional<WeierstrassFamily> at_infinity = std::nullopt);

    /// Short Weierstrass convenience constructor.
    static EllipticFibration short_form(std::string label, IntPolynomial a, IntPolynomial b);

    const std::string& label() const noexcept { return label_; }
    const WeierstrassFamily& affine() const noexcept { return affine_; }
    const std::optional<WeierstrassFamily>& at_infinity() const noexcept { return at_infinity_; }

private:
    std::string label_;
    WeierstrassFamily affine_;
    std::optional<WeierstrassFamily> at_infinity_;
};

enum class BadFiberMode { Skip, Corrected };

struct FiberProductVariety {
    std::string label;
    EllipticFibration f1;
    EllipticFibration f2;
    std::set<std::uint64_t> bad_primes;
    std::uint64_t conductor = 1;
    BadFiberMode bad_fiber_mode = BadFiberMode::Skip;
    /// Remove the Tate class Q(-1) carried by R^1 f1 (x) R^1 f2 when the two
    /// fibrations coincide: each smooth fiber pair then contributes a1 a2 - q.
    bool tate_correction = false;
    std::optional<std::string> expected_eta_pair;

    /// Throws InvalidArgument when a prime factor of the conductor is missing
    /// from bad_primes.
    void validate() const;
};

/// Trace of Frobenius of y^2 = x^3 + a x + b over F_q, q odd.
/// Throws SingularFiber when 4a^3 + 27b^2 = 0 in F_q.
std::int64_t ec_trace(std::int64_t a, std::int64_t b, std::uint64_t q);

/// Same for the model with an x^2 term; arguments are field elements.
std::int64_t ec_trace(const PrimeField& field, std::uint64_t a2, std::uint64_t a4, std::uint64_t a6);

/// Trace of the reduced singular cubic at a singular fiber: +1 split
/// multiplicative, -1 non-split multiplicative, 0 additive.
int singular_fiber_trace(const PrimeField& field, std::uint64_t a2, std::uint64_t a4, std::uint64_t a6);

struct FiberValue {
    bool bad = false;
    /// Smooth fiber: Frobenius trace. Bad fiber: singular-cubic trace, or 0
    /// when no model is available.
    std::int64_t trace = 0;
};

/// Entries for t = 0..q-1 followed by t = infinity (size q + 1).
std::vector<FiberValue> fiber_trace_profile(const EllipticFibration& fibration, std::uint64_t q);

/// Sum over t in P^1(F_q) of a1(t) a2(t) for smooth pairs, plus the product
/// of singular-cubic traces at bad fibers in corrected mode.
std::int64_t fiber_product_sum(const FiberProductVariety& X, std::uint64_t q);

/// Frobenius trace on the middle cohomology of X at a good prime q:
///   q * #{t : both fibers smooth} * [tate_correction] - fiber_product_sum.
/// Throws BadReductionPrime for q in X.bad_primes and WeilBoundViolation when
/// the result exceeds 2 q^(3/2).
std::int64_t threefold_trace(const FiberProductVariety& X, std::uint64_t q);

/// Traces at every odd good prime q <= q_max, weight 4. `threads` = 0 picks
/// hardware concurrency.
congruence::TraceSystem build_trace_system(const FiberProductVariety& X, std::uint64_t q_max,
                                           unsigned threads = 1);

}  // namespace modcert::counting
