#include "modcert/congruence/algebraic_integer.hpp"

#include <string>
#include <utility>

#include "modcert/bounds/bounds.hpp"
#include "modcert/congruence/trace_system.hpp"
#include "modcert/error.hpp"

namespace modcert::congruence {

AlgebraicInteger::AlgebraicInteger(IntPolynomial min_poly) : min_poly_(std::move(min_poly)) {
    if (min_poly_.is_zero() || min_poly_.degree() < 1)
        throw Error(Errc::InvalidArgument, "minimal polynomial must have degree >= 1");
    if (!min_poly_.is_monic()) throw Error(Errc::NonMonic, min_poly_.to_string());
    if (!arith::squarefree_check(min_poly_))
        throw Error(Errc::InvalidArgument, "minimal polynomial is not squarefree: " + min_poly_.to_string());
    if (min_poly_.degree() == 1) rational_ = -min_poly_.coeff(0);
}

AlgebraicInteger AlgebraicInteger::rational(const BigInt& value) {
    return AlgebraicInteger(IntPolynomial::linear(value));
}

BigInt conjugate_product(const AlgebraicInteger& alpha, const BigInt& c) {
    BigInt v = arith::poly_eval(alpha.min_poly(), c);
    return alpha.degree() % 2 == 0 ? v : BigInt(-v);
}

bool congruence_check(const AlgebraicInteger& alpha, const BigInt& c, const BigInt& p) {
    if (p < 2) throw Error(Errc::InvalidArgument, "modulus must be >= 2");
    return mpz_divisible_p(conjugate_product(alpha, c).get_mpz_t(), p.get_mpz_t()) != 0;
}

bool conjugates_within_weil_bound(const AlgebraicInteger& alpha, std::uint64_t q, int k) {
    const BigInt bound_sq = 4 * arith::pow(arith::from_u64(q), static_cast<unsigned long>(k - 1));
    if (alpha.rational_value()) {
        const BigInt& r = *alpha.rational_value();
        return r * r <= bound_sq;
    }
    arith::Rational R = arith::fujiwara_root_bound(alpha.min_poly());
    return R * R <= arith::Rational(bound_sq);
}

EqualityVerdict equality_from_congruence(const AlgebraicInteger& alpha, const BigInt& c, std::uint64_t q,
                                         const BigInt& p, int k, bool conjugates_weil_certified) {
    if (!arith::is_prime(p)) throw Error(Errc::LemmaPreconditionFailed, "p = " + p.get_str() + " is not prime");
    const std::size_t deg = alpha.degree();
    BigInt threshold = bounds::weil_product_threshold(arith::from_u64(q), deg, k);
    if (p <= threshold)
        throw Error(Errc::LemmaPreconditionFailed,
                    "p = " + p.get_str() + " does not exceed threshold " + threshold.get_str() + " at q=" +
                        std::to_string(q));
    if (!purity_check(arith::to_i64(c), q, k))
        throw Error(Errc::LemmaPreconditionFailed, "|a_q(X)| exceeds the Weil bound at q=" + std::to_string(q));
    if (!conjugates_weil_certified && !conjugates_within_weil_bound(alpha, q, k))
        throw Error(Errc::LemmaPreconditionFailed,
                    "conjugates of " + alpha.min_poly().to_string() + " not certified within the Weil bound");

    if (!congruence_check(alpha, c, p)) return EqualityVerdict::NotCongruent;

    // |product| <= (4 q^((k-1)/2))^deg < p, so divisibility forces zero.
    BigInt prod = conjugate_product(alpha, c);
    if (prod != 0)
        throw Error(Errc::InternalContradiction, "p | " + prod.get_str() + " but the product is nonzero");
    if (deg != 1)
        throw Error(Errc::LemmaPreconditionFailed,
                    "integer root of " + alpha.min_poly().to_string() + ": polynomial is not irreducible");
    return EqualityVerdict::Equal;
}

}  // namespace modcert::congruence
