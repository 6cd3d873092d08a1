#pragma once

#include <cstdint>
#include <optional>

#include "modcert/arith/int_poly.hpp"

namespace modcert::congruence {

using arith::BigInt;
using arith::IntPolynomial;

/// An algebraic integer given by its minimal polynomial. The polynomial must
/// be monic and squarefree; irreducibility is the caller's promise (it is
/// what makes "a root equals c" mean "the number equals c").
class AlgebraicInteger {
public:
    explicit AlgebraicInteger(IntPolynomial min_poly);
    static AlgebraicInteger rational(const BigInt& value);

    const IntPolynomial& min_poly() const noexcept { return min_poly_; }
    std::size_t degree() const noexcept { return min_poly_.degree(); }
    const std::optional<BigInt>& rational_value() const noexcept { return rational_; }

    friend bool operator==(const AlgebraicInteger& a, const AlgebraicInteger& b) {
        return a.min_poly_ == b.min_poly_;
    }

private:
    IntPolynomial min_poly_;
    std::optional<BigInt> rational_;
};

/// prod over conjugates sigma of (alpha^sigma - c) = (-1)^deg * min_poly(c).
BigInt conjugate_product(const AlgebraicInteger& alpha, const BigInt& c);

/// p | conjugate_product(alpha, c): the rational shadow of
/// alpha = c mod a prime above p.
bool congruence_check(const AlgebraicInteger& alpha, const BigInt& c, const BigInt& p);

enum class EqualityVerdict { Equal, NotCongruent };

/// Congruence-forces-equality lemma at a single prime q.
///
/// Preconditions (LemmaPreconditionFailed otherwise): p prime and larger than
/// (4 q^((k-1)/2))^deg; c^2 <= 4 q^(k-1); every conjugate of alpha bounded by
/// 2 q^((k-1)/2), proven either exactly (degree 1), by the Fujiwara bound, or
/// asserted by the caller through `conjugates_weil_certified`.
EqualityVerdict equality_from_congruence(const AlgebraicInteger& alpha, const BigInt& c, std::uint64_t q,
                                         const BigInt& p, int k, bool conjugates_weil_certified = false);

/// True iff every conjugate of alpha provably lies within 2 q^((k-1)/2):
/// exactly for rational alpha, via the Fujiwara bound otherwise.
bool conjugates_within_weil_bound(const AlgebraicInteger& alpha, std::uint64_t q, int k);

}  // namespace modcert::congruence
