#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include "modcert/arith/bigint.hpp"

namespace modcert::arith {

/// Dense univariate polynomial over Z, coefficients lowest degree first.
///
/// The coefficient vector is kept trimmed: the leading coefficient is
/// nonzero, and the zero polynomial has an empty vector.
class IntPolynomial {
public:
    IntPolynomial() = default;
    explicit IntPolynomial(std::vector<BigInt> coeffs);
    IntPolynomial(std::initializer_list<long> coeffs);

    /// x - root
    static IntPolynomial linear(const BigInt& root);

    bool is_zero() const noexcept { return c_.empty(); }
    /// Degree; the zero polynomial reports 0 (check is_zero()).
    std::size_t degree() const noexcept { return c_.empty() ? 0 : c_.size() - 1; }
    const std::vector<BigInt>& coefficients() const noexcept { return c_; }
    BigInt coeff(std::size_t i) const { return i < c_.size() ? c_[i] : BigInt(0); }
    const BigInt& leading() const;
    bool is_monic() const { return !c_.empty() && c_.back() == 1; }

    IntPolynomial derivative() const;
    /// g(x) = f(x + t)
    IntPolynomial shifted(const BigInt& t) const;
    /// Gcd of the coefficients (nonnegative; 0 for the zero polynomial).
    BigInt content() const;
    IntPolynomial primitive_part() const;

    friend IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b);
    friend IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b);
    friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b);
    friend IntPolynomial operator*(const BigInt& s, const IntPolynomial& a);
    friend bool operator==(const IntPolynomial& a, const IntPolynomial& b) { return a.c_ == b.c_; }

    std::string to_string() const;

private:
    void trim();
    std::vector<BigInt> c_;
};

/// Exact value f(c) by Horner's rule.
BigInt poly_eval(const IntPolynomial& f, const BigInt& c);

/// Gcd over Q, returned as a primitive integer polynomial with positive
/// leading coefficient. gcd(0, 0) = 0.
IntPolynomial poly_gcd(const IntPolynomial& a, const IntPolynomial& b);

/// True iff gcd(f, f') over Q is constant. Requires f monic of degree >= 1.
bool squarefree_check(const IntPolynomial& f);

/// Rational R with |z| <= R for every complex root z of monic f, from
/// R = 2 * max_k |a_{d-k}|^{1/k}, each root rounded upward on a 2^-20 grid.
Rational fujiwara_root_bound(const IntPolynomial& f);

}  // namespace modcert::arith
