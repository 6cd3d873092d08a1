#include "modcert/arith/int_poly.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

#include "modcert/error.hpp"

namespace modcert::arith {

IntPolynomial::IntPolynomial(std::vector<BigInt> coeffs) : c_(std::move(coeffs)) { trim(); }

IntPolynomial::IntPolynomial(std::initializer_list<long> coeffs) {
    c_.reserve(coeffs.size());
    for (long v : coeffs) c_.emplace_back(v);
    trim();
}

IntPolynomial IntPolynomial::linear(const BigInt& root) { return IntPolynomial({BigInt(-root), BigInt(1)}); }

void IntPolynomial::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

const BigInt& IntPolynomial::leading() const {
    if (c_.empty()) throw Error(Errc::ZeroPolynomial, "leading coefficient of zero polynomial");
    return c_.back();
}

IntPolynomial IntPolynomial::derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<BigInt> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<unsigned long>(i);
    return IntPolynomial(std::move(d));
}

IntPolynomial IntPolynomial::shifted(const BigInt& t) const {
    // Horner in the ring Z[x]: g = (...(a_n)(x+t) + a_{n-1})(x+t) + ...
    IntPolynomial xt({t, BigInt(1)});
    IntPolynomial g;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) g = g * xt + IntPolynomial({*it});
    return g;
}

BigInt IntPolynomial::content() const {
    BigInt g = 0;
    for (const auto& a : c_) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), a.get_mpz_t());
    return g;
}

IntPolynomial IntPolynomial::primitive_part() const {
    if (c_.empty()) return {};
    BigInt g = content();
    if (c_.back() < 0) g = -g;
    std::vector<BigInt> out(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) mpz_divexact(out[i].get_mpz_t(), c_[i].get_mpz_t(), g.get_mpz_t());
    return IntPolynomial(std::move(out));
}

IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b) {
    std::vector<BigInt> out(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.coeff(i) + b.coeff(i);
    return IntPolynomial(std::move(out));
}

IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b) {
    std::vector<BigInt> out(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.coeff(i) - b.coeff(i);
    return IntPolynomial(std::move(out));
}

IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<BigInt> out(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
        for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
    return IntPolynomial(std::move(out));
}

IntPolynomial operator*(const BigInt& s, const IntPolynomial& a) {
    std::vector<BigInt> out(a.c_);
    for (auto& v : out) v *= s;
    return IntPolynomial(std::move(out));
}

std::string IntPolynomial::to_string() const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = c_.size(); i-- > 0;) {
        const BigInt& a = c_[i];
        if (a == 0) continue;
        BigInt mag = abs(a);
        if (first) {
            if (a < 0) os << "-";
        } else {
            os << (a < 0 ? " - " : " + ");
        }
        first = false;
        if (mag != 1 || i == 0) os << mag.get_str();
        if (i >= 1) os << "x";
        if (i >= 2) os << "^" << i;
    }
    return os.str();
}

BigInt poly_eval(const IntPolynomial& f, const BigInt& c) {
    BigInt acc = 0;
    const auto& co = f.coefficients();
    for (auto it = co.rbegin(); it != co.rend(); ++it) acc = acc * c + *it;
    return acc;
}

namespace {

// Pseudo-remainder of a by b (b nonzero): lc(b)^(deg a - deg b + 1) * a mod b.
IntPolynomial pseudo_rem(IntPolynomial a, const IntPolynomial& b) {
    const std::size_t db = b.degree();
    const BigInt& lb = b.leading();
    std::vector<BigInt> r = a.coefficients();
    while (r.size() >= b.coefficients().size() && !r.empty()) {
        const std::size_t dr = r.size() - 1;
        BigInt lr = r.back();
        for (auto& v : r) v *= lb;
        for (std::size_t i = 0; i <= db; ++i) r[dr - db + i] -= lr * b.coefficients()[i];
        while (!r.empty() && r.back() == 0) r.pop_back();
    }
    return IntPolynomial(std::move(r));
}

}  // namespace

IntPolynomial poly_gcd(const IntPolynomial& a, const IntPolynomial& b) {
    IntPolynomial x = a.primitive_part();
    IntPolynomial y = b.primitive_part();
    if (x.degree() < y.degree()) std::swap(x, y);
    while (!y.is_zero()) {
        IntPolynomial r = pseudo_rem(x, y).primitive_part();
        x = std::move(y);
        y = std::move(r);
    }
    return x.primitive_part();
}

bool squarefree_check(const IntPolynomial& f) {
    if (f.is_zero() || f.degree() < 1) throw Error(Errc::InvalidArgument, "squarefree_check needs degree >= 1");
    if (!f.is_monic()) throw Error(Errc::NonMonic, f.to_string());
    return poly_gcd(f, f.derivative()).degree() == 0;
}

Rational fujiwara_root_bound(const IntPolynomial& f) {
    if (f.is_zero()) throw Error(Errc::ZeroPolynomial, "fujiwara_root_bound");
    if (!f.is_monic()) throw Error(Errc::NonMonic, f.to_string());
    const std::size_t d = f.degree();
    if (d < 1) throw Error(Errc::InvalidArgument, "fujiwara_root_bound needs degree >= 1");

    // |a|^(1/k) <= ceil((|a| * S^k)^(1/k)) / S with S = 2^20.
    constexpr unsigned long kScaleBits = 20;
    const BigInt scale = BigInt(1) << kScaleBits;
    Rational best = 0;
    for (std::size_t k = 1; k <= d; ++k) {
        BigInt a = abs(f.coeff(d - k));
        if (a == 0) continue;
        BigInt num = iroot_ceil(a * pow(scale, k), k);
        Rational r(num, scale);
        r.canonicalize();
        if (r > best) best = r;
    }
    // Fujiwara halves the constant term before the root; skipping that only
    // loosens the bound.
    return 2 * best;
}

}  // namespace modcert::arith
