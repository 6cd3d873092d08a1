#include "modcert/congruence/ext_field.hpp"

#include <numeric>
#include <string>

#include "modcert/error.hpp"

namespace modcert::congruence {

using arith::BigInt;
using u64 = std::uint64_t;

namespace {

using Poly = std::vector<u64>;  // over F_p, low first, trimmed

void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly poly_mod(Poly a, const Poly& m, const arith::PrimeField& F) {
    trim(a);
    const u64 inv_lead = F.inv(m.back());
    while (a.size() >= m.size()) {
        u64 factor = F.mul(a.back(), inv_lead);
        std::size_t shift = a.size() - m.size();
        for (std::size_t i = 0; i < m.size(); ++i) a[shift + i] = F.sub(a[shift + i], F.mul(factor, m[i]));
        trim(a);
    }
    return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& m, const arith::PrimeField& F) {
    if (a.empty() || b.empty()) return {};
    Poly out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = F.add(out[i + j], F.mul(a[i], b[j]));
    return poly_mod(std::move(out), m, F);
}

Poly poly_powmod(Poly base, BigInt e, const Poly& m, const arith::PrimeField& F) {
    Poly r{1};
    base = poly_mod(std::move(base), m, F);
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) r = poly_mulmod(r, base, m, F);
        base = poly_mulmod(base, base, m, F);
        e >>= 1;
    }
    return r;
}

Poly poly_gcd(Poly a, Poly b, const arith::PrimeField& F) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        Poly r = poly_mod(a, b, F);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

// Rabin: g of degree f is irreducible iff x^(p^f) = x mod g and
// gcd(x^(p^(f/r)) - x, g) = 1 for each prime r | f.
bool is_irreducible(const Poly& g, const arith::PrimeField& F) {
    const unsigned f = static_cast<unsigned>(g.size() - 1);
    const BigInt p = arith::from_u64(F.modulus());
    auto x_pow_p_k = [&](unsigned k) { return poly_powmod(Poly{0, 1}, arith::pow(p, k), g, F); };
    auto minus_x = [&](Poly a) {
        if (a.size() < 2) a.resize(2, 0);
        a[1] = F.sub(a[1], 1);
        trim(a);
        return a;
    };
    if (!minus_x(x_pow_p_k(f)).empty()) return false;
    for (unsigned r = 2; r <= f; ++r) {
        if (f % r) continue;
        bool prime = true;
        for (unsigned s = 2; s * s <= r; ++s)
            if (r % s == 0) prime = false;
        if (!prime) continue;
        Poly h = minus_x(x_pow_p_k(f / r));
        if (poly_gcd(g, h, F).size() != 1) return false;
    }
    return true;
}

}  // namespace

ExtensionField::ExtensionField(u64 p, unsigned degree) : base_(p), degree_(degree) {
    if (degree_ == 0) throw Error(Errc::InvalidArgument, "extension degree must be >= 1");
    order_ = arith::pow(arith::from_u64(p), degree_);
    if (degree_ == 1) {
        modulus_ = {0, 1};
        return;
    }
    // Enumerate monic polynomials x^f + c_{f-1} x^{f-1} + ... + c_0 by counter.
    Poly g(degree_ + 1, 0);
    g[degree_] = 1;
    for (;;) {
        if (g[0] != 0 && is_irreducible(g, base_)) {
            modulus_ = g;
            return;
        }
        std::size_t i = 0;
        while (i < degree_ && ++g[i] == p) g[i++] = 0;
        if (i == degree_) break;
    }
    throw Error(Errc::InternalContradiction, "no irreducible polynomial of degree " + std::to_string(degree_));
}

ExtensionField::Elem ExtensionField::embed(u64 a) const {
    Elem e(degree_, 0);
    e[0] = a % base_.modulus();
    return e;
}

ExtensionField::Elem ExtensionField::add(const Elem& a, const Elem& b) const {
    Elem out(degree_);
    for (unsigned i = 0; i < degree_; ++i) out[i] = base_.add(a[i], b[i]);
    return out;
}

ExtensionField::Elem ExtensionField::scale(const Elem& a, u64 s) const {
    Elem out(degree_);
    s %= base_.modulus();
    for (unsigned i = 0; i < degree_; ++i) out[i] = base_.mul(a[i], s);
    return out;
}

ExtensionField::Elem ExtensionField::mul(const Elem& a, const Elem& b) const {
    if (degree_ == 1) return Elem{base_.mul(a[0], b[0])};
    Poly r = poly_mulmod(a, b, modulus_, base_);
    r.resize(degree_, 0);
    return r;
}

ExtensionField::Elem ExtensionField::pow(Elem a, const BigInt& e) const {
    Elem r = one();
    BigInt k = e;
    while (k > 0) {
        if (mpz_odd_p(k.get_mpz_t())) r = mul(r, a);
        a = mul(a, a);
        k >>= 1;
    }
    return r;
}

RootsOfUnity roots_of_unity(u64 p, std::uint32_t n, unsigned max_degree) {
    if (n == 0) throw Error(Errc::InvalidArgument, "root of unity order must be positive");
    unsigned f = 0;
    for (unsigned k = 1; k <= max_degree; ++k) {
        BigInt pk1 = arith::pow(arith::from_u64(p), k) - 1;
        if (mpz_divisible_ui_p(pk1.get_mpz_t(), n)) {
            f = k;
            break;
        }
    }
    if (f == 0)
        throw Error(Errc::CharacterEmbeddingUnavailable, "no primitive " + std::to_string(n) + "-th root of unity in F_" +
                                                             std::to_string(p) + "^f for f <= " +
                                                             std::to_string(max_degree));
    ExtensionField K(p, f);
    std::vector<std::uint32_t> n_primes;
    for (std::uint32_t r = 2, m = n; r <= m; ++r) {
        if (m % r) continue;
        n_primes.push_back(r);
        while (m % r == 0) m /= r;
    }
    const BigInt cofactor = (K.order() - 1) / n;
    // Walk elements a0 + a1 x + ... in counter order until h^cofactor has order n.
    ExtensionField::Elem h(f, 0);
    h[0] = 1;
    for (;;) {
        ExtensionField::Elem z = K.pow(h, cofactor);
        bool exact = true;
        for (auto r : n_primes)
            if (K.pow(z, BigInt(n / r)) == K.one()) {
                exact = false;
                break;
            }
        if (exact) {
            RootsOfUnity out{K, {}};
            ExtensionField::Elem zj = K.one();
            for (std::uint32_t j = 1; j <= n; ++j) {
                zj = K.mul(zj, z);
                if (std::gcd(j, n) == 1) out.primitive_roots.push_back(zj);
            }
            return out;
        }
        std::size_t i = 0;
        while (i < f && ++h[i] == p) h[i++] = 0;
        if (i == f) break;
    }
    throw Error(Errc::InternalContradiction, "no element of order " + std::to_string(n));
}

}  // namespace modcert::congruence
