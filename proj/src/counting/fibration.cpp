#include "modcert/counting/fibration.hpp"

#include <string>
#include <utility>

#include "modcert/error.hpp"
#include "modcert/parallel.hpp"

namespace modcert::counting {

using arith::BigInt;
using arith::u64;

IntPolynomial WeierstrassFamily::discriminant() const {
    const IntPolynomial& b = a2;
    const IntPolynomial& c = a4;
    const IntPolynomial& d = a6;
    // disc(x^3 + b x^2 + c x + d) = b^2c^2 - 4c^3 - 4b^3d - 27d^2 + 18bcd
    IntPolynomial disc = b * b * c * c - BigInt(4) * (c * c * c) - BigInt(4) * (b * b * b * d) -
                         BigInt(27) * (d * d) + BigInt(18) * (b * c * d);
    return BigInt(16) * disc;
}

EllipticFibration::EllipticFibration(std::string label, WeierstrassFamily affine,
                                     std::optional<WeierstrassFamily> at_infinity)
    : label_(std::move(label)), affine_(std::move(affine)), at_infinity_(std::move(at_infinity)) {
    if (affine_.discriminant().is_zero())
        throw Error(Errc::InvalidArgument, "fibration '" + label_ + "' has identically zero discriminant");
    if (at_infinity_ && at_infinity_->discriminant().is_zero())
        throw Error(Errc::InvalidArgument, "model at infinity of '" + label_ + "' is degenerate");
}

EllipticFibration EllipticFibration::short_form(std::string label, IntPolynomial a, IntPolynomial b) {
    return EllipticFibration(std::move(label), WeierstrassFamily{{}, std::move(a), std::move(b)});
}

void FiberProductVariety::validate() const {
    if (conductor == 0) throw Error(Errc::InvalidArgument, "conductor must be positive");
    u64 n = conductor;
    for (u64 p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        if (!bad_primes.contains(p))
            throw Error(Errc::InvalidArgument, "conductor prime " + std::to_string(p) + " missing from bad_primes");
        while (n % p == 0) n /= p;
    }
    if (n > 1 && !bad_primes.contains(n))
        throw Error(Errc::InvalidArgument, "conductor prime " + std::to_string(n) + " missing from bad_primes");
}

namespace {

u64 disc_mod(const PrimeField& F, u64 b, u64 c, u64 d) {
    u64 b2 = F.mul(b, b);
    u64 c2 = F.mul(c, c);
    u64 t = F.mul(b2, c2);
    t = F.sub(t, F.mul(4, F.mul(c2, c)));
    t = F.sub(t, F.mul(4, F.mul(F.mul(b2, b), d)));
    t = F.sub(t, F.mul(27 % F.modulus(), F.mul(d, d)));
    t = F.add(t, F.mul(18 % F.modulus(), F.mul(F.mul(b, c), d)));
    return F.mul(16 % F.modulus(), t);
}

void require_odd(u64 q) {
    if (q == 2) throw Error(Errc::InvalidArgument, "characteristic 2 counting is not supported");
}

// Quadratic character table and power tables for one field.
struct FieldTables {
    explicit FieldTables(const PrimeField& F) : field(F) {
        const u64 q = F.modulus();
        chi.assign(q, -1);
        chi[0] = 0;
        sq.resize(q);
        cube.resize(q);
        for (u64 x = 0; x < q; ++x) {
            sq[x] = F.mul(x, x);
            cube[x] = F.mul(sq[x], x);
            if (x != 0) chi[sq[x]] = 1;
        }
    }

    std::int64_t trace(u64 a2, u64 a4, u64 a6) const {
        std::int64_t s = 0;
        const u64 q = field.modulus();
        for (u64 x = 0; x < q; ++x) {
            u64 v = field.add(field.add(cube[x], field.mul(a2, sq[x])), field.add(field.mul(a4, x), a6));
            s += chi[v];
        }
        return -s;
    }

    const PrimeField& field;
    std::vector<int> chi;
    std::vector<u64> sq;
    std::vector<u64> cube;
};

std::vector<u64> reduce_coeffs(const IntPolynomial& f, u64 q) {
    std::vector<u64> out;
    out.reserve(f.coefficients().size());
    BigInt m = arith::from_u64(q);
    for (const auto& c : f.coefficients()) {
        BigInt r;
        mpz_fdiv_r(r.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
        out.push_back(arith::to_u64(r));
    }
    return out;
}

u64 eval_mod(const PrimeField& F, const std::vector<u64>& c, u64 t) {
    u64 acc = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = F.add(F.mul(acc, t), *it);
    return acc;
}

FiberValue fiber_value(const FieldTables& T, u64 a2, u64 a4, u64 a6) {
    if (disc_mod(T.field, a2, a4, a6) == 0) return {true, singular_fiber_trace(T.field, a2, a4, a6)};
    return {false, T.trace(a2, a4, a6)};
}

std::vector<FiberValue> profile_with(const FieldTables& T, const EllipticFibration& fib) {
    const PrimeField& F = T.field;
    const u64 q = F.modulus();
    auto r2 = reduce_coeffs(fib.affine().a2, q);
    auto r4 = reduce_coeffs(fib.affine().a4, q);
    auto r6 = reduce_coeffs(fib.affine().a6, q);
    std::vector<FiberValue> out(q + 1);
    for (u64 t = 0; t < q; ++t) out[t] = fiber_value(T, eval_mod(F, r2, t), eval_mod(F, r4, t), eval_mod(F, r6, t));
    if (const auto& inf = fib.at_infinity()) {
        auto c0 = [&](const IntPolynomial& p) {
            auto r = reduce_coeffs(p, q);
            return r.empty() ? u64{0} : r[0];
        };
        out[q] = fiber_value(T, c0(inf->a2), c0(inf->a4), c0(inf->a6));
    } else {
        out[q] = {true, 0};
    }
    return out;
}

struct ProductSum {
    std::int64_t sum = 0;
    std::int64_t smooth_pairs = 0;
};

ProductSum product_sum(const FiberProductVariety& X, u64 q) {
    if (X.bad_primes.contains(q)) throw Error(Errc::BadReductionPrime, "q=" + std::to_string(q));
    require_odd(q);
    PrimeField F(q);
    FieldTables T(F);
    auto p1 = profile_with(T, X.f1);
    auto p2 = profile_with(T, X.f2);
    ProductSum out;
    for (std::size_t i = 0; i < p1.size(); ++i) {
        if (!p1[i].bad && !p2[i].bad) {
            out.sum += p1[i].trace * p2[i].trace;
            ++out.smooth_pairs;
        } else if (X.bad_fiber_mode == BadFiberMode::Corrected) {
            out.sum += p1[i].trace * p2[i].trace;
        }
    }
    return out;
}

}  // namespace

std::int64_t ec_trace(const PrimeField& field, u64 a2, u64 a4, u64 a6) {
    require_odd(field.modulus());
    if (disc_mod(field, a2, a4, a6) == 0)
        throw Error(Errc::SingularFiber, "discriminant vanishes mod " + std::to_string(field.modulus()));
    std::int64_t s = 0;
    for (u64 x = 0; x < field.modulus(); ++x) {
        u64 x2 = field.mul(x, x);
        u64 v = field.add(field.add(field.mul(x2, x), field.mul(a2, x2)), field.add(field.mul(a4, x), a6));
        s += field.legendre(v);
    }
    return -s;
}

std::int64_t ec_trace(std::int64_t a, std::int64_t b, std::uint64_t q) {
    require_odd(q);
    PrimeField F(q);
    return ec_trace(F, 0, F.reduce(a), F.reduce(b));
}

int singular_fiber_trace(const PrimeField& F, u64 a2, u64 a4, u64 a6) {
    // The singular point (x0, 0) is a double root of the cubic; with the third
    // root x1 = -a2 - 2 x0 the tangent cone is y^2 = (x0 - x1)(x - x0)^2.
    for (u64 x = 0; x < F.modulus(); ++x) {
        u64 x2 = F.mul(x, x);
        u64 fx = F.add(F.add(F.mul(x2, x), F.mul(a2, x2)), F.add(F.mul(a4, x), a6));
        if (fx != 0) continue;
        u64 dfx = F.add(F.add(F.mul(3 % F.modulus(), x2), F.mul(F.mul(2, a2), x)), a4);
        if (dfx != 0) continue;
        u64 slope = F.add(F.mul(3 % F.modulus(), x), a2);
        return F.legendre(slope);
    }
    throw Error(Errc::InvalidArgument, "singular_fiber_trace called on a smooth fiber");
}

std::vector<FiberValue> fiber_trace_profile(const EllipticFibration& fibration, std::uint64_t q) {
    require_odd(q);
    PrimeField F(q);
    FieldTables T(F);
    return profile_with(T, fibration);
}

std::int64_t fiber_product_sum(const FiberProductVariety& X, std::uint64_t q) { return product_sum(X, q).sum; }

std::int64_t threefold_trace(const FiberProductVariety& X, std::uint64_t q) {
    ProductSum ps = product_sum(X, q);
    const auto qi = static_cast<std::int64_t>(q);
    std::int64_t a = (X.tate_correction ? qi * ps.smooth_pairs : 0) - ps.sum;
    if (!congruence::purity_check(a, q, 4))
        throw Error(Errc::WeilBoundViolation, "a_" + std::to_string(q) + "(X) = " + std::to_string(a) +
                                                  " for '" + X.label + "'");
    return a;
}

congruence::TraceSystem build_trace_system(const FiberProductVariety& X, std::uint64_t q_max, unsigned threads) {
    X.validate();
    std::vector<u64> primes;
    for (u64 q = 3; q <= q_max; q += 2)
        if (arith::is_prime_u64(q) && !X.bad_primes.contains(q) && X.conductor % q != 0) primes.push_back(q);
    std::vector<std::int64_t> traces(primes.size());
    parallel_for(primes.size(), threads, [&](std::size_t i) { traces[i] = threefold_trace(X, primes[i]); });
    congruence::TraceSystem::Table table;
    for (std::size_t i = 0; i < primes.size(); ++i) table.emplace(primes[i], traces[i]);
    return congruence::TraceSystem(X.conductor, 4, std::move(table));
}

}  // namespace modcert::counting
