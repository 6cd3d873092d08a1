#include "modcert/qexpansion/eta.hpp"

#include <numeric>
#include <sstream>
#include <utility>

#include "modcert/error.hpp"

namespace modcert::qexpansion {

EtaQuotient::EtaQuotient(std::vector<EtaFactor> factors, std::uint64_t level)
    : factors_(std::move(factors)), level_(level) {
    if (factors_.empty()) throw Error(Errc::InvalidArgument, "eta quotient needs at least one factor");
    if (level_ == 0) throw Error(Errc::InvalidArgument, "level must be positive");
    long long sum_r = 0;
    long long sum_mr = 0;
    for (const auto& f : factors_) {
        if (f.scale == 0) throw Error(Errc::InvalidArgument, "eta scale must be positive");
        if (level_ % f.scale != 0)
            throw Error(Errc::InvalidArgument, "eta scale " + std::to_string(f.scale) + " does not divide the level");
        sum_r += f.exponent;
        sum_mr += static_cast<long long>(f.scale) * f.exponent;
    }
    if (sum_r <= 0 || sum_r % 2 != 0)
        throw Error(Errc::InvalidArgument, "sum of exponents must be even and positive");
    if (sum_mr < 0 || sum_mr % 24 != 0)
        throw Error(Errc::InvalidArgument, "sum of m*r must be a nonnegative multiple of 24");
    weight_ = static_cast<int>(sum_r / 2);
    lead_ = static_cast<std::uint64_t>(sum_mr / 24);
}

std::string EtaQuotient::to_string() const {
    std::ostringstream os;
    for (const auto& f : factors_) {
        os << "eta(";
        if (f.scale != 1) os << f.scale;
        os << "t)^" << f.exponent;
    }
    return os.str();
}

namespace {

// (sum_k (-1)^k q^{m k(3k-1)/2})^r truncated to degree len-1, via the power
// recurrence g_n = 1/n sum_{j>=1} ((r+1) j - n) f_j g_{n-j} for f_0 = 1.
std::vector<BigInt> eta_factor_power(std::uint64_t m, int r, std::size_t len) {
    std::vector<std::pair<std::size_t, int>> terms;  // sparse pentagonal series, j >= 1
    for (long long k = 1;; ++k) {
        std::size_t e1 = static_cast<std::size_t>(m * (k * (3 * k - 1) / 2));
        if (e1 >= len) break;
        int sign = (k % 2) ? -1 : 1;
        terms.emplace_back(e1, sign);
        std::size_t e2 = static_cast<std::size_t>(m * (k * (3 * k + 1) / 2));
        if (e2 < len) terms.emplace_back(e2, sign);
    }
    std::vector<BigInt> g(len);
    if (len == 0) return g;
    g[0] = 1;
    BigInt acc;
    for (std::size_t n = 1; n < len; ++n) {
        acc = 0;
        for (const auto& [j, s] : terms) {
            if (j > n) continue;
            long w = static_cast<long>(r + 1) * static_cast<long>(j) - static_cast<long>(n);
            if (w == 0 || g[n - j] == 0) continue;
            if (s > 0)
                acc += g[n - j] * w;
            else
                acc -= g[n - j] * w;
        }
        mpz_divexact_ui(g[n].get_mpz_t(), acc.get_mpz_t(), n);
    }
    return g;
}

std::vector<BigInt> mul_truncated(const std::vector<BigInt>& a, const std::vector<BigInt>& b, std::size_t len) {
    std::vector<BigInt> out(len);
    for (std::size_t i = 0; i < len && i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; i + j < len && j < b.size(); ++j) out[i + j] += a[i] * b[j];
    }
    return out;
}

}  // namespace

std::vector<BigInt> eta_expand(const EtaQuotient& eta, std::size_t precision, std::size_t hard_cap) {
    if (precision == 0) throw Error(Errc::InvalidArgument, "precision must be positive");
    if (precision > hard_cap)
        throw Error(Errc::PrecisionExceeded,
                    "precision " + std::to_string(precision) + " exceeds cap " + std::to_string(hard_cap));
    std::vector<BigInt> out(precision + 1);
    const std::size_t lead = eta.leading_exponent();
    if (lead > precision) return out;
    const std::size_t len = precision - lead + 1;

    std::vector<BigInt> series(len);
    series[0] = 1;
    for (const auto& f : eta.factors()) {
        if (f.exponent == 0) continue;
        series = mul_truncated(series, eta_factor_power(f.scale, f.exponent, len), len);
    }
    for (std::size_t i = 0; i < len; ++i) out[lead + i] = std::move(series[i]);
    return out;
}

namespace {

// Smallest prime factor table up to n.
std::vector<std::uint64_t> smallest_prime_factors(std::size_t n) {
    std::vector<std::uint64_t> spf(n + 1, 0);
    for (std::size_t i = 2; i <= n; ++i) {
        if (spf[i]) continue;
        for (std::size_t j = i; j <= n; j += i)
            if (!spf[j]) spf[j] = i;
    }
    return spf;
}

}  // namespace

HeckeCheck hecke_selfcheck(const std::vector<BigInt>& coeffs, int weight, std::uint64_t level) {
    if (level == 0) throw Error(Errc::InvalidArgument, "level must be positive");
    if (coeffs.size() < 2 || coeffs[1] != 1) throw Error(Errc::NotNormalized, "c_1 must equal 1");
    if (weight < 1) throw Error(Errc::InvalidArgument, "weight must be positive");
    const std::size_t n_max = coeffs.size() - 1;
    auto spf = smallest_prime_factors(n_max);
    HeckeCheck result;
    for (std::size_t n = 2; n <= n_max; ++n) {
        const std::uint64_t p = spf[n];
        std::size_t pe = 1;
        std::size_t m = n;
        while (m % p == 0) {
            m /= p;
            pe *= p;
        }
        if (m != 1) {
            if (coeffs[n] != coeffs[pe] * coeffs[m]) {
                result.ok = false;
                result.first_violation = HeckeViolation{
                    n, "c_" + std::to_string(n) + " != c_" + std::to_string(pe) + " * c_" + std::to_string(m)};
                return result;
            }
        } else if (n != p) {
            // n = p^(r+1) with r >= 1
            const std::size_t pr = n / p;
            const std::size_t prm1 = pr / p;
            BigInt pk = level % p == 0 ? BigInt(0)
                                       : arith::pow(arith::from_u64(p), static_cast<unsigned long>(weight - 1));
            BigInt expected = coeffs[p] * coeffs[pr] - pk * coeffs[prm1];
            if (coeffs[n] != expected) {
                result.ok = false;
                result.first_violation = HeckeViolation{
                    n, "c_" + std::to_string(n) + " != c_" + std::to_string(p) + " c_" + std::to_string(pr) + " - " +
                           std::to_string(p) + "^" + std::to_string(weight - 1) + " c_" + std::to_string(prm1)};
                return result;
            }
        }
    }
    return result;
}

}  // namespace modcert::qexpansion
