#include "modcert/congruence/characters.hpp"

#include <numeric>
#include <sstream>
#include <utility>

#include "modcert/error.hpp"

namespace modcert::congruence {

using u64 = std::uint64_t;

DirichletCharacterTable::DirichletCharacterTable(u64 modulus, std::uint32_t order,
                                                 std::map<u64, std::uint32_t> values, std::string label)
    : modulus_(modulus), order_(order), values_(std::move(values)), label_(std::move(label)) {
    if (modulus_ == 0 || order_ == 0) throw Error(Errc::InvalidArgument, "character modulus and order must be positive");
    for (u64 a = 0; a < modulus_; ++a) {
        bool unit = std::gcd(a, modulus_) == 1;
        if (unit != values_.contains(a))
            throw Error(Errc::InvalidArgument, "character table must cover exactly the units mod " +
                                                   std::to_string(modulus_));
    }
    if (exponent(1).value_or(1) != 0) throw Error(Errc::InvalidArgument, "character must send 1 to 1");
    for (const auto& [a, va] : values_) {
        if (va >= order_) throw Error(Errc::InvalidArgument, "character exponent out of range");
        for (const auto& [b, vb] : values_) {
            u64 ab = static_cast<u64>((static_cast<unsigned __int128>(a) * b) % modulus_);
            if (values_.at(ab) != (va + vb) % order_)
                throw Error(Errc::InvalidArgument, "character table is not multiplicative");
        }
    }
}

std::optional<std::uint32_t> DirichletCharacterTable::exponent(u64 a) const {
    auto it = values_.find(a % modulus_);
    if (it == values_.end()) return std::nullopt;
    return it->second;
}

namespace {

u64 powmod(u64 a, u64 e, u64 m) {
    unsigned __int128 r = 1 % m, x = a % m;
    while (e) {
        if (e & 1) r = r * x % m;
        x = x * x % m;
        e >>= 1;
    }
    return static_cast<u64>(r);
}

std::vector<std::pair<u64, unsigned>> factor(u64 n) {
    std::vector<std::pair<u64, unsigned>> out;
    for (u64 p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        unsigned e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        out.emplace_back(p, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

u64 inverse_mod(u64 a, u64 m) {
    long long t = 0, new_t = 1;
    long long r = static_cast<long long>(m), new_r = static_cast<long long>(a % m);
    while (new_r) {
        long long q = r / new_r;
        t = std::exchange(new_t, t - q * new_t);
        r = std::exchange(new_r, r - q * new_r);
    }
    if (r != 1) throw Error(Errc::InvalidArgument, "not invertible");
    return static_cast<u64>(t < 0 ? t + static_cast<long long>(m) : t);
}

// Cyclic generators (with orders) of (Z/M)^*, lifted from prime-power parts.
std::vector<std::pair<u64, u64>> unit_group_generators(u64 M) {
    std::vector<std::pair<u64, u64>> gens;
    for (auto [p, e] : factor(M)) {
        u64 pe = 1;
        for (unsigned i = 0; i < e; ++i) pe *= p;
        const u64 rest = M / pe;
        auto lift = [&](u64 g) -> u64 {
            if (rest == 1) return g % M;
            // x = g mod pe, x = 1 mod rest
            unsigned __int128 x = static_cast<unsigned __int128>(g % pe) * rest % M * inverse_mod(rest % pe, pe) % M;
            x += static_cast<unsigned __int128>(pe) * inverse_mod(pe % rest, rest) % M;
            return static_cast<u64>(x % M);
        };
        if (p == 2) {
            if (e >= 2) gens.emplace_back(lift(pe - 1), 2);
            if (e >= 3) gens.emplace_back(lift(5), pe / 4);
            continue;
        }
        const u64 phi = pe / p * (p - 1);
        auto phi_primes = factor(phi);
        for (u64 g = 2; g < pe; ++g) {
            if (g % p == 0) continue;
            bool primitive = true;
            for (auto [r, _] : phi_primes)
                if (powmod(g, phi / r, pe) == 1) {
                    primitive = false;
                    break;
                }
            if (primitive) {
                gens.emplace_back(lift(g), phi);
                break;
            }
        }
    }
    return gens;
}

}  // namespace

std::vector<DirichletCharacterTable> characters_mod(u64 M, std::uint32_t max_order, bool primitive_only) {
    if (M == 0) throw Error(Errc::InvalidArgument, "modulus must be positive");
    if (M == 1) return {DirichletCharacterTable(1, 1, {{0, 0}}, "chi_1.1")};

    auto gens = unit_group_generators(M);
    // discrete logs of every unit with respect to gens
    std::map<u64, std::vector<u64>> logs;
    std::vector<u64> idx(gens.size(), 0);
    for (;;) {
        unsigned __int128 x = 1;
        for (std::size_t i = 0; i < gens.size(); ++i) x = x * powmod(gens[i].first, idx[i], M) % M;
        logs.emplace(static_cast<u64>(x), idx);
        std::size_t i = 0;
        while (i < gens.size() && ++idx[i] == gens[i].second) idx[i++] = 0;
        if (i == gens.size()) break;
    }

    auto prime_factors = factor(M);
    std::vector<DirichletCharacterTable> out;
    std::vector<u64> j(gens.size(), 0);
    std::size_t serial = 0;
    for (;;) {
        u64 n = 1;
        for (std::size_t i = 0; i < gens.size(); ++i) {
            u64 oi = gens[i].second / std::gcd(j[i], gens[i].second);
            n = std::lcm(n, oi);
        }
        if (n <= max_order) {
            std::map<u64, std::uint32_t> values;
            for (const auto& [a, la] : logs) {
                unsigned __int128 v = 0;
                for (std::size_t i = 0; i < gens.size(); ++i) v += static_cast<unsigned __int128>(j[i]) * la[i] * (n / gens[i].second);
                values.emplace(a, static_cast<std::uint32_t>(v % n));
            }
            bool primitive = true;
            for (auto [r, _] : prime_factors) {
                const u64 sub = M / r;
                bool induced = true;
                for (const auto& [a, v] : values)
                    if (a % sub == 1 % sub && v != 0) {
                        induced = false;
                        break;
                    }
                if (induced) {
                    primitive = false;
                    break;
                }
            }
            if (!primitive_only || primitive) {
                std::ostringstream label;
                label << "chi_" << M << "." << serial << "(order " << n << ")";
                out.emplace_back(M, static_cast<std::uint32_t>(n), std::move(values), label.str());
            }
        }
        ++serial;
        std::size_t i = 0;
        while (i < gens.size() && ++j[i] == gens[i].second) j[i++] = 0;
        if (i == gens.size()) break;
    }
    return out;
}

std::vector<DirichletCharacterTable> default_character_list(u64 conductor, std::uint32_t max_order) {
    std::vector<DirichletCharacterTable> out;
    for (u64 M = 1; M <= conductor; ++M) {
        if (conductor % M) continue;
        for (auto& chi : characters_mod(M, max_order, true)) out.push_back(std::move(chi));
    }
    return out;
}

}  // namespace modcert::congruence
