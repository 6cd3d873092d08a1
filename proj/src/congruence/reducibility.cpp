#include "modcert/congruence/reducibility.hpp"

#include <numeric>
#include <string>

#include "modcert/congruence/ext_field.hpp"
#include "modcert/error.hpp"
#include "modcert/parallel.hpp"

namespace modcert::congruence {

namespace {

struct Hit {
    bool found = false;
    std::uint32_t power = 0;
};

Hit scan_one(const TraceSystem& T, std::uint64_t p, const DirichletCharacterTable& chi, unsigned max_degree) {
    if (T.conductor() % chi.modulus() != 0)
        throw Error(Errc::InvalidArgument, "character modulus " + std::to_string(chi.modulus()) +
                                               " does not divide the conductor");
    const std::uint32_t n = chi.order();
    RootsOfUnity roots = roots_of_unity(p, n, max_degree);
    const ExtensionField& K = roots.field;
    const arith::PrimeField& F = K.base();
    const unsigned long wexp = static_cast<unsigned long>(T.weight() - 1);

    std::uint32_t j = 0;
    for (const auto& zeta : roots.primitive_roots) {
        do ++j;
        while (std::gcd(j, n) != 1);
        bool all = true;
        for (const auto& [q, a] : T.traces()) {
            auto e = chi.exponent(q);
            if (!e) {
                all = false;
                break;
            }
            auto eps = K.pow(zeta, arith::BigInt(*e));
            auto eps_inv = K.pow(zeta, arith::BigInt((n - *e) % n));
            std::uint64_t qk = F.pow(q % p, wexp);
            auto rhs = K.add(eps, K.scale(eps_inv, qk));
            if (rhs != K.embed(F.reduce(a))) {
                all = false;
                break;
            }
        }
        if (all) return {true, j};
    }
    return {};
}

}  // namespace

ReducibilityVerdict reducibility_scan(const TraceSystem& T, std::uint64_t p,
                                      const std::vector<DirichletCharacterTable>& chars, unsigned max_degree,
                                      unsigned threads) {
    if (!arith::is_prime_u64(p)) throw Error(Errc::NotPrime, "residual prime " + std::to_string(p));
    std::vector<Hit> hits(chars.size());
    parallel_for(chars.size(), threads, [&](std::size_t i) { hits[i] = scan_one(T, p, chars[i], max_degree); });
    ReducibilityVerdict v;
    v.characters_scanned = chars.size();
    for (std::size_t i = 0; i < hits.size(); ++i) {
        if (!hits[i].found) continue;
        v.pattern_found = true;
        v.character_index = i;
        v.embedding_power = hits[i].power;
        break;
    }
    return v;
}

}  // namespace modcert::congruence
