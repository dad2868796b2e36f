#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

namespace qeuler {

inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t f = 2; f * f <= n; ++f)
        if (n % f == 0) return false;
    return true;
}

/// Prime-power factorization as (p, p^e) pairs, ascending p.
inline std::vector<std::pair<std::uint64_t, std::uint64_t>> factor_prime_powers(std::uint64_t n) {
    std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        std::uint64_t pe = 1;
        while (n % p == 0) {
            n /= p;
            pe *= p;
        }
        out.emplace_back(p, pe);
    }
    if (n > 1) out.emplace_back(n, n);
    return out;
}

inline std::uint64_t euler_phi(std::uint64_t n) {
    std::uint64_t r = 1;
    for (auto [p, pe] : factor_prime_powers(n)) r *= pe - pe / p;
    return r;
}

inline std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
    unsigned __int128 r = 1, x = b % m;
    while (e) {
        if (e & 1) r = r * x % m;
        x = x * x % m;
        e >>= 1;
    }
    return static_cast<std::uint64_t>(r);
}

/// Smallest primitive root mod p^e, p an odd prime.
inline std::uint64_t primitive_root(std::uint64_t pe) {
    auto fac = factor_prime_powers(pe);
    if (fac.size() != 1 || fac[0].first == 2) throw std::invalid_argument("primitive_root: odd prime power required");
    std::uint64_t phi = euler_phi(pe);
    std::vector<std::uint64_t> prime_factors;
    for (auto [p, q] : factor_prime_powers(phi)) prime_factors.push_back(p);
    for (std::uint64_t g = 2; g < pe; ++g) {
        if (std::gcd(g, pe) != 1) continue;
        bool ok = true;
        for (std::uint64_t p : prime_factors)
            if (pow_mod(g, phi / p, pe) == 1) {
                ok = false;
                break;
            }
        if (ok) return g;
    }
    throw std::logic_error("primitive_root: none found");
}

}  // namespace qeuler
