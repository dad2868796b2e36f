#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

#include "qeuler/characters.hpp"
#include "qeuler/numtheory.hpp"
#include "qeuler/rational.hpp"

namespace qeuler {

/// Working parameters for the truncated fermionic sums: residues are compared
/// mod p^M while sums run over p^N (or d p^N) terms. M <= N keeps the
/// reported precision within what the truncation supports.
struct PadicContext {
    unsigned p;
    unsigned M;
    unsigned N;

    PadicContext(unsigned p_, unsigned M_, unsigned N_) : p(p_), M(M_), N(N_) {
        if (p < 3 || p % 2 == 0 || !is_prime(p)) throw std::invalid_argument("PadicContext: p must be an odd prime");
        if (M == 0) throw std::invalid_argument("PadicContext: M must be positive");
        if (M > N) throw std::invalid_argument("PadicContext: M must not exceed N");
    }
};

struct PadicValue {
    std::uint64_t residue;  // in [0, p^M)
    long valuation_floor;   // claimed lower bound on v_p(error vs the limit)
};

/// Arithmetic mod p^w in 64-bit words.
class ModRing {
public:
    ModRing(std::uint64_t p, unsigned w) : p_(p) {
        mod_ = 1;
        for (unsigned i = 0; i < w; ++i) {
            if (mod_ > (std::uint64_t(1) << 62) / p) throw std::invalid_argument("ModRing: modulus too large");
            mod_ *= p;
        }
    }

    std::uint64_t modulus() const { return mod_; }
    std::uint64_t prime() const { return p_; }

    std::uint64_t from_int(long v) const {
        long r = v % static_cast<long>(mod_);
        if (r < 0) r += static_cast<long>(mod_);
        return static_cast<std::uint64_t>(r);
    }
    std::uint64_t from_bigint(const BigInt& v) const {
        BigInt r = v % BigInt(mod_);
        if (r < 0) r += BigInt(mod_);
        return r.template convert_to<std::uint64_t>();
    }

    std::uint64_t add(std::uint64_t a, std::uint64_t b) const { return (a + b) % mod_; }
    std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return (a + mod_ - b % mod_) % mod_; }
    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
        return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % mod_);
    }
    std::uint64_t pow(std::uint64_t a, std::uint64_t e) const {
        std::uint64_t r = 1;
        a %= mod_;
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }
    std::uint64_t inv(std::uint64_t a) const {
        long long t = 0, nt = 1;
        long long r = static_cast<long long>(mod_), nr = static_cast<long long>(a % mod_);
        while (nr != 0) {
            long long qq = r / nr;
            t -= qq * nt;
            std::swap(t, nt);
            r -= qq * nr;
            std::swap(r, nr);
        }
        if (r != 1) throw std::domain_error("ModRing::inv: argument is not a unit");
        if (t < 0) t += static_cast<long long>(mod_);
        return static_cast<std::uint64_t>(t);
    }

    /// Reduces an exact rational; p in the denominator is an error (and the
    /// meaningful p-integrality check for closed-form values).
    std::uint64_t reduce_rat(const Rat& r) const {
        if (denominator(r) % BigInt(p_) == 0)
            throw std::domain_error("ModRing::reduce_rat: p divides the denominator (value not p-integral)");
        return mul(from_bigint(numerator(r)), inv(from_bigint(denominator(r))));
    }

private:
    std::uint64_t p_;
    std::uint64_t mod_;
};

/// r mod p^M for p-integral r.
inline PadicValue padic_reduce(const Rat& r, const PadicContext& ctx) {
    ModRing ring(ctx.p, ctx.M);
    return {ring.reduce_rat(r), static_cast<long>(ctx.M)};
}

/// Exact alternating sum sum_{j<count} (-1)^j f(j).
inline Rat alternating_sum_exact(const std::function<Rat(long)>& f, std::uint64_t count) {
    Rat acc(0);
    for (std::uint64_t j = 0; j < count; ++j) {
        Rat v = f(static_cast<long>(j));
        acc += (j % 2 == 0) ? v : -v;
    }
    return acc;
}

namespace detail {

inline std::uint64_t checked_level(std::uint64_t base, unsigned exp, double budget) {
    double sz = 1;
    std::uint64_t lvl = 1;
    for (unsigned i = 0; i < exp; ++i) {
        sz *= static_cast<double>(base);
        if (sz > budget) throw std::invalid_argument("fermionic sum: truncation level exceeds the term budget");
        lvl *= base;
    }
    return lvl;
}

}  // namespace detail

/// Truncated fermionic integral over Z_p: sum_{j < p^N} (-1)^j f(j) mod p^M.
/// f must take p-integral rational values (checked per term).
inline PadicValue fermionic_sum(const std::function<Rat(long)>& f, const PadicContext& ctx) {
    std::uint64_t level = detail::checked_level(ctx.p, ctx.N, 2e7);
    ModRing ring(ctx.p, ctx.M);
    std::uint64_t acc = 0;
    for (std::uint64_t j = 0; j < level; ++j) {
        std::uint64_t v = ring.reduce_rat(f(static_cast<long>(j)));
        acc = (j % 2 == 0) ? ring.add(acc, v) : ring.sub(acc, v);
    }
    return {acc, static_cast<long>(ctx.M)};
}

/// Truncated fermionic integral over X = Z/(d p^N) with a real character
/// twist: sum_{j < d p^N} (-1)^j chi(j) f(j) mod p^M. Needs gcd(p, d) = 1.
inline PadicValue fermionic_sum_X(const std::function<Rat(long)>& f, const DirichletChar& chi,
                                  const PadicContext& ctx, unsigned d) {
    if (!chi.is_real()) throw std::invalid_argument("fermionic_sum_X: character must be real-valued");
    if (chi.modulus() != d) throw std::invalid_argument("fermionic_sum_X: character modulus must equal d");
    if (d % ctx.p == 0) throw std::invalid_argument("fermionic_sum_X: p must not divide d");
    std::uint64_t level = detail::checked_level(ctx.p, ctx.N, 2e7);
    if (level > 2e7 / d) throw std::invalid_argument("fermionic_sum_X: truncation level exceeds the term budget");
    level *= d;
    std::vector<int> sgn(d);
    for (unsigned a = 0; a < d; ++a) sgn[a] = chi(a).is_zero() ? 0 : chi.sign(a);
    ModRing ring(ctx.p, ctx.M);
    std::uint64_t acc = 0;
    for (std::uint64_t j = 0; j < level; ++j) {
        int s = sgn[j % d];
        if (s == 0) continue;
        std::uint64_t v = ring.reduce_rat(f(static_cast<long>(j)));
        bool plus = (j % 2 == 0) == (s > 0);
        acc = plus ? ring.add(acc, v) : ring.sub(acc, v);
    }
    return {acc, static_cast<long>(ctx.M)};
}

/// Integrand for the k-fold sums, already reduced mod p^M.
using MultiIntegrand = std::function<std::uint64_t(const std::vector<long>&)>;

/// k-fold truncated fermionic integral over X^k:
///   sum_{j_1..j_k < d p^N} (-1)^{sum j_i} prod chi(j_i) f(j_1..j_k) mod p^M.
/// Budget: (d p^N)^k <= 1e7 terms.
inline PadicValue fermionic_sum_multi(unsigned k, const MultiIntegrand& f, const DirichletChar& chi,
                                      const PadicContext& ctx, unsigned d) {
    if (k == 0) throw std::invalid_argument("fermionic_sum_multi: k must be positive");
    if (!chi.is_real()) throw std::invalid_argument("fermionic_sum_multi: character must be real-valued");
    if (chi.modulus() != d) throw std::invalid_argument("fermionic_sum_multi: character modulus must equal d");
    if (d % ctx.p == 0) throw std::invalid_argument("fermionic_sum_multi: p must not divide d");
    std::uint64_t level = d * detail::checked_level(ctx.p, ctx.N, 1e7);
    detail::checked_level(level, k, 1e7);
    std::vector<int> sgn(d);
    for (unsigned a = 0; a < d; ++a) sgn[a] = chi(a).is_zero() ? 0 : chi.sign(a);
    ModRing ring(ctx.p, ctx.M);
    std::uint64_t acc = 0;
    std::vector<long> j(k, 0);
    while (true) {
        int s = 1;
        long parity = 0;
        for (unsigned i = 0; i < k; ++i) {
            s *= sgn[static_cast<std::uint64_t>(j[i]) % d];
            if (s == 0) break;
            parity += j[i];
        }
        if (s != 0) {
            std::uint64_t v = f(j);
            bool plus = (parity % 2 == 0) == (s > 0);
            acc = plus ? ring.add(acc, v) : ring.sub(acc, v);
        }
        unsigned pos = 0;
        while (pos < k && static_cast<std::uint64_t>(++j[pos]) == level) j[pos++] = 0;
        if (pos == k) break;
    }
    return {acc, static_cast<long>(ctx.M)};
}

/// Modular q-power machinery for q = 1 + p u (the canonical point of the
/// |1-q|_p < 1 disk). The q-bracket [y]_q = (1-q^y)/(1-q) carries a p in the
/// denominator, so its numerator is tracked mod p^{M+1} and divided exactly.
class QBracketEngine {
public:
    QBracketEngine(const PadicContext& ctx, long u = 1)
        : p_(ctx.p), ring_(ctx.p, ctx.M), ring_hi_(ctx.p, ctx.M + 1) {
        if (u <= 0 || static_cast<std::uint64_t>(u) % ctx.p == 0)
            throw std::invalid_argument("QBracketEngine: u must be positive and prime to p");
        u_ = static_cast<std::uint64_t>(u);
        ord_hi_ = 1;
        for (unsigned i = 0; i < ctx.M; ++i) ord_hi_ *= ctx.p;  // order of q mod p^{M+1} divides p^M
        ord_lo_ = ord_hi_ / ctx.p;                              // order of q mod p^M divides p^{M-1}
        if (ord_lo_ == 0) ord_lo_ = 1;
        if (ord_hi_ > 4'000'000) throw std::invalid_argument("QBracketEngine: power table too large");
        std::uint64_t q_hi = ring_hi_.from_int(1 + static_cast<long>(p_ * u_));
        qpow_hi_.resize(ord_hi_);
        qpow_hi_[0] = 1;
        for (std::uint64_t t = 1; t < ord_hi_; ++t) qpow_hi_[t] = ring_hi_.mul(qpow_hi_[t - 1], q_hi);
        std::uint64_t q_lo = ring_.from_int(1 + static_cast<long>(p_ * u_));
        qpow_lo_.resize(ord_lo_);
        qpow_lo_[0] = 1;
        for (std::uint64_t t = 1; t < ord_lo_; ++t) qpow_lo_[t] = ring_.mul(qpow_lo_[t - 1], q_lo);
        inv_neg_u_ = ring_.inv(ring_.from_int(-static_cast<long>(u_)));
    }

    const ModRing& ring() const { return ring_; }
    Rat q_exact() const { return Rat(1) + Rat(static_cast<long>(p_ * u_)); }

    /// q^e mod p^M, e of either sign.
    std::uint64_t qpow(long e) const {
        long r = e % static_cast<long>(ord_lo_);
        if (r < 0) r += static_cast<long>(ord_lo_);
        return qpow_lo_[static_cast<std::size_t>(r)];
    }

    /// [y]_q mod p^M, y of either sign.
    std::uint64_t qint_mod(long y) const {
        long r = y % static_cast<long>(ord_hi_);
        if (r < 0) r += static_cast<long>(ord_hi_);
        std::uint64_t a = ring_hi_.sub(1, qpow_hi_[static_cast<std::size_t>(r)]);  // 1 - q^y, divisible by p
        std::uint64_t b = a / p_;
        return ring_.mul(b % ring_.modulus(), inv_neg_u_);
    }

private:
    std::uint64_t p_, u_;
    ModRing ring_, ring_hi_;
    std::uint64_t ord_hi_, ord_lo_;
    std::vector<std::uint64_t> qpow_hi_, qpow_lo_;
    std::uint64_t inv_neg_u_;
};

/// f(j) = (j_1 + ... + j_k + x)^n mod p^M.
inline MultiIntegrand make_power_integrand(const PadicContext& ctx, unsigned n, long x) {
    auto ring = std::make_shared<ModRing>(ctx.p, ctx.M);
    return [ring, n, x](const std::vector<long>& j) {
        long s = x;
        for (long v : j) s += v;
        return ring->pow(ring->from_int(s), n);
    };
}

/// f(j) = [j_1 + ... + j_k + x]_q^n mod p^M with q = 1 + p u; when h is
/// supplied the weight q^{sum_i (h - i) j_i} is included.
inline MultiIntegrand make_qpower_integrand(const PadicContext& ctx, unsigned n, long x, long u = 1,
                                            std::optional<int> h = std::nullopt) {
    auto eng = std::make_shared<QBracketEngine>(ctx, u);
    return [eng, n, x, h](const std::vector<long>& j) {
        long s = x;
        for (long v : j) s += v;
        std::uint64_t val = eng->ring().pow(eng->qint_mod(s), n);
        if (h) {
            long e = 0;
            for (std::size_t i = 0; i < j.size(); ++i) e += (*h - 1 - static_cast<long>(i)) * j[i];
            val = eng->ring().mul(val, eng->qpow(e));
        }
        return val;
    };
}

/// f(j) = q^{sum_i (m - i) j_i + m x} mod p^M, the moment-identity integrand.
inline MultiIntegrand make_moment_integrand(const PadicContext& ctx, unsigned m, long x, long u = 1) {
    auto eng = std::make_shared<QBracketEngine>(ctx, u);
    return [eng, m, x](const std::vector<long>& j) {
        long e = static_cast<long>(m) * x;
        for (std::size_t i = 0; i < j.size(); ++i) e += (static_cast<long>(m) - 1 - static_cast<long>(i)) * j[i];
        return eng->qpow(e);
    };
}

struct ShiftIdentityReport {
    Rat lhs;
    Rat rhs;
    Rat residual;
    bool residual_zero;
    long valuation;  // v_p(residual); meaningful only when residual != 0
    bool passes;     // residual_zero or valuation >= M
};

/// Exact check of the iterated shift identity
///   I(f_n) + (-1)^{n-1} I(f) = 2 sum_{l<n} (-1)^{n-1-l} f(l)
/// at truncation level p^N, for a polynomial f with p-integral coefficients.
/// Reports v_p(lhs - rhs); it grows with N and must reach M.
inline ShiftIdentityReport shift_identity_check(const std::vector<Rat>& poly, unsigned n_shift,
                                                const PadicContext& ctx) {
    if (n_shift == 0) throw std::invalid_argument("shift_identity_check: shift must be positive");
    for (const Rat& c : poly)
        if (denominator(c) % BigInt(ctx.p) == 0)
            throw std::domain_error("shift_identity_check: coefficients must be p-integral");
    auto eval = [&poly](long t) {
        Rat acc(0);
        for (std::size_t i = poly.size(); i-- > 0;) acc = acc * Rat(t) + poly[i];
        return acc;
    };
    std::uint64_t level = detail::checked_level(ctx.p, ctx.N, 2e7);
    Rat i_f = alternating_sum_exact(eval, level);
    Rat i_fn = alternating_sum_exact([&](long t) { return eval(t + static_cast<long>(n_shift)); }, level);
    Rat lhs = i_fn + (n_shift % 2 == 1 ? i_f : -i_f);
    Rat rhs(0);
    for (unsigned l = 0; l < n_shift; ++l) {
        Rat v = eval(static_cast<long>(l));
        rhs += ((n_shift - 1 - l) % 2 == 0) ? v : -v;
    }
    rhs *= 2;
    ShiftIdentityReport rep;
    rep.lhs = lhs;
    rep.rhs = rhs;
    rep.residual = lhs - rhs;
    rep.residual_zero = rep.residual == 0;
    rep.valuation = rep.residual_zero ? 0 : rat_valuation(rep.residual, BigInt(ctx.p));
    rep.passes = rep.residual_zero || rep.valuation >= static_cast<long>(ctx.M);
    return rep;
}

}  // namespace qeuler
