#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "qeuler/numtheory.hpp"
#include "qeuler/rational.hpp"

namespace qeuler {

namespace detail {

// Dense polynomials, ascending degree, trailing zeros trimmed ({} is the zero
// polynomial).

template <class S>
void poly_trim(std::vector<S>& a) {
    while (!a.empty() && a.back() == S(0)) a.pop_back();
}

inline std::vector<BigInt> poly_mul_int(const std::vector<BigInt>& a, const std::vector<BigInt>& b) {
    if (a.empty() || b.empty()) return {};
    std::vector<BigInt> r(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    poly_trim(r);
    return r;
}

// Exact quotient of integer polynomials, divisor monic.
inline std::vector<BigInt> poly_div_exact_monic(std::vector<BigInt> a, const std::vector<BigInt>& b) {
    if (b.empty() || b.back() != 1) throw std::invalid_argument("poly_div_exact_monic: divisor not monic");
    if (a.size() < b.size()) {
        poly_trim(a);
        if (!a.empty()) throw std::logic_error("poly_div_exact_monic: inexact division");
        return {};
    }
    std::vector<BigInt> q(a.size() - b.size() + 1);
    for (std::size_t i = q.size(); i-- > 0;) {
        BigInt c = a[i + b.size() - 1];
        q[i] = c;
        if (c == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) a[i + j] -= c * b[j];
    }
    poly_trim(a);
    if (!a.empty()) throw std::logic_error("poly_div_exact_monic: inexact division");
    poly_trim(q);
    return q;
}

}  // namespace detail

/// m-th cyclotomic polynomial, integer coefficients ascending. Computed by
/// dividing x^m - 1 by the product of the lower-divisor cyclotomics; cached.
inline const std::vector<BigInt>& cyclotomic_poly(unsigned m) {
    if (m == 0) throw std::invalid_argument("cyclotomic_poly: m must be positive");
    static std::map<unsigned, std::vector<BigInt>> cache;
    static std::mutex mx;
    std::lock_guard<std::mutex> lock(mx);
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;
    // Fill every divisor in increasing order so each step only needs smaller ones.
    for (unsigned d = 1; d <= m; ++d) {
        if (m % d || cache.count(d)) continue;
        std::vector<BigInt> xd_minus_1(d + 1);
        xd_minus_1[0] = -1;
        xd_minus_1[d] = 1;
        std::vector<BigInt> prod{1};
        for (unsigned e = 1; e < d; ++e)
            if (d % e == 0) prod = detail::poly_mul_int(prod, cache.at(e));
        cache[d] = detail::poly_div_exact_monic(std::move(xd_minus_1), prod);
    }
    return cache.at(m);
}

/// Element of the cyclotomic field Q(zeta_m), stored as a coefficient vector
/// of length deg Phi_m in the power basis 1, zeta, ..., zeta^{deg-1}. The
/// representation is canonical for a fixed conductor: equal values have equal
/// coefficients. Mixed-conductor arithmetic lifts both operands to the lcm.
/// Immutable in spirit: all operations return new values.
class Cyc {
public:
    Cyc() : Cyc(Rat(0)) {}
    explicit Cyc(const Rat& r) : m_(1), c_{r} {}
    explicit Cyc(long v) : Cyc(Rat(v)) {}

    /// zeta_m^e (e of either sign).
    static Cyc root_of_unity(unsigned m, long e) {
        long em = e % static_cast<long>(m);
        if (em < 0) em += m;
        std::vector<Rat> raw(static_cast<std::size_t>(em) + 1);
        raw.back() = 1;
        return Cyc(m, std::move(raw));
    }

    /// Value sum_i raw[i] * zeta_m^i, reduced mod Phi_m.
    Cyc(unsigned m, std::vector<Rat> raw) : m_(m) {
        if (m == 0) throw std::invalid_argument("Cyc: conductor must be positive");
        c_ = reduce(std::move(raw), m);
        c_.resize(degree(m), Rat(0));
    }

    unsigned conductor() const { return m_; }
    const std::vector<Rat>& coeffs() const { return c_; }

    bool is_zero() const {
        for (const auto& c : c_)
            if (c != 0) return false;
        return true;
    }

    bool is_rational() const {
        for (std::size_t i = 1; i < c_.size(); ++i)
            if (c_[i] != 0) return false;
        return true;
    }

    Rat rat_value() const {
        if (!is_rational()) throw std::domain_error("Cyc::rat_value: value is not rational");
        return c_[0];
    }

    /// Image under zeta_m = zeta_M^{M/m}; requires m | M.
    Cyc lifted_to(unsigned M) const {
        if (M % m_) throw std::invalid_argument("Cyc::lifted_to: conductor does not divide target");
        if (M == m_) return *this;
        unsigned s = M / m_;
        std::vector<Rat> raw(static_cast<std::size_t>(c_.size() - 1) * s + 1);
        for (std::size_t i = 0; i < c_.size(); ++i) raw[i * s] = c_[i];
        return Cyc(M, std::move(raw));
    }

    friend Cyc operator+(const Cyc& a, const Cyc& b) {
        auto [x, y] = unify(a, b);
        for (std::size_t i = 0; i < y.c_.size(); ++i) x.c_[i] += y.c_[i];
        return x;
    }
    friend Cyc operator-(const Cyc& a, const Cyc& b) {
        auto [x, y] = unify(a, b);
        for (std::size_t i = 0; i < y.c_.size(); ++i) x.c_[i] -= y.c_[i];
        return x;
    }
    Cyc operator-() const {
        Cyc r = *this;
        for (auto& c : r.c_) c = -c;
        return r;
    }
    friend Cyc operator*(const Cyc& a, const Cyc& b) {
        auto [x, y] = unify(a, b);
        std::vector<Rat> prod(x.c_.size() + y.c_.size() - 1);
        for (std::size_t i = 0; i < x.c_.size(); ++i) {
            if (x.c_[i] == 0) continue;
            for (std::size_t j = 0; j < y.c_.size(); ++j) {
                if (y.c_[j] == 0) continue;
                prod[i + j] += x.c_[i] * y.c_[j];
            }
        }
        return Cyc(x.m_, std::move(prod));
    }
    friend Cyc operator*(const Cyc& a, const Rat& s) {
        Cyc r = a;
        for (auto& c : r.c_) c *= s;
        return r;
    }
    friend Cyc operator*(const Rat& s, const Cyc& a) { return a * s; }

    Cyc& operator+=(const Cyc& b) { return *this = *this + b; }
    Cyc& operator-=(const Cyc& b) { return *this = *this - b; }
    Cyc& operator*=(const Cyc& b) { return *this = *this * b; }

    friend bool operator==(const Cyc& a, const Cyc& b) {
        if (a.m_ == b.m_) return a.c_ == b.c_;
        auto [x, y] = unify(a, b);
        return x.c_ == y.c_;
    }
    friend bool operator!=(const Cyc& a, const Cyc& b) { return !(a == b); }

    /// Multiplicative inverse via the extended Euclidean algorithm against
    /// Phi_m (irreducible over Q, so every nonzero value is a unit).
    Cyc inv() const {
        if (is_zero()) throw std::domain_error("Cyc::inv: zero is not invertible");
        if (is_rational()) return Cyc(Rat(1) / c_[0]);
        std::vector<Rat> phi;
        for (const auto& c : cyclotomic_poly(m_)) phi.emplace_back(c);
        std::vector<Rat> r0 = phi, r1 = c_;
        detail::poly_trim(r1);
        std::vector<Rat> s0{}, s1{Rat(1)};  // s tracks the coefficient of *this
        while (true) {
            auto [quot, rem] = divmod(r0, r1);
            std::vector<Rat> s2 = sub(s0, mul(quot, s1));
            if (rem.empty()) break;
            r0 = std::move(r1);
            r1 = std::move(rem);
            s0 = std::move(s1);
            s1 = std::move(s2);
        }
        // r1 is a nonzero constant gcd; s1 * this == r1 (mod Phi).
        if (r1.size() != 1) throw std::logic_error("Cyc::inv: nonconstant gcd against an irreducible modulus");
        Rat g = r1[0];
        std::vector<Rat> inv_coeffs = s1;
        for (auto& c : inv_coeffs) c /= g;
        return Cyc(m_, std::move(inv_coeffs));
    }

    /// Numeric value at zeta_m = exp(2*pi*i/m).
    std::complex<double> embed() const {
        const double two_pi = 6.283185307179586476925286766559;
        std::complex<double> z = std::polar(1.0, two_pi / static_cast<double>(m_));
        std::complex<double> acc = 0.0;
        for (std::size_t i = c_.size(); i-- > 0;) acc = acc * z + rat_to_double(c_[i]);
        return acc;
    }

private:
    static std::size_t degree(unsigned m) { return cyclotomic_poly(m).size() - 1; }

    static std::vector<Rat> reduce(std::vector<Rat> a, unsigned m) {
        const auto& phi = cyclotomic_poly(m);
        std::size_t deg = phi.size() - 1;
        detail::poly_trim(a);
        while (a.size() > deg) {
            Rat lead = a.back();
            std::size_t shift = a.size() - 1 - deg;
            if (lead != 0)
                for (std::size_t j = 0; j <= deg; ++j) a[shift + j] -= lead * Rat(phi[j]);
            a.pop_back();
            detail::poly_trim(a);
        }
        return a;
    }

    static std::pair<Cyc, Cyc> unify(const Cyc& a, const Cyc& b) {
        if (a.m_ == b.m_) return {a, b};
        unsigned M = static_cast<unsigned>(std::lcm(a.m_, b.m_));
        return {a.lifted_to(M), b.lifted_to(M)};
    }

    // Rational-poly helpers for the Euclidean loop.
    static std::vector<Rat> sub(const std::vector<Rat>& a, const std::vector<Rat>& b) {
        std::vector<Rat> r = a;
        if (r.size() < b.size()) r.resize(b.size());
        for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
        detail::poly_trim(r);
        return r;
    }
    static std::vector<Rat> mul(const std::vector<Rat>& a, const std::vector<Rat>& b) {
        if (a.empty() || b.empty()) return {};
        std::vector<Rat> r(a.size() + b.size() - 1);
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
        detail::poly_trim(r);
        return r;
    }
    static std::pair<std::vector<Rat>, std::vector<Rat>> divmod(std::vector<Rat> a, const std::vector<Rat>& b) {
        if (b.empty()) throw std::domain_error("Cyc: polynomial division by zero");
        if (a.size() < b.size()) return {{}, std::move(a)};
        std::vector<Rat> q(a.size() - b.size() + 1);
        Rat lead_inv = Rat(1) / b.back();
        for (std::size_t i = q.size(); i-- > 0;) {
            Rat c = a[i + b.size() - 1] * lead_inv;
            q[i] = c;
            if (c == 0) continue;
            for (std::size_t j = 0; j < b.size(); ++j) a[i + j] -= c * b[j];
        }
        detail::poly_trim(a);
        detail::poly_trim(q);
        return {std::move(q), std::move(a)};
    }

    unsigned m_;
    std::vector<Rat> c_;
};

/// zeta_m^e as a convenience free function.
inline Cyc cyc_root(unsigned m, long e) { return Cyc::root_of_unity(m, e); }

inline Rat scalar_inverse(const Rat& r) {
    if (r == 0) throw std::domain_error("scalar_inverse: zero");
    return Rat(1) / r;
}
inline Cyc scalar_inverse(const Cyc& c) { return c.inv(); }

}  // namespace qeuler
