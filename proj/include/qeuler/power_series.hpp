#pragma once

#include <stdexcept>
#include <vector>

#include "qeuler/cyclotomic.hpp"
#include "qeuler/rational.hpp"

namespace qeuler {

/// Truncated formal power series sum_{i<=T} c_i t^i. Every operation keeps the
/// truncation order; coefficients beyond T are never consulted.
template <class S>
class PowerSeries {
public:
    explicit PowerSeries(unsigned truncation) : c_(truncation + 1, S(0)) {}

    static PowerSeries constant(const S& v, unsigned truncation) {
        PowerSeries s(truncation);
        s.c_[0] = v;
        return s;
    }

    unsigned truncation() const { return static_cast<unsigned>(c_.size() - 1); }
    const S& operator[](std::size_t i) const { return c_.at(i); }
    S& operator[](std::size_t i) { return c_.at(i); }

    friend PowerSeries operator+(const PowerSeries& a, const PowerSeries& b) {
        check_same(a, b);
        PowerSeries r = a;
        for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] += b.c_[i];
        return r;
    }
    friend PowerSeries operator-(const PowerSeries& a, const PowerSeries& b) {
        check_same(a, b);
        PowerSeries r = a;
        for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] -= b.c_[i];
        return r;
    }
    friend PowerSeries operator*(const PowerSeries& a, const PowerSeries& b) {
        check_same(a, b);
        PowerSeries r(a.truncation());
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == S(0)) continue;
            for (std::size_t j = 0; i + j < b.c_.size(); ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
        }
        return r;
    }
    friend PowerSeries operator*(const PowerSeries& a, const S& s) {
        PowerSeries r = a;
        for (auto& c : r.c_) c = c * s;
        return r;
    }
    PowerSeries& operator+=(const PowerSeries& b) { return *this = *this + b; }

    friend bool operator==(const PowerSeries& a, const PowerSeries& b) { return a.c_ == b.c_; }
    friend bool operator!=(const PowerSeries& a, const PowerSeries& b) { return !(a == b); }

    /// Quotient by a series with invertible constant term (recursive scheme:
    /// c_n = (a_n - sum_{i<n} c_i b_{n-i}) / b_0).
    PowerSeries div(const PowerSeries& b) const {
        check_same(*this, b);
        S b0_inv = scalar_inverse(b.c_[0]);
        PowerSeries r(truncation());
        for (std::size_t i = 0; i < c_.size(); ++i) {
            S acc = c_[i];
            for (std::size_t j = 0; j < i; ++j) acc -= r.c_[j] * b.c_[i - j];
            r.c_[i] = acc * b0_inv;
        }
        return r;
    }

    PowerSeries pow(unsigned k) const {
        PowerSeries r = constant(S(1), truncation());
        for (unsigned i = 0; i < k; ++i) r = r * (*this);
        return r;
    }

private:
    static void check_same(const PowerSeries& a, const PowerSeries& b) {
        if (a.c_.size() != b.c_.size()) throw std::invalid_argument("PowerSeries: truncation mismatch");
    }

    std::vector<S> c_;
};

/// e^{ct} truncated at order T: coefficients c^j / j!.
inline PowerSeries<Rat> series_exp_poly(const Rat& c, unsigned truncation) {
    PowerSeries<Rat> s(truncation);
    Rat term(1);
    s[0] = term;
    for (unsigned j = 1; j <= truncation; ++j) {
        term *= c;
        term /= Rat(j);
        s[j] = term;
    }
    return s;
}

inline PowerSeries<Cyc> to_cyc_series(const PowerSeries<Rat>& a) {
    PowerSeries<Cyc> r(a.truncation());
    for (std::size_t i = 0; i <= a.truncation(); ++i) r[i] = Cyc(a[i]);
    return r;
}

}  // namespace qeuler
