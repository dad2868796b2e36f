#pragma once

#include "qeuler/characters.hpp"
#include "qeuler/power_series.hpp"

namespace qeuler {

inline constexpr unsigned kDefaultTruncation = 16;

namespace detail {

/// The q-free generating kernel 2 sum_{l<d} (-1)^l chi(l) e^{lt} / (e^{dt} + 1).
inline PowerSeries<Cyc> euler_kernel(const DirichletChar& chi, unsigned T) {
    unsigned d = chi.modulus();
    PowerSeries<Cyc> num(T);
    for (unsigned l = 0; l < d; ++l) {
        const Cyc& v = chi(static_cast<long>(l));
        if (v.is_zero()) continue;
        Cyc w = (l % 2 == 0) ? v : -v;
        num += to_cyc_series(series_exp_poly(Rat(l), T)) * (w * Rat(2));
    }
    PowerSeries<Rat> den = series_exp_poly(Rat(d), T);
    den[0] += Rat(1);  // e^{dt} + 1; constant term 2 is a unit
    return num.div(to_cyc_series(den));
}

}  // namespace detail

/// Generalized Euler polynomial value: n! times the n-th coefficient of the
/// kernel times e^{xt}, all in exact truncated-series arithmetic.
inline Cyc euler_generalized_order_k(unsigned n, unsigned k, const DirichletChar& chi, long x,
                                     unsigned T = kDefaultTruncation) {
    if (n > T) throw std::invalid_argument("euler_generalized_order_k: n exceeds the truncation order");
    PowerSeries<Cyc> f = detail::euler_kernel(chi, T).pow(k);
    if (x != 0) f = f * to_cyc_series(series_exp_poly(Rat(x), T));
    Rat nfact(1);
    for (unsigned j = 2; j <= n; ++j) nfact *= Rat(j);
    return f[n] * nfact;
}

inline Cyc euler_generalized(unsigned n, const DirichletChar& chi, long x, unsigned T = kDefaultTruncation) {
    return euler_generalized_order_k(n, 1, chi, x, T);
}

}  // namespace qeuler
