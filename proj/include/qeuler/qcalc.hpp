#pragma once

#include <stdexcept>

#include "qeuler/cyclotomic.hpp"
#include "qeuler/rational.hpp"

namespace qeuler {

/// q-integer [x]_q = (1 - q^x)/(1 - q). Exact; q = 1 is rejected (the q -> 1
/// limit is handled on the float side only).
inline Rat qint(long x, const Rat& q) {
    if (q == 1) throw std::domain_error("qint: q = 1 divides by zero");
    if (x < 0 && q == 0) throw std::domain_error("qint: negative x needs q != 0");
    return (Rat(1) - rat_pow(q, x)) / (Rat(1) - q);
}

/// [x]_{-q} = (1 - (-q)^x)/(1 + q).
inline Rat qint_neg(long x, const Rat& q) {
    if (q == -1) throw std::domain_error("qint_neg: q = -1 divides by zero");
    if (x < 0 && q == 0) throw std::domain_error("qint_neg: negative x needs q != 0");
    return (Rat(1) - rat_pow(-q, x)) / (Rat(1) + q);
}

/// (a : q)_k = (1 - a)(1 - a q) ... (1 - a q^{k-1}); empty product for k = 0.
template <class S>
S qpochhammer(const S& a, const Rat& q, unsigned k) {
    S prod(1);
    S aq = a;
    for (unsigned i = 0; i < k; ++i) {
        prod = prod * (S(1) - aq);
        aq = aq * S(q);
    }
    return prod;
}

inline Rat qpochhammer(const Rat& a, const Rat& q, unsigned k) {
    Rat prod(1), aq = a;
    for (unsigned i = 0; i < k; ++i) {
        prod *= Rat(1) - aq;
        aq *= q;
    }
    return prod;
}

/// Gaussian binomial [n choose k]_q = [n]_q [n-1]_q ... [n-k+1]_q / ([k]_q ... [1]_q).
/// Zero for k > n; exact rational (the quotient is a polynomial in q).
inline Rat gauss_binom(unsigned long n, unsigned long k, const Rat& q) {
    if (k > n) return Rat(0);
    if (q == 1) throw std::domain_error("gauss_binom: q = 1 divides by zero");
    if (k > n - k) k = n - k;
    Rat num(1), den(1);
    for (unsigned long i = 0; i < k; ++i) {
        num *= qint(static_cast<long>(n - i), q);
        den *= qint(static_cast<long>(i + 1), q);
    }
    return num / den;
}

/// Negative-binomial weight C(m+k-1, m).
inline BigInt negbinom_weight(unsigned long m, unsigned long k) { return binomial(m + k - 1, m); }

/// Fractional q-integer [m + u/d]_{q^d} evaluated with integer exponents only:
/// (1 - (q^d)^m q^u) / (1 - q^d). Satisfies [d m + u]_q = [d]_q * [m + u/d]_{q^d}.
inline Rat qint_fractional(long m, long u, unsigned d, const Rat& q) {
    Rat qd = rat_pow(q, static_cast<long>(d));
    if (qd == 1) throw std::domain_error("qint_fractional: q^d = 1 divides by zero");
    return (Rat(1) - rat_pow(qd, m) * rat_pow(q, u)) / (Rat(1) - qd);
}

}  // namespace qeuler
