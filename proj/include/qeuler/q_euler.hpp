#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "qeuler/characters.hpp"
#include "qeuler/qcalc.hpp"

namespace qeuler {

/// Parameter bundle for every q-Euler evaluator: degree index n, weight h,
/// order k, character chi (carrying the odd modulus d), integer argument x,
/// and the deformation parameter q (positive rational, q != 1 in exact mode).
struct QEulerParams {
    unsigned n = 0;
    int h = 0;
    unsigned k = 1;
    DirichletChar chi = DirichletChar::trivial(1);
    long x = 0;
    Rat q = Rat(1, 2);

    unsigned d() const { return chi.modulus(); }

    void validate() const {
        if (k == 0) throw std::invalid_argument("QEulerParams: order k must be positive");
        if (q <= 0) throw std::domain_error("QEulerParams: q must be positive");
        if (q == 1) throw std::domain_error("QEulerParams: q = 1 is not allowed in exact mode");
    }

    QEulerParams with_n(unsigned nn) const { QEulerParams p = *this; p.n = nn; return p; }
    QEulerParams with_h(int hh) const { QEulerParams p = *this; p.h = hh; return p; }
    QEulerParams with_k(unsigned kk) const { QEulerParams p = *this; p.k = kk; return p; }
    QEulerParams with_x(long xx) const { QEulerParams p = *this; p.x = xx; return p; }
    QEulerParams with_chi(const DirichletChar& c) const { QEulerParams p = *this; p.chi = c; return p; }
    QEulerParams with_q(const Rat& qq) const { QEulerParams p = *this; p.q = qq; return p; }
};

namespace detail {

inline void check_tuple_budget(unsigned d, unsigned k) {
    double size = 1;
    for (unsigned i = 0; i < k; ++i) size *= d;
    if (size > 1e6) throw std::invalid_argument("q-Euler closed form: d^k exceeds the evaluation budget");
}

/// Runs body(weight, sign, sum_a, weight_exponent_sum) over all k-tuples
/// (a_1..a_k) in [0,d)^k with nonzero character product. weight is the exact
/// Cyc product of chi(a_j); sign is (-1)^{sum a_j}; wexp = sum_j (h - j) a_j.
template <class F>
void for_each_tuple(const DirichletChar& chi, unsigned k, int h, F&& body) {
    unsigned d = chi.modulus();
    std::vector<unsigned> a(k, 0);
    while (true) {
        bool zero = false;
        for (unsigned j = 0; j < k; ++j)
            if (chi(a[j]).is_zero()) {
                zero = true;
                break;
            }
        if (!zero) {
            Cyc w = chi(a[0]);
            long s = a[0];
            long wexp = (h - 1) * static_cast<long>(a[0]);
            for (unsigned j = 1; j < k; ++j) {
                w = w * chi(a[j]);
                s += a[j];
                wexp += (h - static_cast<long>(j) - 1) * static_cast<long>(a[j]);
            }
            body(w, s % 2 == 0 ? 1 : -1, s, wexp);
        }
        std::size_t pos = 0;
        while (pos < k && ++a[pos] == d) a[pos++] = 0;
        if (pos == k) break;
    }
}

}  // namespace detail

/// E_{n,chi,q}(x), order 1: the finite double sum
///   2 sum_{a<d} chi(a)(-1)^a (1-q)^{-n} sum_l C(n,l)(-1)^l q^{l(a+x)} / (1+q^{ld}).
inline Cyc qe_k1(const QEulerParams& P) {
    P.validate();
    unsigned d = P.d();
    std::vector<Rat> c(P.n + 1);
    for (unsigned l = 0; l <= P.n; ++l) {
        Rat denom = Rat(1) + rat_pow(P.q, static_cast<long>(l) * d);
        c[l] = Rat(binomial(P.n, l)) * (l % 2 ? Rat(-1) : Rat(1)) / denom;
    }
    Cyc acc(0);
    for (unsigned a = 0; a < d; ++a) {
        const Cyc& v = P.chi(a);
        if (v.is_zero()) continue;
        Rat qp = rat_pow(P.q, static_cast<long>(a) + P.x);
        Rat pw(1), inner(0);
        for (unsigned l = 0; l <= P.n; ++l) {
            inner += c[l] * pw;
            pw *= qp;
        }
        acc += v * (inner * (a % 2 ? Rat(-1) : Rat(1)));
    }
    return acc * (Rat(2) / rat_pow(Rat(1) - P.q, P.n));
}

/// E^{(k)}_{n,chi,q}(x): the k-fold closed form with denominators (1+q^{ld})^k.
/// Cost O(d^k (n+1)); guarded by the tuple budget.
inline Cyc qe_order_k(const QEulerParams& P) {
    P.validate();
    detail::check_tuple_budget(P.d(), P.k);
    unsigned d = P.d();
    std::vector<Rat> c(P.n + 1);
    for (unsigned l = 0; l <= P.n; ++l) {
        Rat denom = rat_pow(Rat(1) + rat_pow(P.q, static_cast<long>(l) * d), P.k);
        c[l] = Rat(binomial(P.n, l)) * (l % 2 ? Rat(-1) : Rat(1)) / denom;
    }
    Cyc acc(0);
    detail::for_each_tuple(P.chi, P.k, P.h, [&](const Cyc& w, int sign, long s, long) {
        Rat qp = rat_pow(P.q, P.x + s);
        Rat pw(1), inner(0);
        for (unsigned l = 0; l <= P.n; ++l) {
            inner += c[l] * pw;
            pw *= qp;
        }
        acc += w * (inner * Rat(sign));
    });
    return acc * (rat_pow(Rat(2), P.k) / rat_pow(Rat(1) - P.q, P.n));
}

/// E^{(h,k)}_{n,chi,q}(x): weighted closed form with q-Pochhammer denominators
///   (-q^{d(h-k+l)} : q^d)_k and tuple weights q^{sum_j (h-j) a_j}.
inline Cyc qe_hk(const QEulerParams& P) {
    P.validate();
    detail::check_tuple_budget(P.d(), P.k);
    long d = P.d();
    Rat qd = rat_pow(P.q, d);
    std::vector<Rat> c(P.n + 1);
    for (unsigned l = 0; l <= P.n; ++l) {
        Rat head = -rat_pow(P.q, d * (P.h - static_cast<long>(P.k) + static_cast<long>(l)));
        Rat poch = qpochhammer(head, qd, P.k);
        if (poch == 0) throw std::domain_error("qe_hk: vanishing q-Pochhammer denominator");
        c[l] = Rat(binomial(P.n, l)) * (l % 2 ? Rat(-1) : Rat(1)) / poch;
    }
    Cyc acc(0);
    detail::for_each_tuple(P.chi, P.k, P.h, [&](const Cyc& w, int sign, long s, long wexp) {
        Rat qp = rat_pow(P.q, P.x + s);
        Rat pw(1), inner(0);
        for (unsigned l = 0; l <= P.n; ++l) {
            inner += c[l] * pw;
            pw *= qp;
        }
        acc += w * (inner * Rat(sign) * rat_pow(P.q, wexp));
    });
    return acc * (rat_pow(Rat(2), P.k) / rat_pow(Rat(1) - P.q, P.n));
}

/// The h = k specialization written out on its own: denominators
/// (-q^{ld} : q^d)_k and weights q^{sum (k-j) a_j}. The h field of the
/// parameter bundle is ignored.
inline Cyc qe_kk(const QEulerParams& P) {
    P.validate();
    detail::check_tuple_budget(P.d(), P.k);
    long d = P.d();
    Rat qd = rat_pow(P.q, d);
    std::vector<Rat> c(P.n + 1);
    for (unsigned l = 0; l <= P.n; ++l) {
        Rat poch = qpochhammer(-rat_pow(P.q, static_cast<long>(l) * d), qd, P.k);
        c[l] = Rat(binomial(P.n, l)) * (l % 2 ? Rat(-1) : Rat(1)) / poch;
    }
    Cyc acc(0);
    detail::for_each_tuple(P.chi, P.k, static_cast<int>(P.k), [&](const Cyc& w, int sign, long s, long wexp) {
        Rat qp = rat_pow(P.q, P.x + s);
        Rat pw(1), inner(0);
        for (unsigned l = 0; l <= P.n; ++l) {
            inner += c[l] * pw;
            pw *= qp;
        }
        acc += w * (inner * Rat(sign) * rat_pow(P.q, wexp));
    });
    return acc * (rat_pow(Rat(2), P.k) / rat_pow(Rat(1) - P.q, P.n));
}

/// E^{(h,1)}_{n,chi,q}(x), k = 1 closed form. The printed version of this
/// formula has an inner sum bound of d-1 and drops the h-shift from the
/// denominators and the q^{(h-1)a} weight; it is implemented here in the
/// reading consistent with the k-fold form at k = 1 (bound n, denominators
/// 1 + q^{d(h-1+l)}, weight q^{(h-1)a}). qe_h1_as_printed keeps the literal
/// text for the adjudication report.
inline Cyc qe_h1(const QEulerParams& P) {
    P.validate();
    long d = P.d();
    std::vector<Rat> c(P.n + 1);
    for (unsigned l = 0; l <= P.n; ++l) {
        Rat denom = Rat(1) + rat_pow(P.q, d * (P.h - 1 + static_cast<long>(l)));
        c[l] = Rat(binomial(P.n, l)) * (l % 2 ? Rat(-1) : Rat(1)) / denom;
    }
    Cyc acc(0);
    for (long a = 0; a < d; ++a) {
        const Cyc& v = P.chi(a);
        if (v.is_zero()) continue;
        Rat qp = rat_pow(P.q, a + P.x);
        Rat pw(1), inner(0);
        for (unsigned l = 0; l <= P.n; ++l) {
            inner += c[l] * pw;
            pw *= qp;
        }
        acc += v * (inner * (a % 2 ? Rat(-1) : Rat(1)) * rat_pow(P.q, (P.h - 1) * a));
    }
    return acc * (Rat(2) / rat_pow(Rat(1) - P.q, P.n));
}

inline Cyc qe_h1_as_printed(const QEulerParams& P) {
    P.validate();
    long d = P.d();
    Cyc acc(0);
    for (long a = 0; a < d; ++a) {
        const Cyc& v = P.chi(a);
        if (v.is_zero()) continue;
        Rat inner(0);
        for (long l = 0; l < d; ++l) {
            Rat denom = Rat(1) + rat_pow(P.q, l * d);
            inner += Rat(binomial(P.n, static_cast<unsigned long>(l))) * (l % 2 ? Rat(-1) : Rat(1)) *
                     rat_pow(P.q, l * (P.x + a)) / denom;
        }
        acc += v * (inner * (a % 2 ? Rat(-1) : Rat(1)));
    }
    return acc * (Rat(2) / rat_pow(Rat(1) - P.q, P.n));
}

/// Left side of the moment identity:
///   2^k q^{mx} sum_{a} prod chi(a_j) q^{sum (m-j) a_j} (-1)^{sum a_j}
///   / (-q^{d(m-k)} : q^d)_k.
inline Cyc moment_lhs(unsigned m, const QEulerParams& P) {
    P.validate();
    detail::check_tuple_budget(P.d(), P.k);
    long d = P.d();
    Rat poch = qpochhammer(-rat_pow(P.q, d * (static_cast<long>(m) - static_cast<long>(P.k))),
                           rat_pow(P.q, d), P.k);
    if (poch == 0) throw std::domain_error("moment_lhs: vanishing q-Pochhammer denominator");
    Cyc acc(0);
    detail::for_each_tuple(P.chi, P.k, static_cast<int>(m), [&](const Cyc& w, int sign, long, long wexp) {
        acc += w * (Rat(sign) * rat_pow(P.q, wexp));
    });
    return acc * (rat_pow(Rat(2), P.k) * rat_pow(P.q, static_cast<long>(m) * P.x) / poch);
}

/// Right side of the moment identity: sum_l C(m,l) (q-1)^l E^{(0,k)}_{l,chi,q}(x).
inline Cyc moment_rhs(unsigned m, const QEulerParams& P) {
    P.validate();
    Cyc acc(0);
    for (unsigned l = 0; l <= m; ++l)
        acc += qe_hk(P.with_h(0).with_n(l)) * (Rat(binomial(m, l)) * rat_pow(P.q - Rat(1), l));
    return acc;
}

/// Readings of the right side of the order-lowering recurrence
///   q^{d(h-1)} E^{(h,k)}(x+d) + E^{(h,k)}(x) = 2 sum_{l<d} chi(l)(-1)^l [...]
/// as_printed: the order-(k-1) factor is l-independent, argument x.
/// shifted_arg: argument x+l inside the sum.
/// shifted_arg_weighted: argument x+l and an extra factor q^{(h-1)l} (the
/// reading the shift identity actually produces; see verify reports).
enum class Thm4Reading { as_printed = 0, shifted_arg = 1, shifted_arg_weighted = 2 };

struct Thm4FirstReport {
    Cyc lhs;
    std::array<Cyc, 3> rhs;
    std::array<Cyc, 3> residual;
    std::array<bool, 3> holds;
};

/// Evaluates the left side exactly and all three right-side readings; never
/// throws on mismatch -- the caller decides what the outcome means.
inline Thm4FirstReport verify_thm4_first(const QEulerParams& P) {
    P.validate();
    if (P.k < 2) throw std::invalid_argument("verify_thm4_first: needs k >= 2");
    long d = P.d();
    Thm4FirstReport rep{Cyc(0), {Cyc(0), Cyc(0), Cyc(0)}, {Cyc(0), Cyc(0), Cyc(0)}, {false, false, false}};
    rep.lhs = qe_hk(P.with_x(P.x + d)) * rat_pow(P.q, d * (P.h - 1)) + qe_hk(P);

    QEulerParams lower = P.with_h(P.h - 1).with_k(P.k - 1);
    Cyc fixed = qe_hk(lower);
    Cyc rhs_printed(0), rhs_shift(0), rhs_weighted(0);
    for (long l = 0; l < d; ++l) {
        const Cyc& v = P.chi(l);
        if (v.is_zero()) continue;
        Rat sgn = l % 2 ? Rat(-1) : Rat(1);
        rhs_printed += v * (sgn * Rat(2)) * fixed;
        Cyc shifted = qe_hk(lower.with_x(P.x + l));
        rhs_shift += v * (sgn * Rat(2)) * shifted;
        rhs_weighted += v * (sgn * Rat(2) * rat_pow(P.q, (P.h - 1) * l)) * shifted;
    }
    rep.rhs = {rhs_printed, rhs_shift, rhs_weighted};
    for (int i = 0; i < 3; ++i) {
        rep.residual[i] = rep.lhs - rep.rhs[i];
        rep.holds[i] = rep.residual[i].is_zero();
    }
    return rep;
}

/// Residual of q^x E^{(h+1,k)}_n(x) - (q-1) E^{(h,k)}_{n+1}(x) - E^{(h,k)}_n(x);
/// zero when the recurrence holds.
inline Cyc verify_thm4_second(const QEulerParams& P) {
    P.validate();
    Cyc lhs = qe_hk(P.with_h(P.h + 1)) * rat_pow(P.q, P.x);
    Cyc rhs = qe_hk(P.with_n(P.n + 1)) * (P.q - Rat(1)) + qe_hk(P);
    return lhs - rhs;
}

}  // namespace qeuler
