#include <catch2/catch_amalgamated.hpp>

#include "qeuler/series_eval.hpp"

using namespace qeuler;

namespace {
const DirichletChar kTrivial = DirichletChar::trivial(1);
const DirichletChar kQuad3 = DirichletChar::quadratic(3);
}  // namespace

TEST_CASE("blocked order-1 series") {
    // n = 0, trivial d = 1: the paired series evaluates to 1.
    QEulerParams P0{0, 0, 1, kTrivial, 0, Rat(1, 2)};
    REQUIRE(std::abs(qe_k1_series(P0, 2, 30).real() - 1.0) < 1e-12);

    // n = 1, q = 1/2: -2/3 after 30 blocks.
    QEulerParams P1{1, 0, 1, kTrivial, 0, Rat(1, 2)};
    REQUIRE(std::abs(qe_k1_series(P1, 2, 30).real() + 2.0 / 3.0) < 1e-8);

    // d = 3 quadratic, n = 2: the series hits the closed form.
    QEulerParams P3{2, 0, 1, kQuad3, 0, Rat(1, 2)};
    double closed = rat_to_double(qe_k1(P3).rat_value());
    REQUIRE(std::abs(qe_k1_series(P3, 6, 30).real() - closed) < 1e-8);

    REQUIRE_THROWS_AS(qe_k1_series(P3, 4, 30), std::invalid_argument);  // not a multiple of 2d
    REQUIRE_THROWS_AS(qe_k1_series(P1.with_q(Rat(3, 2)), 2, 30), std::domain_error);
}

TEST_CASE("negative binomial scalar identity at the boundary") {
    // sum_m C(m+k-1,m)(-1)^m z^m = (1+z)^{-k} for z = q^{ld} < 1, summed directly.
    double q = 0.5;
    for (unsigned k = 1; k <= 3; ++k)
        for (unsigned l = 1; l <= 3; ++l) {
            double z = std::pow(q, static_cast<double>(l));
            double direct = 0.0, term = 1.0;
            for (unsigned m = 0; m < 400; ++m) {
                direct += (m % 2 == 0 ? term : -term);
                term *= z * (static_cast<double>(m) + k) / (static_cast<double>(m) + 1.0);
            }
            REQUIRE(std::abs(direct - std::pow(1.0 + z, -static_cast<double>(k))) < 1e-10);
            // The accelerated evaluator agrees, including at z arbitrarily near 1.
            REQUIRE(std::abs(detail::negbinom_alternating_sum(k, z, 1e-13) -
                             std::pow(1.0 + z, -static_cast<double>(k))) < 1e-10);
        }
    for (unsigned k = 1; k <= 3; ++k)
        for (double s : {0.95, 0.999, 0.999999})
            REQUIRE(std::abs(detail::negbinom_alternating_sum(k, s, 1e-13) -
                             std::pow(1.0 + s, -static_cast<double>(k))) < 1e-10);
}

TEST_CASE("order-k series route") {
    // k = 1: plain blocked agreement at 1e-8.
    QEulerParams P1{3, 0, 1, kQuad3, 1, Rat(1, 2)};
    SeriesResult r1 = qe_order_k_series(P1);
    REQUIRE(std::abs(r1.value - qe_order_k(P1).embed()) < 1e-8);

    // d = 1, k = 2, n = 1: matches the closed form after extrapolation.
    QEulerParams P2{1, 0, 2, kTrivial, 0, Rat(1, 2)};
    SeriesResult r2 = qe_order_k_series(P2);
    REQUIRE(std::abs(r2.value - qe_order_k(P2).embed()) < 1e-6);
    REQUIRE(r2.converged);

    // Rough corner of the verification grid.
    QEulerParams P3{5, 0, 3, kQuad3, 1, Rat(2, 3)};
    SeriesResult r3 = qe_order_k_series(P3);
    REQUIRE(std::abs(r3.value - qe_order_k(P3).embed()) < 1e-6);

    REQUIRE_THROWS_AS(qe_order_k_series(P2.with_q(Rat(5, 4))), std::domain_error);
}

TEST_CASE("abel grid validation") {
    AbelConfig bad;
    bad.t_grid = {Rat(1, 2), Rat(1, 3)};
    REQUIRE_THROWS_AS(bad.validate(), std::invalid_argument);
    bad.t_grid = {Rat(1, 2), Rat(3, 2)};
    REQUIRE_THROWS_AS(bad.validate(), std::invalid_argument);
    bad.t_grid.clear();
    REQUIRE_THROWS_AS(bad.validate(), std::invalid_argument);
    REQUIRE_NOTHROW(AbelConfig::defaults().validate());
}

TEST_CASE("Gaussian-binomial generating identity where convergent") {
    // sum_m C(m+k-1,m)_Q (-s)^m = 1/((-s : Q)_k) for |s| < 1, summed directly.
    Rat q(1, 2);
    for (unsigned d : {1u, 3u})
        for (unsigned k = 1; k <= 3; ++k)
            for (int h = 0; h <= 3; ++h)
                for (int l = static_cast<int>(k) - h + 1; l <= static_cast<int>(k) - h + 3; ++l) {
                    Rat Q = rat_pow(q, static_cast<long>(d));
                    Rat s = rat_pow(q, static_cast<long>(d) * (h - static_cast<int>(k) + l));
                    if (s >= 1) continue;
                    double acc = 0.0;
                    Rat gb(1);
                    for (unsigned m = 0; m < 600; ++m) {
                        acc += rat_to_double(gb) * (m % 2 == 0 ? 1.0 : -1.0) *
                               std::pow(rat_to_double(s), static_cast<double>(m));
                        gb *= qint(static_cast<long>(m + k), Q) / qint(static_cast<long>(m + 1), Q);
                    }
                    double rhs = 1.0 / rat_to_double(qpochhammer(-s, Q, k));
                    REQUIRE(std::abs(acc - rhs) < 1e-10);
                }
}

TEST_CASE("weighted series resummation equals the closed form") {
    // k = 1 reduces to the weight-twisted order-1 series.
    for (int h = 0; h <= 3; ++h)
        for (unsigned n = 0; n <= 3; ++n) {
            QEulerParams P{n, h, 1, kQuad3, 0, Rat(1, 2)};
            HkSeriesResult r = qe_hk_series_exact(P);
            REQUIRE(r.exact == qe_h1(P));
        }
    // d = 1, k = 2, h = 2, n = 0.
    QEulerParams P{0, 2, 2, kTrivial, 0, Rat(1, 2)};
    REQUIRE(std::abs(qe_hk_series(P).value - qe_hk(P).embed()) < 1e-6);

    // Divergent-at-every-float-t cases (h < k) resum exactly.
    for (int h = 0; h <= 3; ++h)
        for (unsigned k = 1; k <= 3; ++k)
            for (unsigned n = 0; n <= 4; ++n) {
                QEulerParams Q{n, h, k, kQuad3, 1, Rat(2, 3)};
                REQUIRE(qe_hk_series_exact(Q).exact == qe_hk(Q));
            }

    // Complex character: the resummation runs in cyclotomic arithmetic.
    for (const auto& chi : DirichletChar::enumerate(5)) {
        if (chi.is_real()) continue;
        QEulerParams Q{2, 1, 2, chi, 0, Rat(1, 2)};
        REQUIRE(qe_hk_series_exact(Q).exact == qe_hk(Q));
        break;
    }
}

TEST_CASE("direct float check of the weighted series where it converges") {
    // h > k: every constituent is geometric with ratio < 1; brute summation
    // of the printed series cross-validates the exact resummation.
    QEulerParams P{2, 3, 2, kQuad3, 1, Rat(1, 2)};
    double q = 0.5;
    unsigned d = 3;
    double Q = std::pow(q, 3.0);
    double sum = 0.0;
    Rat gb(1);
    for (unsigned m = 0; m < 300; ++m) {
        double w = 0.0;
        for (unsigned a1 = 0; a1 < d; ++a1)
            for (unsigned a2 = 0; a2 < d; ++a2) {
                int c1 = a1 % 3 == 0 ? 0 : (a1 % 3 == 1 ? 1 : -1);
                int c2 = a2 % 3 == 0 ? 0 : (a2 % 3 == 1 ? 1 : -1);
                if (c1 * c2 == 0) continue;
                double sgn = ((a1 + a2) % 2 == 0 ? 1.0 : -1.0) * c1 * c2;
                double wexp = std::pow(q, (3.0 - 1.0) * a1 + (3.0 - 2.0) * a2);
                double u = 1.0 + a1 + a2;  // x + sum a
                double bracket = (1.0 - std::pow(Q, static_cast<double>(m)) * std::pow(q, u)) / (1.0 - Q);
                w += sgn * wexp * bracket * bracket;
            }
        double pref = rat_to_double(gb) * (m % 2 == 0 ? 1.0 : -1.0) *
                      std::pow(std::pow(q, 3.0 * (3.0 - 2.0)), static_cast<double>(m));
        sum += pref * w;
        gb *= qint(static_cast<long>(m + 2), rat_pow(Rat(1, 2), 3)) /
              qint(static_cast<long>(m + 1), rat_pow(Rat(1, 2), 3));
    }
    double qd_n = std::pow((1 - std::pow(q, 3.0)) / (1 - q), 2.0);
    sum *= 4.0 * qd_n;  // 2^k [d]_q^n
    REQUIRE(std::abs(sum - rat_to_double(qe_hk_series_exact(P).exact.rat_value())) < 1e-9);
}

TEST_CASE("compressed single-index series") {
    // k = 1: the compression is vacuous and must match the order-1 value.
    QEulerParams P1{2, 0, 1, kQuad3, 0, Rat(1, 2)};
    SeriesResult c1 = eq11_compressed_series(P1);
    REQUIRE(std::abs(c1.value - qe_k1(P1).embed()) < 1e-8);

    // d = 1: chi(m) = 1 and the compressed index equals dm; matches.
    QEulerParams P2{1, 0, 2, kTrivial, 0, Rat(1, 2)};
    SeriesResult c2 = eq11_compressed_series(P2);
    REQUIRE(std::abs(c2.value - qe_order_k(P2).embed()) < 1e-6);

    // d = 3, k = 2: the absorption step fails; residual is reported, and it
    // is genuinely nonzero.
    QEulerParams P3{1, 0, 2, kQuad3, 0, Rat(1, 2)};
    SeriesResult c3 = eq11_compressed_series(P3);
    REQUIRE(std::abs(c3.value - qe_order_k(P3).embed()) > 1e-3);
}

TEST_CASE("series routes with a complex character") {
    for (const auto& chi : DirichletChar::enumerate(5)) {
        if (chi.is_real()) continue;
        // Order-k Abel route runs in complex arithmetic.
        QEulerParams P{2, 0, 2, chi, 0, Rat(1, 2)};
        SeriesResult r = qe_order_k_series(P);
        REQUIRE(std::abs(r.value - qe_order_k(P).embed()) < 1e-6);
        // Blocked order-1 route.
        QEulerParams P1{1, 0, 1, chi, 1, Rat(1, 2)};
        REQUIRE(std::abs(qe_k1_series(P1, 10, 40) - qe_k1(P1).embed()) < 1e-8);
    }
}

TEST_CASE("epsilon antilimit on synthetic geometric data") {
    // S_i = 3 + 2 (-1/2)^i + 5 (-4)^i: antilimit 3, divergent transient included.
    std::vector<Rat> nodes{Rat(-1, 2), Rat(-4)};
    std::vector<Rat> S;
    for (int i = 0; i < 10; ++i)
        S.push_back(Rat(3) + Rat(2) * rat_pow(Rat(-1, 2), i) + Rat(5) * rat_pow(Rat(-4), i));
    auto anti = detail::wynn_epsilon_antilimit<Rat>(S, 4);
    REQUIRE(anti.has_value());
    REQUIRE(*anti == Rat(3));
    REQUIRE(detail::geometric_antilimit_fit<Rat>(S, nodes) == Rat(3));
    // The fit also tolerates a redundant candidate node.
    std::vector<Rat> nodes3{Rat(-1, 2), Rat(-4), Rat(-7)};
    REQUIRE(detail::geometric_antilimit_fit<Rat>(S, nodes3) == Rat(3));
}
