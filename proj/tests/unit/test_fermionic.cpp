#include <catch2/catch_amalgamated.hpp>

#include "qeuler/euler_classical.hpp"
#include "qeuler/fermionic.hpp"
#include "qeuler/q_euler.hpp"

using namespace qeuler;

namespace {
const DirichletChar kTrivial = DirichletChar::trivial(1);
const DirichletChar kQuad3 = DirichletChar::quadratic(3);
}  // namespace

TEST_CASE("context validation") {
    REQUIRE_THROWS_AS(PadicContext(2, 1, 3), std::invalid_argument);  // even p
    REQUIRE_THROWS_AS(PadicContext(9, 1, 3), std::invalid_argument);  // not prime
    REQUIRE_THROWS_AS(PadicContext(3, 4, 3), std::invalid_argument);  // M > N
    REQUIRE_THROWS_AS(PadicContext(3, 0, 3), std::invalid_argument);
    REQUIRE_NOTHROW(PadicContext(3, 3, 3));
}

TEST_CASE("alternating sums over Z_p") {
    PadicContext ctx(3, 2, 2);
    // f = 1: odd term count, every truncation gives 1.
    REQUIRE(fermionic_sum([](long) { return Rat(1); }, ctx).residue == 1);
    // f(x) = x at p = 3, N = 2: sum = 4, which is -1/2 mod 9.
    REQUIRE(fermionic_sum([](long j) { return Rat(j); }, ctx).residue == 4);
    // f(x) = x^2: stabilizes to E_2 = 0 mod 3^M.
    PadicContext ctx3(3, 2, 3);
    auto v = fermionic_sum([](long j) { return Rat(j) * Rat(j); }, ctx3);
    REQUIRE(v.residue == padic_reduce(euler_generalized(2, kTrivial, 0).rat_value(), ctx3).residue);
    // p in a denominator is rejected.
    REQUIRE_THROWS_AS(fermionic_sum([](long) { return Rat(1, 3); }, ctx), std::domain_error);
}

TEST_CASE("convergence of the truncated sums") {
    // v_p(S_{N+1} - S_N) grows with N; the stabilized residue matches the
    // series-division oracle.
    for (unsigned p : {3u, 5u})
        for (unsigned n = 1; n <= 4; ++n) {
            long prev_val = -1;
            Rat prev_sum;
            bool have_prev = false;
            for (unsigned N = 2; N <= 5; ++N) {
                std::uint64_t level = 1;
                for (unsigned i = 0; i < N; ++i) level *= p;
                Rat sum = alternating_sum_exact(
                    [&](long j) { return Rat(int_pow(BigInt(j), n)); }, level);
                if (have_prev && sum != prev_sum) {
                    long val = rat_valuation(sum - prev_sum, p);
                    REQUIRE(val >= static_cast<long>(N) - 2);
                    REQUIRE(val >= prev_val);
                    prev_val = val;
                }
                prev_sum = sum;
                have_prev = true;
            }
        }
}

TEST_CASE("character-twisted sums over X") {
    PadicContext ctx(5, 2, 3);
    // Trivial d = 1 agrees with the plain sum.
    auto a = fermionic_sum_X([](long j) { return Rat(j); }, kTrivial, ctx, 1);
    auto b = fermionic_sum([](long j) { return Rat(j); }, ctx);
    REQUIRE(a.residue == b.residue);

    // Quadratic character mod 3, p = 5: the twisted monomial sums converge to
    // the generalized values.
    for (unsigned n = 1; n <= 3; ++n) {
        auto s = fermionic_sum_X([n](long j) { return Rat(int_pow(BigInt(j), n)); }, kQuad3, ctx, 3);
        auto want = padic_reduce(euler_generalized(n, kQuad3, 0).rat_value(), ctx);
        REQUIRE(s.residue == want.residue);
    }
    // Shifted argument: (x + 2)^1 against E_{1,chi}(2).
    auto s2 = fermionic_sum_X([](long j) { return Rat(j + 2); }, kQuad3, ctx, 3);
    REQUIRE(s2.residue == padic_reduce(euler_generalized(1, kQuad3, 2).rat_value(), ctx).residue);

    // Complex characters and p | d are rejected.
    for (const auto& chi : DirichletChar::enumerate(5))
        if (!chi.is_real())
            REQUIRE_THROWS_AS(fermionic_sum_X([](long) { return Rat(1); }, chi, PadicContext(3, 2, 3), 5),
                              std::invalid_argument);
    REQUIRE_THROWS_AS(fermionic_sum_X([](long) { return Rat(1); }, kQuad3, PadicContext(3, 2, 3), 3),
                      std::invalid_argument);
}

TEST_CASE("multivariate sums") {
    PadicContext ctx(5, 2, 2);
    // k = 1 equals the univariate twisted sum.
    auto m1 = fermionic_sum_multi(1, make_power_integrand(ctx, 2, 0), kQuad3, ctx, 3);
    auto x1 = fermionic_sum_X([](long j) { return Rat(j) * Rat(j); }, kQuad3, ctx, 3);
    REQUIRE(m1.residue == x1.residue);

    // k = 2 classical: matches the order-2 oracle p-adically.
    PadicContext ctx2(3, 2, 4);
    for (unsigned n = 0; n <= 3; ++n)
        for (long x : {0L, 1L}) {
            auto s = fermionic_sum_multi(2, make_power_integrand(ctx2, n, x), kTrivial, ctx2, 1);
            auto want = padic_reduce(euler_generalized_order_k(n, 2, kTrivial, x).rat_value(), ctx2);
            REQUIRE(s.residue == want.residue);
        }

    // Budget guard.
    REQUIRE_THROWS_AS(
        fermionic_sum_multi(3, make_power_integrand(PadicContext(5, 3, 6), 1, 0), kTrivial,
                            PadicContext(5, 3, 6), 1),
        std::invalid_argument);
}

TEST_CASE("q-deformed multivariate sums at q = 1 + p") {
    // Exact closed form: p-power denominators cancel (p-integrality is
    // asserted inside padic_reduce) and the truncated integral matches.
    PadicContext ctx(3, 3, 5);
    Rat q(4);
    for (unsigned n = 0; n <= 2; ++n) {
        QEulerParams P{n, 0, 2, kTrivial, 0, q};
        auto want = padic_reduce(qe_order_k(P).rat_value(), ctx);
        auto s = fermionic_sum_multi(2, make_qpower_integrand(ctx, n, 0), kTrivial, ctx, 1);
        REQUIRE(s.residue == want.residue);
    }
    // Weighted variant.
    PadicContext ctx5(5, 3, 4);
    QEulerParams PH{1, 2, 2, kQuad3, 1, Rat(6)};
    auto want = padic_reduce(qe_hk(PH).rat_value(), ctx5);
    auto s = fermionic_sum_multi(2, make_qpower_integrand(ctx5, 1, 1, 1, 2), kQuad3, ctx5, 3);
    REQUIRE(s.residue == want.residue);
}

TEST_CASE("q-bracket engine") {
    PadicContext ctx(3, 3, 4);
    QBracketEngine eng(ctx);  // q = 4
    // [y]_q mod 27 for small y against the exact rational value.
    for (long y = 0; y <= 6; ++y) {
        Rat exact = qint(y, Rat(4));
        REQUIRE(eng.qint_mod(y) == padic_reduce(exact, ctx).residue);
    }
    // Negative exponents run through modular inverses.
    REQUIRE(eng.qpow(-1) == ModRing(3, 3).inv(4));
    REQUIRE_THROWS_AS(QBracketEngine(ctx, 3), std::invalid_argument);  // u divisible by p
}

TEST_CASE("shift identity") {
    // Exact limit values: f(x) = x, shift 2: I(f_2) - I(f) = 2.
    PadicContext ctx(3, 2, 4);
    ShiftIdentityReport r = shift_identity_check({Rat(0), Rat(1)}, 2, ctx);
    REQUIRE(r.passes);
    // f = 1, shift 1: I(f_1) + I(f) = 2 f(0), exactly at every truncation.
    ShiftIdentityReport r1 = shift_identity_check({Rat(1)}, 1, ctx);
    REQUIRE(r1.residual_zero);
    // f(x) = x^2, shift 3, p = 5: valuation floor reaches M.
    PadicContext ctx5(5, 3, 5);
    ShiftIdentityReport r2 = shift_identity_check({Rat(0), Rat(0), Rat(1)}, 3, ctx5);
    REQUIRE(r2.passes);
    REQUIRE(r2.valuation >= 3);
    // Coefficients with p in the denominator are rejected.
    REQUIRE_THROWS_AS(shift_identity_check({Rat(1, 5)}, 1, ctx5), std::domain_error);
}

TEST_CASE("reduction of exact rationals") {
    PadicContext ctx(3, 2, 3);
    REQUIRE(padic_reduce(Rat(-1, 2), ctx).residue == 4);  // 2*5 = 1 mod 9
    REQUIRE_THROWS_AS(padic_reduce(Rat(1, 3), ctx), std::domain_error);
    REQUIRE(padic_reduce(Rat(0), ctx).residue == 0);
    REQUIRE(padic_reduce(Rat(11), ctx).residue == 2);
}
