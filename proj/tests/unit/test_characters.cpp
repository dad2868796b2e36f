#include <catch2/catch_amalgamated.hpp>

#include <numeric>

#include "qeuler/characters.hpp"

using namespace qeuler;

TEST_CASE("trivial characters") {
    DirichletChar one = DirichletChar::trivial(1);
    REQUIRE(one(0) == Cyc(1));
    REQUIRE(one(17) == Cyc(1));
    REQUIRE(one.order() == 1);

    DirichletChar t3 = DirichletChar::trivial(3);
    REQUIRE(t3(1) == Cyc(1));
    REQUIRE(t3(2) == Cyc(1));
    REQUIRE(t3(0).is_zero());
    REQUIRE(t3(3).is_zero());

    DirichletChar t9 = DirichletChar::trivial(9);
    REQUIRE(t9(3).is_zero());
    REQUIRE(t9(6).is_zero());
    int units = 0;
    for (unsigned a = 0; a < 9; ++a)
        if (!t9(a).is_zero()) ++units;
    REQUIRE(units == 6);

    REQUIRE_THROWS_AS(DirichletChar::trivial(4), std::invalid_argument);
}

TEST_CASE("quadratic characters") {
    DirichletChar q3 = DirichletChar::quadratic(3);
    REQUIRE(q3(1).rat_value() == Rat(1));
    REQUIRE(q3(2).rat_value() == Rat(-1));
    REQUIRE(q3.is_real());

    DirichletChar q5 = DirichletChar::quadratic(5);
    REQUIRE(q5(1).rat_value() == Rat(1));
    REQUIRE(q5(4).rat_value() == Rat(1));
    REQUIRE(q5(2).rat_value() == Rat(-1));
    REQUIRE(q5(3).rat_value() == Rat(-1));

    // Brute-force squares oracle mod 7.
    DirichletChar q7 = DirichletChar::quadratic(7);
    std::vector<bool> sq(7, false);
    for (unsigned a = 1; a < 7; ++a) sq[a * a % 7] = true;
    for (unsigned a = 1; a < 7; ++a) REQUIRE(q7(a).rat_value() == (sq[a] ? Rat(1) : Rat(-1)));

    REQUIRE_THROWS_AS(DirichletChar::quadratic(9), std::invalid_argument);
    REQUIRE_THROWS_AS(DirichletChar::quadratic(15), std::invalid_argument);
}

TEST_CASE("enumeration") {
    REQUIRE(DirichletChar::enumerate(1).size() == 1);

    auto mod3 = DirichletChar::enumerate(3);
    REQUIRE(mod3.size() == 2);
    bool has_trivial = false, has_quadratic = false;
    for (const auto& chi : mod3) {
        if (chi == DirichletChar::trivial(3)) has_trivial = true;
        if (chi == DirichletChar::quadratic(3)) has_quadratic = true;
    }
    REQUIRE(has_trivial);
    REQUIRE(has_quadratic);

    // phi(5) = 4 characters; the two of order 4 take values in Q(zeta_4).
    auto mod5 = DirichletChar::enumerate(5);
    REQUIRE(mod5.size() == 4);
    int complex_count = 0;
    for (const auto& chi : mod5) {
        if (chi.is_real()) continue;
        ++complex_count;
        REQUIRE(chi.order() == 4);
        // The value at the primitive root 2 is a primitive 4th root of unity.
        Cyc v = chi(2);
        REQUIRE((v == Cyc::root_of_unity(4, 1) || v == Cyc::root_of_unity(4, 3)));
    }
    REQUIRE(complex_count == 2);

    REQUIRE(DirichletChar::enumerate(45).size() == euler_phi(45));  // 3^2 * 5
    REQUIRE_THROWS_AS(DirichletChar::enumerate(101), std::invalid_argument);
}

TEST_CASE("evaluation is periodic and multiplicative") {
    DirichletChar q3 = DirichletChar::quadratic(3);
    REQUIRE(q3(-1) == q3(2));
    REQUIRE(q3(-1).rat_value() == Rat(-1));
    DirichletChar t3 = DirichletChar::trivial(3);
    REQUIRE(t3(6).is_zero());

    for (unsigned d : {9u, 15u, 5u})
        for (const auto& chi : DirichletChar::enumerate(d))
            for (unsigned a = 0; a < d; ++a)
                for (unsigned b = a; b < d; ++b)
                    REQUIRE(chi(static_cast<long>(a) * b) == chi(a) * chi(b));
}

TEST_CASE("orthogonality and alternating period sums") {
    for (unsigned d : {1u, 3u, 5u, 9u, 15u})
        for (const auto& chi : DirichletChar::enumerate(d)) {
            Cyc sum(0);
            for (unsigned a = 0; a < d; ++a) sum += chi(a);
            if (chi.is_trivial())
                REQUIRE(sum == Cyc(Rat(static_cast<long>(euler_phi(d)))));
            else
                REQUIRE(sum.is_zero());

            // sum over a full 2d period of (-1)^m chi(m) vanishes (d odd);
            // this is what makes blocked series evaluation converge.
            Cyc alt(0);
            for (unsigned m = 0; m < 2 * d; ++m) {
                Cyc v = chi(m);
                alt += (m % 2 == 0) ? v : -v;
            }
            REQUIRE(alt.is_zero());
        }
}
