#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "henonlab/constants.hpp"
#include "henonlab/morse.hpp"

using namespace henonlab;

TEST_CASE("counting formula") {
    CHECK(morse_index(1, 0.0, {-0.99}) == 1);
    CHECK(morse_index(2, 0.0, {-26.9, -0.99}) == 12);
    CHECK(morse_index(1, 2.5, {-0.999}) == 5);  // ceil(2.2489) = 3, 2*3 - 1
    CHECK_THROWS_AS(morse_index(1, 0.0, {-0.5, -0.2}), std::invalid_argument);
    CHECK_THROWS_AS(morse_index(1, 0.0, {0.5}), std::invalid_argument);
    CHECK_THROWS_AS(morse_index(2, 0.0, {-26.9, 0.0}), std::invalid_argument);
}

TEST_CASE("symmetric counting formula") {
    const auto& c = universal();
    CHECK(morse_index_sym(5, 2, 0.0, {-c.kappa_sq, -0.99}) == 4);  // floor(5/5) = 1
    CHECK(morse_index_sym(6, 2, 0.0, {-c.kappa_sq, -0.99}) == 2);  // floor(5/6) = 0
    CHECK(morse_index_sym(6, 1, 2.0, {-0.999}) == 1);
    CHECK_THROWS_AS(morse_index_sym(0, 1, 0.0, {-0.5}), std::invalid_argument);
}

TEST_CASE("formula-path agreement at n = 1 on random inputs") {
    std::mt19937 rng(20240601);
    std::uniform_real_distribution<double> alpha_d(0.0, 10.0);
    std::uniform_real_distribution<double> nu_d(-30.0, -1e-3);
    std::uniform_int_distribution<int> m_d(1, 2);
    for (int k = 0; k < 10000; ++k) {
        const int m = m_d(rng);
        const double a = alpha_d(rng);
        std::vector<double> nu;
        for (int j = 0; j < m; ++j) nu.push_back(nu_d(rng));
        CHECK(morse_index_sym(1, m, a, nu) == morse_index(m, a, nu));
        CHECK(morse_index(m, a, nu) >= m);  // radial part is always counted
        int prev = morse_index(m, a, nu);
        for (int n = 2; n <= 4; ++n) {
            const int v = morse_index_sym(n, m, a, nu);
            CHECK(v <= prev);
            CHECK(v >= m);
            prev = v;
        }
    }
}

TEST_CASE("index depends on nu only through its ceiling cell") {
    // two eigenvalues in the same cell produce identical indices
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> alpha_d(0.0, 6.0);
    for (int k = 0; k < 2000; ++k) {
        const double a = alpha_d(rng);
        const double half = (2.0 + a) / 2.0;
        std::uniform_int_distribution<int> cell_d(1, 8);
        const int cell = cell_d(rng);
        // pick two nus strictly inside the same cell ((cell-1)/half, cell/half)
        std::uniform_real_distribution<double> x_d(cell - 0.9, cell - 0.1);
        const double x1 = x_d(rng) / half, x2 = x_d(rng) / half;
        const double nu1 = -x1 * x1, nu2 = -x2 * x2;
        CHECK(morse_index(1, a, {nu1}) == morse_index(1, a, {nu2}));
        for (int n : {1, 2, 3, 5})
            CHECK(morse_index_sym(n, 1, a, {nu1}) == morse_index_sym(n, 1, a, {nu2}));
    }
}

TEST_CASE("asymptotic indices") {
    const double alphas[] = {0.0, 0.5, 1.0, 2.0, 3.0};
    const int expected[] = {1, 3, 3, 3, 5};
    for (int i = 0; i < 5; ++i) {
        const auto r = asymptotic_morse(1, alphas[i]);
        CHECK_FALSE(r.is_interval());
        CHECK(r.lo == expected[i]);
    }
    CHECK(asymptotic_morse(2, 0.0).lo == 12);
    CHECK_THROWS_AS(asymptotic_morse(3, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(asymptotic_morse(1, -1.0), std::invalid_argument);
}

TEST_CASE("asymptotic index at resonance is the paper interval") {
    const auto a6 = alpha_resonances(6).at(0);
    const auto r = asymptotic_morse(2, a6.alpha);
    CHECK(r.is_interval());
    CHECK(r.lo == 14);  // (2+alpha) kappa + 2 ceil(alpha/2) = 12 + 2
    CHECK(r.hi == 16);
    // one unit to either side the formula is single-valued
    CHECK_FALSE(asymptotic_morse(2, a6.alpha + 1e-6).is_interval());
    CHECK_FALSE(asymptotic_morse(2, a6.alpha - 1e-6).is_interval());
}

TEST_CASE("rewritten nodal index agrees off resonance") {
    const auto& c = universal();
    for (double a = 0.0; a <= 10.0; a += 0.01) {
        if (is_resonant(a, 1e-6)) continue;
        const auto r = asymptotic_morse(2, a);
        const int rewritten = 2 + 2 * static_cast<int>(std::ceil(a / 2.0)) +
                              2 * static_cast<int>(std::ceil((2.0 + a) * c.kappa / 2.0 - 1.0));
        CHECK(r.lo == rewritten);
    }
}

TEST_CASE("symmetric asymptotic indices") {
    CHECK(asymptotic_sym_morse(1, 2, 0.0).lo == 12);  // matches the plain formula
    CHECK(asymptotic_sym_morse(5, 2, 0.0).lo == 4);
    CHECK(asymptotic_sym_morse(6, 2, 0.0).lo == 2);
    CHECK(asymptotic_sym_morse(6, 1, 2.0).lo == 1);
    // large n sees only the radial part
    const auto& c = universal();
    for (double a : {0.0, 1.0, 3.0}) {
        const int big = static_cast<int>(std::ceil((2.0 + a) * c.kappa / 2.0)) + 1;
        CHECK(asymptotic_sym_morse(big, 2, a).lo == 2);
        CHECK(asymptotic_sym_morse(big, 1, a).lo == 1);
    }
    // nonincreasing in n
    for (double a : {0.0, 0.7, 2.3, 5.0}) {
        int prev = 1 << 30;
        for (int n = 1; n <= 12; ++n) {
            const int v = asymptotic_sym_morse(n, 2, a).lo;
            CHECK(v <= prev);
            prev = v;
        }
    }
}

TEST_CASE("multiplicity counts") {
    CHECK(multiplicity(0.0) == std::pair<int, int>{0, 5});
    CHECK(multiplicity(2.0) == std::pair<int, int>{1, 10});
    CHECK(multiplicity(0.0001) == std::pair<int, int>{1, 5});
    // the nodal count jumps by exactly one across each resonance
    for (const auto& res : alpha_resonances(10)) {
        const int below = multiplicity(res.alpha - 1e-6).second;
        const int above = multiplicity(res.alpha + 1e-6).second;
        CHECK(above - below == 1);
    }
}

TEST_CASE("full report, asymptotic") {
    MorseReport r = full_report({3.0, 2.0}, 1, std::nullopt, 3);
    CHECK(r.asymptotic);
    CHECK(r.morse.lo == 5);
    CHECK(r.sym_morse.at(1).lo == 5);
    CHECK(r.sym_morse.at(2).lo == 3);
    CHECK(r.sym_morse.at(3).lo == 1);
    CHECK(r.multiplicity_positive == 2);
    CHECK_FALSE(r.resonant);
}

TEST_CASE("full report, computed") {
    // a clean computed report away from any ceiling edge
    MorseReport r = full_report({0.0, 500.0}, 2, std::vector<double>{-26.8, -0.9}, 2);
    CHECK_FALSE(r.asymptotic);
    CHECK_FALSE(r.ceiling_unstable);
    CHECK(r.morse.lo == 12);
    CHECK(r.morse.hi == 12);
    CHECK(r.sym_morse.at(1).lo == 12);

    // nu2 numerically pinned at -1: the cell is unresolved, report an interval
    MorseReport u = full_report({0.0, 500.0}, 2, std::vector<double>{-26.8, -(1.0 + 1e-9)}, 1);
    CHECK(u.ceiling_unstable);
    CHECK(u.morse.lo == 12);
    CHECK(u.morse.hi == 14);
    CHECK(u.morse.contains(asymptotic_morse(2, 0.0).lo));

    // an eigenvalue just below zero is not a tie: x > 0 pins the cell at 1
    MorseReport tiny = full_report({0.0, 500.0}, 1, std::vector<double>{-1e-14}, 1);
    CHECK_FALSE(tiny.ceiling_unstable);
    CHECK(tiny.morse.lo == 1);
    CHECK(tiny.morse.hi == 1);

    // resonance flag and interval agreement with the asymptotic path
    const auto a6 = alpha_resonances(6).at(0);
    MorseReport res = full_report({a6.alpha, 2.0}, 2, std::nullopt, 1);
    CHECK(res.resonant);
    CHECK(res.nearest_resonance == doctest::Approx(a6.alpha).epsilon(1e-12));
    CHECK(res.morse.lo == 14);
    CHECK(res.morse.hi == 16);
}

TEST_CASE("sym morse equals zones for large n, computed path") {
    const auto& c = universal();
    MorseReport r =
        full_report({1.0, 500.0}, 2, std::vector<double>{-c.kappa_sq + 0.5, -0.9}, 12);
    for (int n = 9; n <= 12; ++n) CHECK(r.sym_morse.at(n).lo == 2);
}
