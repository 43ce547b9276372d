#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "henonlab/radial.hpp"

using namespace henonlab;

TEST_CASE("bessel oracle at p near 1") {
    // -(t v')' = t v has solution J0(t); first zero j_{0,1} = 2.40482555769577
    auto tr = integrate_ivp(1.001, 1.0, 10.0, 1);
    REQUIRE(tr.zeros_u.size() >= 1);
    CHECK(std::fabs(std::exp(tr.zeros_u[0]) - 2.40482555769577) <= 1e-2);
}

TEST_CASE("series start and monotonicity before the first zero") {
    auto tr = integrate_ivp(3.0, 1.0, 10.0, 1);
    const double t0 = tr.t.front();
    CHECK(std::fabs(tr.v.front() - (1.0 - t0 * t0 / 4.0)) <= 1e-13);
    REQUIRE(tr.zeros_u.size() == 1);
    for (std::size_t i = 0; i < tr.size(); ++i) {
        if (tr.u[i] >= tr.zeros_u[0]) break;
        CHECK(tr.v[i] > 0.0);
        CHECK(tr.w[i] <= 0.0);  // v' < 0 on (0, first zero)
    }
}

TEST_CASE("input validation") {
    CHECK_THROWS_AS(integrate_ivp(0.5, 1.0, 10.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(integrate_ivp(2.0, -1.0, 10.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(solve_radial({0.0, 5.0}, 3), std::invalid_argument);
    CHECK_THROWS_AS(solve_radial({-1.0, 5.0}, 1), std::invalid_argument);
}

static void check_contracts(const RadialSolution& sol) {
    const auto& tr = sol.profile;
    double vmax = 0.0;
    for (double v : tr.v) vmax = std::max(vmax, std::fabs(v));
    // normalization: last grid point is t = 1 with v(1) = 0
    CHECK(tr.t.back() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::fabs(tr.v.back()) <= 1e-10 * vmax);
    CHECK(tr.v.front() > 0.0);  // sign normalization
    // exactly zones-1 interior zeros
    int interior = 0;
    for (double z : tr.zeros_u)
        if (z < -1e-12) ++interior;
    CHECK(interior == sol.zones - 1);
    // grid strictly increasing
    for (std::size_t i = 1; i < tr.size(); ++i) CHECK(tr.t[i] > tr.t[i - 1]);
    // refined zeros really are zeros of the profile
    for (double z : tr.zeros_u)
        if (z > sol.v_interp.x_min() && z < 0.0)
            CHECK(std::fabs(sol.v_interp(z)) <= 1e-10 * vmax);
    // Nehari identity
    CHECK(std::fabs(sol.nehari_grad - sol.nehari_pot) <= 1e-6 * std::fabs(sol.nehari_pot));
    // eps_i from mu_i
    const double p = sol.params.p;
    for (std::size_t i = 0; i < sol.mu.size(); ++i)
        CHECK(sol.eps[i] ==
              doctest::Approx(std::pow(p * std::pow(sol.mu[i], p - 1.0), -0.5)).epsilon(1e-12));
}

TEST_CASE("positive solution contracts") {
    for (double p : {5.0, 50.0}) {
        auto sol = solve_radial({0.0, p}, 1);
        check_contracts(sol);
        CHECK(sol.mu.size() == 1);
        CHECK(sol.profile.crit_u.empty());  // only critical point is t = 0
    }
}

TEST_CASE("nodal solution contracts") {
    for (double p : {5.0, 50.0}) {
        auto sol = solve_radial({0.0, p}, 2);
        check_contracts(sol);
        CHECK(sol.mu.size() == 2);
        REQUIRE(sol.profile.crit_u.size() == 1);  // t = 0 plus one interior root of v'
        CHECK(sol.t1 > 0.0);
        CHECK(sol.t1 < sol.s2);
        CHECK(sol.s2 < 1.0);
        CHECK(sol.profile.crit_val[0] < 0.0);  // second zone is negative
    }
}

TEST_CASE("scale invariance oracle") {
    // integrating from v(0) = a and normalizing must match the a = 1 solve
    for (auto [p, a] : {std::pair{5.0, 2.0}, std::pair{20.0, 0.5}}) {
        auto ref = solve_radial({0.0, p}, 1);
        auto tr = integrate_ivp(p, a, 1e26, 1);
        REQUIRE(tr.zeros_u.size() == 1);
        const double um = tr.zeros_u[0];
        const double scale = std::exp(2.0 * um / (p - 1.0));
        // compare the normalized raw samples against the reference solve
        double vmax = ref.mu[0], worst = 0.0;
        for (std::size_t i = 0; i < tr.size(); ++i) {
            const double s = tr.u[i] - um;
            if (s < -8.0 || s > -0.01) continue;
            worst = std::max(worst, std::fabs(scale * tr.v[i] - ref.eval_v(s)) / vmax);
        }
        CHECK(worst <= 1e-8);
    }
}

TEST_CASE("to_henon identity at alpha 0") {
    auto sol = solve_radial({0.0, 10.0}, 2);
    auto [u, hs] = to_henon(sol, 0.0);
    for (std::size_t i = 0; i < u.size(); i += 97) {
        CHECK(u.t[i] == doctest::Approx(sol.profile.t[i]).epsilon(1e-14));
        CHECK(u.v[i] == doctest::Approx(sol.profile.v[i]).epsilon(1e-14));
    }
    CHECK(hs.r_p == doctest::Approx(sol.t1).epsilon(1e-14));
    CHECK(hs.rho[0] == doctest::Approx(sol.eps[0]).epsilon(1e-14));
}

TEST_CASE("to_henon scaling relations") {
    auto sol = solve_radial({0.0, 50.0}, 2);
    auto [u2, hs2] = to_henon(sol, 2.0);
    (void)u2;
    CHECK(hs2.r_p == doctest::Approx(std::sqrt(sol.t1)).epsilon(1e-12));
    CHECK(hs2.sigma_p == doctest::Approx(std::sqrt(sol.s2)).epsilon(1e-12));
    const double c = std::pow(2.0, 2.0 / 49.0);  // ((2+2)/2)^{2/(p-1)}
    CHECK(hs2.mu_henon[0] / sol.mu[0] == doctest::Approx(c).epsilon(1e-13));
    CHECK(hs2.mu_henon[1] / sol.mu[1] == doctest::Approx(c).epsilon(1e-13));
}

TEST_CASE("rescaled profiles") {
    auto sol = solve_radial({0.0, 400.0}, 2);
    auto v1 = rescale(sol, 1);
    CHECK(std::fabs(v1.v.front()) <= 1e-4);  // vtilde_1(0) = 0

    auto v2 = rescale(sol, 2);
    // |vtilde_2| attains its minimum near s2/eps2 -> ell
    const double target = std::exp(sol.log_s2 - sol.log_eps[1]);
    double best = 1e300, best_r = 0.0;
    for (std::size_t i = 0; i < v2.size(); ++i) {
        if (v2.t[i] < 1.0 || v2.t[i] > 50.0) continue;
        if (std::fabs(v2.v[i]) < best) {
            best = std::fabs(v2.v[i]);
            best_r = v2.t[i];
        }
    }
    CHECK(std::fabs(best_r - target) <= 0.05 * target);

    // zone separation at large p
    CHECK(std::exp(sol.log_t1 - sol.log_eps[0]) > 10.0);
    CHECK(std::exp(sol.log_t1 - sol.log_eps[1]) < 0.5);
}

TEST_CASE("scaling report") {
    auto m1 = scaling_report(solve_radial({1.0, 30.0}, 1), 1.0);
    CHECK(m1.mu.size() == 1);
    CHECK(std::isnan(m1.t1));
    CHECK(std::isnan(m1.s2_over_eps2));

    auto m2 = scaling_report(solve_radial({1.0, 30.0}, 2), 1.0);
    CHECK(m2.mu.size() == 2);
    CHECK(m2.s2_over_eps2 > 0.0);
    CHECK(m2.r_p == doctest::Approx(std::pow(m2.t1, 2.0 / 3.0)).epsilon(1e-12));
}

TEST_CASE("eps and rho shrink along the p sweep") {
    double prev_eps = 1e300, prev_rho = 1e300;
    for (double p : {50.0, 100.0, 200.0, 400.0}) {
        auto sol = solve_radial({0.0, p}, 1);
        auto rep = scaling_report(sol, 1.0);
        CHECK(sol.eps[0] < prev_eps);
        CHECK(rep.rho[0] < prev_rho);
        prev_eps = sol.eps[0];
        prev_rho = rep.rho[0];
    }
}
