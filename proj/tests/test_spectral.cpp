#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "henonlab/constants.hpp"
#include "henonlab/profiles.hpp"
#include "henonlab/interp.hpp"
#include "henonlab/spectral.hpp"

using namespace henonlab;

namespace {

// L2(r^{-1} dr) distance between a computed eigenfunction and a closed form,
// both unit-normalized on the grid
double shape_distance(const std::vector<double>& s, const std::vector<double>& phi,
                      const LimitProfile& prof) {
    const double h = s[1] - s[0];
    double nrm = 0.0;
    std::vector<double> e(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        e[i] = prof.eval(std::exp(s[i])).first;
        nrm += e[i] * e[i] * h;
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const double d = phi[i] - e[i] / std::sqrt(nrm);
        acc += d * d * h;
    }
    return std::sqrt(acc);
}

int interior_sign_changes(const std::vector<double>& phi) {
    double amax = 0.0;
    for (double x : phi) amax = std::max(amax, std::fabs(x));
    int changes = 0;
    double last = 0.0;
    for (double x : phi) {
        if (std::fabs(x) < 1e-8 * amax) continue;  // skip the decay plateau
        if (last != 0.0 && (x < 0.0) != (last < 0.0)) ++changes;
        last = x;
    }
    return changes;
}

}  // namespace

TEST_CASE("limit spectrum i=1") {
    auto r = limit_spectrum(1);
    CHECK(std::fabs(r.beta + 1.0) <= 1e-4);
    CHECK(r.negative_count == 1);
    CHECK(shape_distance(r.s_grid, r.eigenfunction, LimitProfile::eta1()) <= 1e-3);
}

TEST_CASE("limit spectrum i=2") {
    const auto& c = universal();
    auto r = limit_spectrum(2);
    CHECK(std::fabs(r.beta + c.kappa_sq) <= 1e-3 * c.kappa_sq);
    CHECK(r.negative_count == 1);
    CHECK(shape_distance(r.s_grid, r.eigenfunction, LimitProfile::eta2(c.kappa, c.delta_ell)) <=
          1e-3);
    // eigenvalue conjugacy beta2 = kappa^2 beta1
    auto r1 = limit_spectrum(1);
    CHECK(std::fabs(r.beta / r1.beta - c.kappa_sq) <= 1e-3);
}

TEST_CASE("eta conjugacy is exact") { CHECK(kappa_rescale_check() <= 1e-12); }

TEST_CASE("finite spectrum bounds at small p") {
    // gaps 1 - |nu| are far above the discretization floor for p <= 20
    for (double p : {5.0, 10.0, 20.0}) {
        auto r1 = finite_spectrum(solve_radial({0.0, p}, 1), 1);
        REQUIRE(r1.nu.size() == 1);
        CHECK(r1.nu[0] > -1.0);
        CHECK(r1.nu[0] < 0.0);

        auto r2 = finite_spectrum(solve_radial({0.0, p}, 2), 2);
        REQUIRE(r2.nu.size() == 2);
        CHECK(r2.nu[0] < -1.0);
        CHECK(r2.nu[1] > -1.0);
        CHECK(r2.nu[1] < 0.0);
        CHECK(r2.nu[0] < r2.nu[1]);
    }
}

TEST_CASE("nu1 trend toward -1 for the positive solution") {
    double prev = -0.5;
    for (double p : {5.0, 10.0, 20.0}) {
        auto r = finite_spectrum(solve_radial({0.0, p}, 1), 1);
        CHECK(r.nu[0] < prev);  // decreasing toward -1
        CHECK(r.nu[0] > -1.0);
        prev = r.nu[0];
    }
}

TEST_CASE("nodal eigenvalues at p = 100") {
    const auto& c = universal();
    auto sol = solve_radial({0.0, 100.0}, 2);
    auto r = finite_spectrum(sol, 2);
    REQUIRE(r.nu.size() == 2);
    // frozen pilot value, regression guard for the whole pipeline
    CHECK(r.nu[0] == doctest::Approx(-26.288809).epsilon(1e-5));
    CHECK(std::fabs(r.nu[1] + 1.0) <= 1e-6);
    CHECK(r.nu[0] > -c.kappa_sq);  // approaches the limit from above

    // grid-refinement stability
    for (std::size_t j = 0; j < r.nu.size(); ++j)
        CHECK(std::fabs(r.nu_coarse[j] - r.nu_fine[j]) <= 1e-5);
    CHECK_FALSE(r.disc.too_coarse);

    // orthonormality in the t^{-1} inner product
    CHECK(std::fabs(eigen_inner(r, 0, 0) - 1.0) <= 1e-8);
    CHECK(std::fabs(eigen_inner(r, 1, 1) - 1.0) <= 1e-8);
    CHECK(std::fabs(eigen_inner(r, 0, 1)) <= 1e-8);

    // variational consistency: quadrature Rayleigh quotient reproduces nu
    CHECK(std::fabs(rayleigh_quotient(r, 0) - r.nu[0]) <= 1e-6 * std::fabs(r.nu[0]));
    CHECK(std::fabs(rayleigh_quotient(r, 1) - r.nu[1]) <= 1e-6 * std::fabs(r.nu[1]));

    CHECK(interior_sign_changes(r.eigenfunctions[0]) == 0);
}

TEST_CASE("Sturm structure of nodal eigenfunctions") {
    // at small p the two concentration wells still communicate, so the
    // second eigenfunction's sign change has visible amplitude
    auto r = finite_spectrum(solve_radial({0.0, 10.0}, 2), 2);
    REQUIRE(r.eigenfunctions.size() == 2);
    CHECK(interior_sign_changes(r.eigenfunctions[0]) == 0);
    CHECK(interior_sign_changes(r.eigenfunctions[1]) == 1);
}

TEST_CASE("henon side oracle") {
    // alpha = 0 is the identity transformation
    {
        auto sol = solve_radial({0.0, 50.0}, 1);
        auto nu = finite_spectrum(sol, 1);
        auto [u, hs] = to_henon(sol, 0.0);
        (void)hs;
        auto lam = henon_side_oracle(u, {0.0, 50.0}, 1);
        REQUIRE(lam.nu.size() == 1);
        CHECK(std::fabs(lam.nu[0] / nu.nu[0] - 1.0) <= 1e-3);
    }
    // alpha = 2: Lambda = ((2+alpha)/2)^2 nu = 4 nu
    {
        auto sol = solve_radial({2.0, 50.0}, 1);
        auto nu = finite_spectrum(sol, 1);
        auto [u, hs] = to_henon(sol, 2.0);
        (void)hs;
        auto lam = henon_side_oracle(u, {2.0, 50.0}, 1);
        CHECK(std::fabs(lam.nu[0] / nu.nu[0] - 4.0) <= 4.0 * 1e-3);
    }
    // alpha = 3, both eigenvalues: ratio 25/4
    {
        auto sol = solve_radial({3.0, 50.0}, 2);
        auto nu = finite_spectrum(sol, 2);
        auto [u, hs] = to_henon(sol, 3.0);
        (void)hs;
        auto lam = henon_side_oracle(u, {3.0, 50.0}, 2);
        REQUIRE(lam.nu.size() == 2);
        CHECK(std::fabs(lam.nu[0] / nu.nu[0] - 6.25) <= 6.25 * 1e-3);
        CHECK(std::fabs(lam.nu[1] / nu.nu[1] - 6.25) <= 6.25 * 1e-3);
    }
}

TEST_CASE("potential diagnostics") {
    const auto& c = universal();
    // m = 1: a single interior maximum of f_p, near sqrt(8) eps
    {
        auto sol = solve_radial({0.0, 200.0}, 1);
        auto d = potential_diagnostics(sol);
        REQUIRE(d.bump_t.size() == 1);
        CHECK(std::fabs(std::log(d.bump_t[0] / sol.eps[0]) - std::log(std::sqrt(8.0))) <= 0.1);
    }
    // m = 2: two maxima, one per nodal zone, near the limit-potential peaks
    {
        auto sol = solve_radial({0.0, 200.0}, 2);
        auto d = potential_diagnostics(sol);
        REQUIRE(d.bump_t.size() == 2);
        const double peak1 = std::sqrt(8.0);
        const double peak2 = std::pow(c.delta_ell, 1.0 / (2.0 + c.gamma));
        CHECK(std::fabs(std::log(d.bump_t[0] / sol.eps[0]) - std::log(peak1)) <= 0.1);
        CHECK(std::fabs(std::log(d.bump_t[1] / sol.eps[1]) - std::log(peak2)) <= 0.1);
        // the in-between/outer windows carry only a small fraction of the sup
        CHECK(d.window_max <= 0.5 * d.sup_fp);
        CHECK(d.sup_fp <= 2.0 * c.kappa_sq * 1.02);
    }
}

TEST_CASE("f_p stays bounded along the sweep") {
    const auto& c = universal();
    double prev = 0.0;
    for (double p : {50.0, 100.0, 200.0, 400.0}) {
        auto d = potential_diagnostics(solve_radial({0.0, p}, 2));
        CHECK(d.sup_fp <= 2.0 * c.kappa_sq * 1.02);  // no growth trend
        CHECK(d.sup_fp > prev * 0.98);
        prev = d.sup_fp;
    }
    // in-between/outer windows stay far below the sup, R = K = 20
    auto d500 = potential_diagnostics(solve_radial({0.0, 500.0}, 2), 20.0, 20.0);
    CHECK(d500.window_max <= 0.5 * d500.sup_fp);
}

namespace {

// L2 shape distance on a sigma-window between a rescaled eigenfunction and a
// closed form, both unit-normalized on the window
double rescaled_shape_distance(const SpectralResult& r, int j, double log_eps,
                               const LimitProfile& prof, double lo, double hi) {
    Pchip phi(r.s_grid, r.eigenfunctions[j]);
    const int n = 2000;
    double npsi = 0.0, nprof = 0.0;
    std::vector<double> a(n + 1), b(n + 1);
    for (int i = 0; i <= n; ++i) {
        const double sg = lo + (hi - lo) * i / n;
        const double s = sg + log_eps;
        a[i] = (s >= phi.x_min() && s <= phi.x_max()) ? phi(s) : 0.0;
        b[i] = prof.eval(std::exp(sg)).first;
        npsi += a[i] * a[i];
        nprof += b[i] * b[i];
    }
    double acc = 0.0;
    for (int i = 0; i <= n; ++i) {
        const double d = a[i] / std::sqrt(npsi) - b[i] / std::sqrt(nprof);
        acc += d * d;
    }
    return std::sqrt(acc / (n + 1) * (hi - lo));
}

}  // namespace

TEST_CASE("rescaled eigenfunctions approach the limit shapes") {
    // psi_1 rescaled by eps_2 tends to the eta shape of the singular limit
    // problem, psi_2 rescaled by eps_1 to eta_1; distances shrink like 1/p
    const auto& c = universal();
    const LimitProfile e1 = LimitProfile::eta1();
    const LimitProfile e2 = LimitProfile::eta2(c.kappa, c.delta_ell);
    double prev1 = 1e300, prev2 = 1e300;
    for (double p : {50.0, 200.0}) {
        auto sol = solve_radial({0.0, p}, 2);
        auto r = finite_spectrum(sol, 2);
        const double d1 = rescaled_shape_distance(r, 0, sol.log_eps[1], e2, -2.0, 3.0);
        const double d2 = rescaled_shape_distance(r, 1, sol.log_eps[0], e1, -3.0, 3.0);
        CHECK(d1 <= 0.01);  // pilot: 0.0036 at p = 50, 0.0009 at p = 200
        CHECK(d2 <= 0.01);
        CHECK(d1 < prev1);
        CHECK(d2 < prev2);
        prev1 = d1;
        prev2 = d2;
    }
}

TEST_CASE("nodal eigenvalue targets at p = 500") {
    const auto& c = universal();
    auto r = finite_spectrum(solve_radial({0.0, 500.0}, 2), 2);
    REQUIRE(r.nu.size() == 2);
    CHECK(std::fabs(r.nu[0] + c.kappa_sq) <= 0.05 * c.kappa_sq);
    CHECK(std::fabs(r.nu[1] + 1.0) <= 0.1);
}

TEST_CASE("input validation") {
    auto sol = solve_radial({0.0, 10.0}, 1);
    CHECK_THROWS_AS(finite_spectrum(sol, 0), std::invalid_argument);
    CHECK_THROWS_AS(finite_spectrum(sol, 3), std::invalid_argument);
    CHECK_THROWS_AS(limit_spectrum(0), std::invalid_argument);
}
