// Closed-form limit objects of the large-p regime: the Liouville and
// singular-Liouville radial families, the limit eigenfunctions, and the
// limit potentials, with residual/mass/correspondence checks and
// C^1-on-compacts distances to computed rescaled profiles.

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "henonlab/radial.hpp"

namespace henonlab {

enum class ProfileKind { U, V, Z, ZHenon, Eta1, Eta2, W1, W2 };

/// One evaluable closed-form profile; parameters depend on the kind.
struct LimitProfile {
    ProfileKind kind;
    double alpha = 0.0, gamma = 0.0, delta = 0.0, kappa = 0.0;

    static LimitProfile u_family(double alpha, double delta);
    static LimitProfile v_family(double delta);
    static LimitProfile z_family(double gamma, double delta);
    static LimitProfile z_henon(double alpha, double gamma, double delta);
    static LimitProfile eta1();
    static LimitProfile eta2(double kappa, double delta);  // sqrt(2 k d) r^k/(d+r^{2k})
    static LimitProfile w1();
    static LimitProfile w2(double gamma, double delta);

    /// (value, d/dr) of the closed form. Z families reject r = 0.
    std::pair<double, double> eval(double r) const;
    bool singular_at_zero() const;
    std::string name() const;
};

/// Max |equation residual| over the samples, with (r f')' formed by a
/// 4th-order stencil applied to the analytic first derivative.
double pde_residual(const LimitProfile& prof, const std::vector<double>& r_samples);

/// (numerical mass, closed-form expectation): int_0^ell t e^{Z_ell} dt vs gamma.
std::pair<double, double> mass_identity_lane_emden();

/// int_0^{ell_alpha} r^{1+alpha} e^{Z_{alpha,gamma;delta_2}} dr vs (2+alpha) gamma / 2.
std::pair<double, double> mass_identity_henon(double alpha);

/// Max deviation of the two change-of-variable identities
/// U_{a;((2+a)/2)^2 d}(r) = V_d(s) and Z_{a,g;((2+a)/2)^{2+g} d}(r) = Z_{g;d}(s),
/// s = 2/(2+a) r^{(2+a)/2}, over the samples.
double correspondence_check(double alpha, double delta, const std::vector<double>& r_samples);

/// int_0^inf r^{-1} f(r)^2 dr for the eta kinds (= 1 for both closed forms).
double normalization_integral(const LimitProfile& prof);

struct C1Distance {
    double c0, c1;
};

/// Sup-norm distance of values/derivatives between a rescaled trajectory and
/// a limit profile on [max(inner, grid start), R].
C1Distance profile_distance(const Trajectory& resc, const LimitProfile& prof, double R,
                            double inner);

/// s_{2,p}/eps_p^2 along the p-grid, extrapolated to p = infinity
/// (Neville in 1/p); a single-point grid returns the raw ratio.
double estimate_ell(const std::vector<double>& p_grid);

/// Raw ratio s_{2,p}/eps_p^2 for one exponent.
double ell_ratio(double p);

}  // namespace henonlab
