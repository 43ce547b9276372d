// Radial solutions of the reduced problem -(t v')' = t |v|^{p-1} v on (0,1]
// with v'(0)=0, v(1)=0, for one or two nodal zones, plus the mapping back to
// the weighted problem on the disc.
//
// Everything is integrated in the log variable u = log t with state
// (v, w = t v'), since for large p the trajectory spans hundreds of e-folds
// in t. The equation's scale invariance v -> lambda^{2/(p-1)} v(lambda t)
// places the m-th zero at t = 1 without any shooting iteration.

#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "henonlab/constants.hpp"
#include "henonlab/interp.hpp"

namespace henonlab {

/// Sampled trajectory over an increasing grid. The grid is kept both as
/// t-values and as u = log t; w = t v' is the well-scaled derivative.
struct Trajectory {
    std::vector<double> u;  ///< log of grid
    std::vector<double> t;  ///< grid, strictly increasing, t[0] > 0
    std::vector<double> v;
    std::vector<double> w;  ///< t v'(t)

    std::vector<double> zeros_u;   ///< refined roots of v (u coords)
    std::vector<double> zeros_w;   ///< w at each zero (slope data)
    std::vector<double> crit_u;    ///< refined interior roots of v' (u coords)
    std::vector<double> crit_val;  ///< v at each critical point

    double v_prime(std::size_t i) const { return w[i] / t[i]; }
    std::vector<double> zeros_t() const;
    std::size_t size() const { return t.size(); }
};

/// A normalized radial solution: profile on (0,1] with v(1) = 0, first zone
/// positive, exactly zones-1 interior zeros.
struct RadialSolution {
    ProblemParams params;
    int zones = 1;
    Trajectory profile;  ///< normalized; profile.u is the s = log t grid

    std::vector<double> mu;       ///< extremal magnitudes per zone
    std::vector<double> eps;      ///< eps_i = (p mu_i^{p-1})^{-1/2}
    std::vector<double> log_eps;  ///< exact log eps_i

    double t1 = std::numeric_limits<double>::quiet_NaN();  ///< interior zero (zones = 2)
    double s2 = std::numeric_limits<double>::quiet_NaN();  ///< second critical point
    double log_t1 = std::numeric_limits<double>::quiet_NaN();
    double log_s2 = std::numeric_limits<double>::quiet_NaN();

    double nehari_grad = 0.0;  ///< int_0^1 t v'^2 dt (up to a common scale factor)
    double nehari_pot = 0.0;   ///< int_0^1 t |v|^{p+1} dt (same scale factor)

    Pchip v_interp;  ///< v over the stored u-grid

    /// v at t = e^s, flat extension v -> mu[0] below the stored grid.
    double eval_v(double s) const;
    /// log|v(e^s)|; near zeros uses the local slope model log|w_z| + log|s-s_z|.
    double eval_log_abs_v(double s) const;
};

/// Hénon-side scaling data obtained from a reduced solution at a given alpha.
struct HenonScalingData {
    std::vector<double> mu_henon;  ///< ((2+alpha)/2)^{2/(p-1)} mu_i
    std::vector<double> rho;       ///< ((2/(2+alpha)) eps_i)^{2/(2+alpha)}
    double r_p = std::numeric_limits<double>::quiet_NaN();      ///< t1^{2/(2+alpha)}
    double sigma_p = std::numeric_limits<double>::quiet_NaN();  ///< s2^{2/(2+alpha)}
};

/// Flat record of every scaling quantity of one solution; nodal-only fields
/// are NaN when zones = 1. Ratios are computed in log space.
struct ScalingReport {
    double alpha, p;
    int zones;
    std::vector<double> mu, eps, rho;
    double t1, s2, r_p, sigma_p;
    double s2_over_eps2, t1_over_eps1, t1_over_eps2;
};

/// Integrates v(0) = a, v'(0) = 0 from a series start until t_max or until
/// zero_budget sign changes of v are located. Grid = accepted step ends.
Trajectory integrate_ivp(double p, double a, double t_max, int zero_budget);

/// The (unique up to sign) radial solution with `zones` nodal zones,
/// normalized so the zones-th zero sits at t = 1 and v(0+) > 0.
RadialSolution solve_radial(const ProblemParams& params, int zones);

/// Transforms a reduced solution into the Hénon radial solution
/// u(r) = ((2+alpha)/2)^{2/(p-1)} v(r^{(2+alpha)/2}) on a log-spaced r-grid.
std::pair<Trajectory, HenonScalingData> to_henon(const RadialSolution& sol, double alpha);

/// Rescaled profile vtilde_i(r) = p (v(eps_i r) - v(s_i)) / v(s_i) around the
/// i-th critical point, on a log-spaced r-grid.
Trajectory rescale(const RadialSolution& sol, int zone);

/// Hénon-side rescaling utilde_i(r) = p (u(rho_i r) - u(s_i)) / u(s_i), built
/// through the exact identity utilde_i(r) = vtilde_i(2/(2+alpha) r^{(2+alpha)/2}).
Trajectory rescale_henon(const RadialSolution& sol, double alpha, int zone);

ScalingReport scaling_report(const RadialSolution& sol, double alpha);

}  // namespace henonlab
