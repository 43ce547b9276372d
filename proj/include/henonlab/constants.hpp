// Problem parameters and the closed-form parameter algebra relating the
// constants t_bar, ell, gamma, delta, kappa that govern the large-p regime.

#pragma once

#include <utility>
#include <vector>

namespace henonlab {

/// One problem instance: -Delta u = |x|^alpha |u|^{p-1} u on the unit disc.
struct ProblemParams {
    double alpha = 0.0;  ///< weight exponent, >= 0
    double p = 2.0;      ///< nonlinearity exponent, > 1

    /// Throws std::invalid_argument unless alpha >= 0, p > 1, both finite.
    void validate() const;
};

/// Fixed constants of the large-p asymptotics. All derived from ell and
/// t_bar; see universal().
struct UniversalConstants {
    double sqrt_e;     ///< sqrt(e)
    double tbar;       ///< root of 2 sqrt(e) log t + t = 0 in (0,1)
    double ell;        ///< 7.1979, limit of s_{2,p}/eps_p^2
    double gamma;      ///< sqrt(2 ell^2 + 4) - 2
    double delta_ell;  ///< (gamma+4)/gamma * ell^{2+gamma}
    double kappa;      ///< (2+gamma)/2 = sqrt((2+ell^2)/2)
    double kappa_sq;   ///< kappa^2
    double mu1_limit;  ///< sqrt(e)/tbar * mu2_limit, ~2.46
    double mu2_limit;  ///< exp(tbar / (2 (tbar + sqrt(e)))), ~1.17
};

/// The shared constant set, computed once on first use.
const UniversalConstants& universal();

/// Root of 2 sqrt(e) log t + t = 0, bisection on (0.1, 1) to 1e-12.
double root_tbar();

/// gamma(ell) = sqrt(2 ell^2 + 4) - 2. Requires ell > 0.
double gamma_of_ell(double ell);

/// delta(ell) = (gamma+4)/gamma * ell^{2+gamma}. Requires ell > 0.
double delta_of_ell(double ell);

/// delta(alpha) = 2 (2+alpha)^2, the U-family parameter fixed by U(0)=0.
double delta1_of_alpha(double alpha);

/// delta_2(alpha) = (gamma+4)/gamma * ((2+alpha)/2 * ell)^{2+gamma}.
double delta2_of_alpha(double alpha);

/// ell_alpha = ((2+alpha)/2 * ell)^{2/(2+alpha)}.
double ell_alpha(double alpha);

/// Limits of the nodal extremal magnitudes: (mu1, mu2) ~ (2.46, 1.17).
std::pair<double, double> mu_limits();

struct Resonance {
    int n;
    double alpha;  ///< alpha_n = 2 (n/kappa - 1)
};

/// All resonant alpha_n = 2(n/kappa - 1) >= 0 with n <= n_max.
std::vector<Resonance> alpha_resonances(int n_max);

/// True when (2+alpha) kappa / 2 is within tol of an integer.
bool is_resonant(double alpha, double tol = 1e-9);

}  // namespace henonlab
