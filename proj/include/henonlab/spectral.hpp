// Negative singular eigenvalues of the linearized problems.
//
// The substitution s = log t turns -(t psi')' - t p|v|^{p-1} psi = nu psi/t
// on (0,1) into the Schrodinger form -psi_ss - Q(s) psi = nu psi on (-L, 0)
// with Q(s) = e^{2s} p |v(e^s)|^{p-1} and a constant weight, so a uniform
// second-order finite-difference grid gives a symmetric tridiagonal
// eigenproblem. The limit problems on (0,inf) get the same treatment on
// [-L, L]. Only negative eigenvalues are returned; they are the ones the
// singular problem controls.

#pragma once

#include <string>
#include <vector>

#include "henonlab/radial.hpp"

namespace henonlab {

struct Discretization {
    double L_lo = 0.0, L_hi = 0.0;  ///< domain [-L_lo, L_hi] in s
    int N = 0;                      ///< intervals of the fine grid
    std::string scheme;             ///< "fd2+richardson"
    bool too_coarse = false;        ///< coarse/fine eigenvalues differ > 1e-4
};

struct SpectralResult {
    std::vector<double> nu;  ///< negative eigenvalues, increasing; Richardson-refined
    std::vector<double> nu_coarse, nu_fine;         ///< raw N and 2N values
    std::vector<std::vector<double>> eigenfunctions;  ///< on s_grid, t^{-1}-orthonormal
    std::vector<double> s_grid;                       ///< interior fine-grid nodes
    std::vector<double> potential;                    ///< Q at s_grid
    Discretization disc;
};

struct LimitSpectralResult {
    double beta = 0.0;
    int negative_count = 0;  ///< negatives among the lowest 4 discrete eigenvalues
    std::vector<double> eigenfunction, s_grid, potential;
    Discretization disc;
};

/// Negative spectrum of the reduced-problem linearization (at most `count`,
/// count in {1,2}); eigenfunctions normalized by int t^{-1} psi^2 dt = 1.
SpectralResult finite_spectrum(const RadialSolution& sol, int count);

/// The unique negative eigenpair of the limit problem with potential W^i.
LimitSpectralResult limit_spectrum(int which);

/// Max pointwise deviation of the conjugacy eta^2(r) = eta^1(sqrt(8/d) r^k)
/// between the two limit eigenfunctions, over a log grid.
double kappa_rescale_check();

/// Independent discretization of the weighted problem in the r variable:
/// -(r phi')' - r p r^alpha |u|^{p-1} phi = Lambda phi / r. Cross-checks
/// Lambda_j = ((2+alpha)/2)^2 nu_j.
SpectralResult henon_side_oracle(const Trajectory& u_profile, const ProblemParams& params,
                                 int count);

struct PotentialDiagnostics {
    double sup_fp = 0.0;                   ///< max of f_p = p t^2 |v|^{p-1} over the grid
    std::vector<double> bump_t, bump_f;    ///< per-zone interior maxima of f_p
    double window_max = 0.0;               ///< max over [eps1 R, eps2/K] U [eps2 K, 1]
    double R = 0.0, K = 0.0;
};

PotentialDiagnostics potential_diagnostics(const RadialSolution& sol, double R = 20.0,
                                           double K = 20.0);

/// Rayleigh quotient of a stored eigenfunction, evaluated by trapezoid sums
/// and forward differences (independent of the eigensolver's arithmetic).
double rayleigh_quotient(const SpectralResult& res, std::size_t j);

/// int r^{-1} psi_j psi_k dr evaluated on the stored grid.
double eigen_inner(const SpectralResult& res, std::size_t j, std::size_t k);

}  // namespace henonlab
