#include "henonlab/constants.hpp"

#include <cmath>
#include <stdexcept>

namespace henonlab {

void ProblemParams::validate() const {
    if (!std::isfinite(alpha) || alpha < 0.0)
        throw std::invalid_argument("ProblemParams: alpha must be finite and >= 0");
    if (!std::isfinite(p) || p <= 1.0)
        throw std::invalid_argument("ProblemParams: p must be finite and > 1");
}

double root_tbar() {
    const double se = std::sqrt(std::exp(1.0));
    auto f = [se](double t) { return 2.0 * se * std::log(t) + t; };
    // f is strictly increasing on (0,1], f(0.1) < 0 < f(1) = 1
    double lo = 0.1, hi = 1.0;
    while (hi - lo > 1e-13) {
        double mid = 0.5 * (lo + hi);
        (f(mid) < 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

double gamma_of_ell(double ell) {
    if (!(ell > 0.0)) throw std::domain_error("gamma_of_ell: ell must be > 0");
    return std::sqrt(2.0 * ell * ell + 4.0) - 2.0;
}

double delta_of_ell(double ell) {
    if (!(ell > 0.0)) throw std::domain_error("delta_of_ell: ell must be > 0");
    const double g = gamma_of_ell(ell);
    return (g + 4.0) / g * std::pow(ell, 2.0 + g);
}

double delta1_of_alpha(double alpha) {
    if (!(alpha >= 0.0)) throw std::domain_error("delta1_of_alpha: alpha must be >= 0");
    return 2.0 * (2.0 + alpha) * (2.0 + alpha);
}

double delta2_of_alpha(double alpha) {
    if (!(alpha >= 0.0)) throw std::domain_error("delta2_of_alpha: alpha must be >= 0");
    // gamma stays fixed at gamma(ell); only the length scale is stretched
    const auto& u = universal();
    return (u.gamma + 4.0) / u.gamma * std::pow((2.0 + alpha) / 2.0 * u.ell, 2.0 + u.gamma);
}

double ell_alpha(double alpha) {
    if (!(alpha >= 0.0)) throw std::domain_error("ell_alpha: alpha must be >= 0");
    return std::pow((2.0 + alpha) / 2.0 * universal().ell, 2.0 / (2.0 + alpha));
}

std::pair<double, double> mu_limits() {
    const double se = std::sqrt(std::exp(1.0));
    const double tb = root_tbar();
    const double mu2 = std::exp(tb / (2.0 * (tb + se)));
    return {se / tb * mu2, mu2};
}

const UniversalConstants& universal() {
    static const UniversalConstants c = [] {
        UniversalConstants u;
        u.sqrt_e = std::sqrt(std::exp(1.0));
        u.tbar = root_tbar();
        u.ell = 7.1979;  // quoted constant; re-derived numerically by estimate_ell()
        u.gamma = gamma_of_ell(u.ell);
        u.delta_ell = delta_of_ell(u.ell);
        u.kappa = (2.0 + u.gamma) / 2.0;
        u.kappa_sq = u.kappa * u.kappa;
        auto mu = mu_limits();
        u.mu1_limit = mu.first;
        u.mu2_limit = mu.second;
        return u;
    }();
    return c;
}

std::vector<Resonance> alpha_resonances(int n_max) {
    if (n_max < 1) throw std::invalid_argument("alpha_resonances: n_max must be >= 1");
    const double kappa = universal().kappa;
    std::vector<Resonance> out;
    for (int n = 1; n <= n_max; ++n) {
        double a = 2.0 * (n / kappa - 1.0);
        if (a >= 0.0) out.push_back({n, a});
    }
    return out;
}

bool is_resonant(double alpha, double tol) {
    const double x = (2.0 + alpha) * universal().kappa / 2.0;
    return std::fabs(x - std::round(x)) < tol;
}

}  // namespace henonlab
