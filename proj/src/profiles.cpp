#include "henonlab/profiles.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace henonlab {
namespace {

// log(a + r^q) without overflow for large r
inline double log_sum_pow(double a, double q, double r) {
    const double la = std::log(a);
    const double lr = q * std::log(r);
    const double hi = std::max(la, lr), lo = std::min(la, lr);
    return hi + std::log1p(std::exp(lo - hi));
}

template <typename F>
double gk_integrate(F&& f, double a, double b) {
    double err = 0.0;
    return boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
        std::forward<F>(f), a, b, 15, 1e-13, &err);
}

}  // namespace

LimitProfile LimitProfile::u_family(double alpha, double delta) {
    if (!(alpha >= 0.0 && delta > 0.0)) throw std::domain_error("u_family: bad parameters");
    return {ProfileKind::U, alpha, 0.0, delta, 0.0};
}
LimitProfile LimitProfile::v_family(double delta) {
    if (!(delta > 0.0)) throw std::domain_error("v_family: bad delta");
    return {ProfileKind::V, 0.0, 0.0, delta, 0.0};
}
LimitProfile LimitProfile::z_family(double gamma, double delta) {
    if (!(gamma > 0.0 && delta > 0.0)) throw std::domain_error("z_family: bad parameters");
    return {ProfileKind::Z, 0.0, gamma, delta, 0.0};
}
LimitProfile LimitProfile::z_henon(double alpha, double gamma, double delta) {
    if (!(alpha >= 0.0 && gamma > 0.0 && delta > 0.0))
        throw std::domain_error("z_henon: bad parameters");
    return {ProfileKind::ZHenon, alpha, gamma, delta, 0.0};
}
LimitProfile LimitProfile::eta1() { return {ProfileKind::Eta1, 0, 0, 8.0, 0}; }
LimitProfile LimitProfile::eta2(double kappa, double delta) {
    if (!(kappa > 0.0 && delta > 0.0)) throw std::domain_error("eta2: bad parameters");
    return {ProfileKind::Eta2, 0.0, 0.0, delta, kappa};
}
LimitProfile LimitProfile::w1() { return {ProfileKind::W1, 0, 0, 8.0, 0}; }
LimitProfile LimitProfile::w2(double gamma, double delta) {
    if (!(gamma > 0.0 && delta > 0.0)) throw std::domain_error("w2: bad parameters");
    return {ProfileKind::W2, 0.0, gamma, delta, 0.0};
}

bool LimitProfile::singular_at_zero() const {
    return kind == ProfileKind::Z || kind == ProfileKind::ZHenon;
}

std::string LimitProfile::name() const {
    switch (kind) {
        case ProfileKind::U: return "U";
        case ProfileKind::V: return "V";
        case ProfileKind::Z: return "Z";
        case ProfileKind::ZHenon: return "Z_henon";
        case ProfileKind::Eta1: return "eta1";
        case ProfileKind::Eta2: return "eta2";
        case ProfileKind::W1: return "W1";
        case ProfileKind::W2: return "W2";
    }
    return "?";
}

std::pair<double, double> LimitProfile::eval(double r) const {
    if (r < 0.0) throw std::domain_error("LimitProfile::eval: r must be >= 0");
    if (r == 0.0 && singular_at_zero())
        throw std::domain_error("LimitProfile::eval: profile is singular at r = 0");
    switch (kind) {
        case ProfileKind::U: {
            const double q = 2.0 + alpha;
            const double val = std::log(2.0 * q * q * delta) - 2.0 * log_sum_pow(delta, q, r);
            const double den = delta + std::pow(r, q);
            const double der = -2.0 * q * std::pow(r, 1.0 + alpha) / den;
            return {val, der};
        }
        case ProfileKind::V: {
            const double den = delta + r * r;
            return {std::log(8.0 * delta) - 2.0 * std::log(den), -4.0 * r / den};
        }
        case ProfileKind::Z: {
            const double q = 2.0 + gamma;
            const double val = std::log(2.0 * q * q * delta) + gamma * std::log(r) -
                               2.0 * log_sum_pow(delta, q, r);
            const double den = delta + std::pow(r, q);
            const double der = gamma / r - 2.0 * q * std::pow(r, 1.0 + gamma) / den;
            return {val, der};
        }
        case ProfileKind::ZHenon: {
            const double b = (2.0 + alpha) * gamma / 2.0;        // |x| exponent
            const double q = (2.0 + alpha) * (2.0 + gamma) / 2.0;  // denominator power
            const double val = std::log(2.0 * q * q * delta) + b * std::log(r) -
                               2.0 * log_sum_pow(delta, q, r);
            const double den = delta + std::pow(r, q);
            const double der = b / r - 2.0 * q * std::pow(r, q - 1.0) / den;
            return {val, der};
        }
        case ProfileKind::Eta1: {
            const double den = 8.0 + r * r;
            return {4.0 * r / den, 4.0 * (8.0 - r * r) / (den * den)};
        }
        case ProfileKind::Eta2: {
            const double c = std::sqrt(2.0 * kappa * delta);
            const double rk = std::pow(r, kappa), r2k = rk * rk;
            const double den = delta + r2k;
            const double val = c * rk / den;
            const double der =
                r == 0.0 ? 0.0
                         : c * kappa * std::pow(r, kappa - 1.0) * (delta - r2k) / (den * den);
            return {val, der};
        }
        case ProfileKind::W1: {
            const double den = 8.0 + r * r;
            return {64.0 / (den * den), -256.0 * r / (den * den * den)};
        }
        case ProfileKind::W2: {
            const double q = 2.0 + gamma;
            if (r == 0.0) return {0.0, 0.0};  // gamma > 0
            const double lval = std::log(2.0 * q * q * delta) + gamma * std::log(r) -
                                2.0 * log_sum_pow(delta, q, r);
            const double val = std::exp(lval);
            const double den = delta + std::pow(r, q);
            const double der = val * (gamma / r - 2.0 * q * std::pow(r, 1.0 + gamma) / den);
            return {val, der};
        }
    }
    throw std::logic_error("LimitProfile::eval: unreachable");
}

double pde_residual(const LimitProfile& prof, const std::vector<double>& r_samples) {
    if (prof.kind == ProfileKind::W1 || prof.kind == ProfileKind::W2)
        throw std::invalid_argument("pde_residual: W kinds are potentials, not solutions");
    const LimitProfile w1 = LimitProfile::w1();
    const LimitProfile w2k = (prof.kind == ProfileKind::Eta2)
                                 ? LimitProfile::w2(2.0 * prof.kappa - 2.0, prof.delta)
                                 : w1;

    auto rhs = [&](double r) {
        const double f = prof.eval(r).first;
        switch (prof.kind) {
            case ProfileKind::U: return std::exp(prof.alpha * std::log(r)) * std::exp(f);
            case ProfileKind::V: return std::exp(f);
            case ProfileKind::Z: return std::exp(f);  // away from the origin
            case ProfileKind::ZHenon: return std::pow(r, prof.alpha) * std::exp(f);
            case ProfileKind::Eta1: return (w1.eval(r).first - 1.0 / (r * r)) * f;
            case ProfileKind::Eta2: {
                const double k2 = prof.kappa * prof.kappa;
                return (w2k.eval(r).first - k2 / (r * r)) * f;
            }
            default: return 0.0;
        }
    };
    // -(r f')'/r = rhs; the outer derivative by a 4th-order stencil on the
    // analytic r f'(r)
    auto G = [&](double r) { return r * prof.eval(r).second; };
    double worst = 0.0;
    for (double r : r_samples) {
        const double h = 1e-4 * r;
        const double dG =
            (G(r - 2 * h) - 8.0 * G(r - h) + 8.0 * G(r + h) - G(r + 2 * h)) / (12.0 * h);
        worst = std::max(worst, std::fabs(-dG / r - rhs(r)));
    }
    return worst;
}

std::pair<double, double> mass_identity_lane_emden() {
    const auto& c = universal();
    const LimitProfile z = LimitProfile::z_family(c.gamma, c.delta_ell);
    auto f = [&](double t) { return t <= 0.0 ? 0.0 : t * std::exp(z.eval(t).first); };
    return {gk_integrate(f, 0.0, c.ell), c.gamma};
}

std::pair<double, double> mass_identity_henon(double alpha) {
    if (!(alpha >= 0.0)) throw std::domain_error("mass_identity_henon: alpha must be >= 0");
    const auto& c = universal();
    const LimitProfile z = LimitProfile::z_henon(alpha, c.gamma, delta2_of_alpha(alpha));
    auto f = [&](double r) {
        return r <= 0.0 ? 0.0 : std::exp((1.0 + alpha) * std::log(r) + z.eval(r).first);
    };
    return {gk_integrate(f, 0.0, ell_alpha(alpha)), (2.0 + alpha) * c.gamma / 2.0};
}

double correspondence_check(double alpha, double delta, const std::vector<double>& r_samples) {
    const auto& c = universal();
    const double half = (2.0 + alpha) / 2.0;
    const LimitProfile u = LimitProfile::u_family(alpha, half * half * delta);
    const LimitProfile v = LimitProfile::v_family(delta);
    const LimitProfile zh =
        LimitProfile::z_henon(alpha, c.gamma, std::pow(half, 2.0 + c.gamma) * delta);
    const LimitProfile z = LimitProfile::z_family(c.gamma, delta);
    double worst = 0.0;
    for (double r : r_samples) {
        const double s = std::exp(std::log(r) * half) / half;
        worst = std::max(worst, std::fabs(u.eval(r).first - v.eval(s).first));
        worst = std::max(worst, std::fabs(zh.eval(r).first - z.eval(s).first));
    }
    return worst;
}

double normalization_integral(const LimitProfile& prof) {
    if (prof.kind != ProfileKind::Eta1 && prof.kind != ProfileKind::Eta2)
        throw std::invalid_argument("normalization_integral: eta kinds only");
    auto f = [&](double r) {
        if (r <= 0.0) return 0.0;
        const double e = prof.eval(r).first;
        return e * e / r;
    };
    return gk_integrate(f, 0.0, std::numeric_limits<double>::infinity());
}

C1Distance profile_distance(const Trajectory& resc, const LimitProfile& prof, double R,
                            double inner) {
    if (resc.size() < 4) throw std::invalid_argument("profile_distance: empty trajectory");
    const double r_lo = std::max(inner, resc.t.front());
    if (!(r_lo < R) || resc.t.back() < R * (1.0 - 1e-9))
        throw std::invalid_argument("profile_distance: trajectory does not span [inner, R]");
    const Pchip val(resc.u, resc.v);
    const Pchip rw(resc.u, resc.w);

    C1Distance d{0.0, 0.0};
    const int n = 1024;
    auto probe = [&](double r) {
        const auto [pv, pd] = prof.eval(r);
        const double lr = std::log(r);
        d.c0 = std::max(d.c0, std::fabs(val(lr) - pv));
        d.c1 = std::max(d.c1, std::fabs(rw(lr) / r - pd));
    };
    for (int i = 0; i <= n; ++i) {
        probe(r_lo + (R - r_lo) * i / n);                                  // linear sweep
        probe(std::exp(std::log(r_lo) + (std::log(R) - std::log(r_lo)) * i / n));  // log sweep
    }
    return d;
}

double ell_ratio(double p) {
    const RadialSolution sol = solve_radial({0.0, p}, 2);
    return std::exp(sol.log_s2 - sol.log_eps[1]);
}

double estimate_ell(const std::vector<double>& p_grid) {
    if (p_grid.empty()) throw std::invalid_argument("estimate_ell: empty grid");
    for (std::size_t i = 0; i < p_grid.size(); ++i) {
        if (!(p_grid[i] > 1.0) || (i > 0 && p_grid[i] <= p_grid[i - 1]))
            throw std::invalid_argument("estimate_ell: grid must be increasing, all > 1");
    }
    std::vector<double> x(p_grid.size()), y(p_grid.size());
    for (std::size_t i = 0; i < p_grid.size(); ++i) {
        x[i] = 1.0 / p_grid[i];
        y[i] = ell_ratio(p_grid[i]);
    }
    if (y.size() == 1) return y[0];
    // Neville extrapolation to 1/p = 0
    for (std::size_t level = 1; level < y.size(); ++level)
        for (std::size_t i = y.size() - 1; i >= level; --i)
            y[i] = y[i] + (y[i] - y[i - 1]) * (0.0 - x[i]) / (x[i] - x[i - level]);
    return y.back();
}

}  // namespace henonlab
