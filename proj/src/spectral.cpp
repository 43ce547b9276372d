#include "henonlab/spectral.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

#include "henonlab/profiles.hpp"

namespace henonlab {
namespace {

struct EigenPairs {
    std::vector<double> values;                 // lowest few eigenvalues
    std::vector<std::vector<double>> vectors;   // for the first `nvec` of them
};

// Lowest `nval` eigenvalues (and `nvec` eigenvectors) of -phi'' - Q phi on
// (s_lo, s_hi), Dirichlet ends, N intervals, second-order central FD.
EigenPairs solve_fd(const std::function<double(double)>& Q, double s_lo, double s_hi, int N,
                    int nval, int nvec) {
    const int n = N - 1;  // interior nodes
    const double h = (s_hi - s_lo) / N;
    std::vector<double> diag(n), off(std::max(0, n - 1), -1.0 / (h * h));
    for (int i = 0; i < n; ++i) {
        const double s = s_lo + h * (i + 1);
        diag[i] = 2.0 / (h * h) - Q(s);
    }
    nval = std::min(nval, n);
    std::vector<double> w(n);
    std::vector<int> iblock(n), isplit(n);
    int m = 0, nsplit = 0;
    int info = LAPACKE_dstebz('I', 'B', n, 0.0, 0.0, 1, nval, 2e-15, diag.data(), off.data(),
                              &m, &nsplit, w.data(), iblock.data(), isplit.data());
    if (info != 0) throw std::runtime_error("dstebz failed, info = " + std::to_string(info));

    EigenPairs out;
    out.values.assign(w.begin(), w.begin() + m);
    nvec = std::min(nvec, m);
    if (nvec > 0) {
        std::vector<double> z(static_cast<std::size_t>(n) * nvec);
        std::vector<int> ifail(nvec);
        info = LAPACKE_dstein(LAPACK_COL_MAJOR, n, diag.data(), off.data(), nvec, w.data(),
                              iblock.data(), isplit.data(), z.data(), n, ifail.data());
        if (info != 0) throw std::runtime_error("dstein failed, info = " + std::to_string(info));
        for (int j = 0; j < nvec; ++j) {
            std::vector<double> phi(z.begin() + static_cast<std::size_t>(j) * n,
                                    z.begin() + static_cast<std::size_t>(j + 1) * n);
            // normalize in the transported inner product int phi^2 ds = h sum phi^2
            double s2 = 0.0;
            std::size_t imax = 0;
            for (std::size_t i = 0; i < phi.size(); ++i) {
                s2 += phi[i] * phi[i];
                if (std::fabs(phi[i]) > std::fabs(phi[imax])) imax = i;
            }
            const double sgn = phi[imax] >= 0.0 ? 1.0 : -1.0;
            const double c = sgn / std::sqrt(h * s2);
            for (auto& x : phi) x *= c;
            out.vectors.push_back(std::move(phi));
        }
    }
    return out;
}

// Coarse/fine sweep with one Richardson step on the eigenvalues.
SpectralResult solve_refined(const std::function<double(double)>& Q, double s_lo, double s_hi,
                             int N, int count, const char* scheme) {
    auto coarse = solve_fd(Q, s_lo, s_hi, N, 4, 0);
    auto fine = solve_fd(Q, s_lo, s_hi, 2 * N, 4, count);

    SpectralResult res;
    res.disc.L_lo = -s_lo;
    res.disc.L_hi = s_hi;
    res.disc.N = 2 * N;
    res.disc.scheme = scheme;
    const std::size_t navail = std::min(coarse.values.size(), fine.values.size());
    for (std::size_t j = 0; j < navail; ++j) {
        const double ext = (4.0 * fine.values[j] - coarse.values[j]) / 3.0;
        if (ext >= 0.0 || static_cast<int>(res.nu.size()) >= count) break;
        res.nu.push_back(ext);
        res.nu_coarse.push_back(coarse.values[j]);
        res.nu_fine.push_back(fine.values[j]);
        if (std::fabs(coarse.values[j] - fine.values[j]) > 1e-4) res.disc.too_coarse = true;
        if (j < fine.vectors.size()) res.eigenfunctions.push_back(std::move(fine.vectors[j]));
    }
    const int nf = 2 * N;
    const double h = (s_hi - s_lo) / nf;
    res.s_grid.resize(nf - 1);
    res.potential.resize(nf - 1);
    for (int i = 0; i < nf - 1; ++i) {
        res.s_grid[i] = s_lo + h * (i + 1);
        res.potential[i] = Q(res.s_grid[i]);
    }
    return res;
}

double domain_depth(const RadialSolution& sol) {
    // reach 14 e-folds below the innermost concentration scale
    const double le_min = *std::min_element(sol.log_eps.begin(), sol.log_eps.end());
    return std::max(30.0, -le_min + 14.0);
}

}  // namespace

SpectralResult finite_spectrum(const RadialSolution& sol, int count) {
    if (count < 1 || count > 2) throw std::invalid_argument("finite_spectrum: count in {1,2}");
    const double p = sol.params.p;
    const double L = domain_depth(sol);
    // the kappa^2 mode needs the finer grid: its curvature scale is kappa^4
    const double h_target = sol.zones == 2 ? 6e-4 : 1.5e-3;
    const int N = std::max(8000, static_cast<int>(std::ceil(L / h_target)));
    const double logp = std::log(p);
    auto Q = [&](double s) {
        const double ex = logp + 2.0 * s + (p - 1.0) * sol.eval_log_abs_v(s);
        return ex < -745.0 ? 0.0 : std::exp(ex);
    };
    return solve_refined(Q, -L, 0.0, N, count, "fd2+richardson");
}

LimitSpectralResult limit_spectrum(int which) {
    if (which != 1 && which != 2) throw std::invalid_argument("limit_spectrum: which in {1,2}");
    const auto& c = universal();
    std::function<double(double)> Q;
    if (which == 1) {
        // e^{2s} W^1(e^s) = 64 / (8 e^{-s} + e^s)^2
        Q = [](double s) {
            const double d = 8.0 * std::exp(-s) + std::exp(s);
            return 64.0 / (d * d);
        };
    } else {
        const double g = c.gamma, d0 = c.delta_ell;
        const double pref = std::log(2.0 * (2.0 + g) * (2.0 + g) * d0);
        Q = [g, d0, pref](double s) {
            const double a = std::log(d0), b = (2.0 + g) * s;
            const double hi = std::max(a, b), lo = std::min(a, b);
            const double lse = hi + std::log1p(std::exp(lo - hi));  // log(d0 + e^{(2+g)s})
            return std::exp(pref + (2.0 + g) * s - 2.0 * lse);
        };
    }
    const double L = 30.0;
    const int N = static_cast<int>(std::ceil(2.0 * L / 7.5e-4));
    SpectralResult r = solve_refined(Q, -L, L, N, 1, "fd2+richardson");

    LimitSpectralResult out;
    out.disc = r.disc;
    out.s_grid = std::move(r.s_grid);
    out.potential = std::move(r.potential);
    if (r.nu.empty()) throw std::runtime_error("limit_spectrum: no negative eigenvalue found");
    out.beta = r.nu[0];
    out.eigenfunction = std::move(r.eigenfunctions[0]);
    // count the negatives among the lowest 4 of the fine discrete operator
    auto probe = solve_fd(Q, -L, L, 2 * N, 4, 0);
    for (double v : probe.values)
        if (v < 0.0) ++out.negative_count;
    return out;
}

double kappa_rescale_check() {
    const auto& c = universal();
    const LimitProfile e1 = LimitProfile::eta1();
    const LimitProfile e2 = LimitProfile::eta2(c.kappa, c.delta_ell);
    const double root_k = std::sqrt(c.kappa);
    const double scale = std::sqrt(8.0 / c.delta_ell);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const double r = std::exp(std::log(1e-2) + i * (std::log(1e2) - std::log(1e-2)) / 99.0);
        const double lhs = e2.eval(r).first;
        const double rhs = root_k * e1.eval(scale * std::pow(r, c.kappa)).first;
        worst = std::max(worst, std::fabs(lhs - rhs));
    }
    return worst;
}

SpectralResult henon_side_oracle(const Trajectory& u_profile, const ProblemParams& params,
                                 int count) {
    params.validate();
    if (count < 1 || count > 2) throw std::invalid_argument("henon_side_oracle: count in {1,2}");
    if (u_profile.size() < 16) throw std::invalid_argument("henon_side_oracle: empty profile");
    const double p = params.p;
    const double q = 2.0 / (2.0 + params.alpha);

    const Pchip uv(u_profile.u, u_profile.v);
    const double core = u_profile.v.front();  // flat limit of u at r -> 0
    const auto& zu = u_profile.zeros_u;
    const auto& zw = u_profile.zeros_w;
    auto log_abs_u = [&](double sigma) {
        if (sigma <= uv.x_min()) return std::log(std::fabs(core));
        for (std::size_t j = 0; j < zu.size(); ++j) {
            const double d = std::fabs(sigma - zu[j]);
            if (d < 2e-3 * q)
                return std::log(std::fabs(zw[j])) + std::log(std::max(d, 1e-300));
        }
        if (sigma >= 0.0) return -std::numeric_limits<double>::infinity();
        const double val = uv(sigma);
        return val == 0.0 ? -std::numeric_limits<double>::infinity()
                          : std::log(std::fabs(val));
    };
    const double logp = std::log(p);
    const double two_alpha = 2.0 + params.alpha;
    auto Q = [&](double sigma) {
        const double ex = logp + two_alpha * sigma + (p - 1.0) * log_abs_u(sigma);
        return ex < -745.0 ? 0.0 : std::exp(ex);
    };
    const double L = -u_profile.u.front() - 2.0;
    const int zones = static_cast<int>(zu.size());
    const double h_target = (zones >= 2 ? 6e-4 : 1.5e-3) * q;
    const int N = std::max(8000, static_cast<int>(std::ceil(L / h_target)));
    return solve_refined(Q, -L, 0.0, N, count, "fd2+richardson(r)");
}

PotentialDiagnostics potential_diagnostics(const RadialSolution& sol, double R, double K) {
    PotentialDiagnostics d;
    d.R = R;
    d.K = K;
    const double p = sol.params.p, logp = std::log(p);
    const auto& tr = sol.profile;
    std::vector<double> f(tr.size());
    for (std::size_t i = 0; i < tr.size(); ++i) {
        const double v = tr.v[i];
        f[i] = (v == 0.0) ? 0.0
                          : std::exp(logp + 2.0 * tr.u[i] +
                                     (p - 1.0) * std::log(std::fabs(v)));
        d.sup_fp = std::max(d.sup_fp, f[i]);
    }
    // one interior maximum of f_p per nodal zone
    double zone_lo = tr.u.front();
    for (int z = 0; z < sol.zones; ++z) {
        const double zone_hi = tr.zeros_u[z];
        double best = -1.0, best_u = zone_lo;
        for (std::size_t i = 1; i + 1 < tr.size(); ++i) {
            if (tr.u[i] <= zone_lo || tr.u[i] >= zone_hi) continue;
            if (f[i] >= f[i - 1] && f[i] >= f[i + 1] && f[i] > best) {
                best = f[i];
                best_u = tr.u[i];
            }
        }
        if (best > 0.0) {
            d.bump_t.push_back(std::exp(best_u));
            d.bump_f.push_back(best);
        }
        zone_lo = zone_hi;
    }
    // windows from the paper's in-between / outer estimate
    const double lR = std::log(R), lK = std::log(K);
    auto in_windows = [&](double s) {
        if (sol.zones == 2) {
            const bool mid = s >= sol.log_eps[0] + lR && s <= sol.log_eps[1] - lK;
            const bool outer = s >= sol.log_eps[1] + lK && s <= 0.0;
            return mid || outer;
        }
        return s >= sol.log_eps[0] + lR && s <= 0.0;
    };
    for (std::size_t i = 0; i < tr.size(); ++i)
        if (in_windows(tr.u[i])) d.window_max = std::max(d.window_max, f[i]);
    return d;
}

double rayleigh_quotient(const SpectralResult& res, std::size_t j) {
    if (j >= res.eigenfunctions.size()) throw std::out_of_range("rayleigh_quotient");
    const auto& phi = res.eigenfunctions[j];
    const double h = res.s_grid[1] - res.s_grid[0];
    double grad = 0.0, pot = 0.0, nrm = 0.0;
    double prev = 0.0;  // Dirichlet boundary
    for (std::size_t i = 0; i < phi.size(); ++i) {
        const double dphi = (phi[i] - prev) / h;
        grad += dphi * dphi * h;
        pot += res.potential[i] * phi[i] * phi[i] * h;
        nrm += phi[i] * phi[i] * h;
        prev = phi[i];
    }
    grad += (0.0 - prev) * (0.0 - prev) / h;  // last bond to the boundary
    return (grad - pot) / nrm;
}

double eigen_inner(const SpectralResult& res, std::size_t j, std::size_t k) {
    const auto& a = res.eigenfunctions.at(j);
    const auto& b = res.eigenfunctions.at(k);
    const double h = res.s_grid[1] - res.s_grid[0];
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc * h;
}

}  // namespace henonlab
