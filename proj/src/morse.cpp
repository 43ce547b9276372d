#include "henonlab/morse.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace henonlab {
namespace {

int iceil(double x) { return static_cast<int>(std::ceil(x)); }

void check_nu(int m, const std::vector<double>& nu) {
    if (static_cast<int>(nu.size()) != m)
        throw std::invalid_argument("morse: expected exactly m negative eigenvalues");
    for (double v : nu)
        if (!(v < 0.0)) throw std::invalid_argument("morse: eigenvalues must be negative");
}

// ceil((2+alpha)/2 sqrt(-nu)), the angular cut per eigenvalue
int cell(double alpha, double nu) { return iceil((2.0 + alpha) / 2.0 * std::sqrt(-nu)); }

}  // namespace

int morse_index(int m, double alpha, const std::vector<double>& nu) {
    check_nu(m, nu);
    int acc = 0;
    for (double v : nu) acc += cell(alpha, v);
    return 2 * acc - m;
}

int morse_index_sym(int n, int m, double alpha, const std::vector<double>& nu) {
    if (n < 1) throw std::invalid_argument("morse_index_sym: n must be >= 1");
    check_nu(m, nu);
    int acc = 0;
    for (double v : nu) acc += (cell(alpha, v) - 1) / n;
    return m + 2 * acc;
}

IndexRange asymptotic_morse(int m, double alpha) {
    if (!(alpha >= 0.0)) throw std::invalid_argument("asymptotic_morse: alpha must be >= 0");
    const int half = iceil(alpha / 2.0);
    if (m == 1) {
        const int v = 1 + 2 * half;
        return {v, v};
    }
    if (m != 2) throw std::invalid_argument("asymptotic_morse: m in {1,2}");
    const double x = (2.0 + alpha) * universal().kappa / 2.0;
    if (is_resonant(alpha)) {
        const int n = static_cast<int>(std::round(x));
        return {2 * n + 2 * half, 2 * n + 2 * half + 2};
    }
    const int v = 2 * iceil(x) + 2 * half;
    return {v, v};
}

std::pair<int, int> multiplicity(double alpha) {
    if (!(alpha >= 0.0)) throw std::invalid_argument("multiplicity: alpha must be >= 0");
    const double x = (2.0 + alpha) * universal().kappa / 2.0;
    return {iceil(alpha / 2.0), iceil(x - 1.0)};
}

IndexRange asymptotic_sym_morse(int n, int m, double alpha) {
    if (n < 1) throw std::invalid_argument("asymptotic_sym_morse: n must be >= 1");
    if (!(alpha >= 0.0)) throw std::invalid_argument("asymptotic_sym_morse: alpha must be >= 0");
    const int half = iceil(alpha / 2.0) / n;
    if (m == 1) {
        const int v = 1 + 2 * half;
        return {v, v};
    }
    if (m != 2) throw std::invalid_argument("asymptotic_sym_morse: m in {1,2}");
    const double x = (2.0 + alpha) * universal().kappa / 2.0;
    if (is_resonant(alpha)) {
        const int k = static_cast<int>(std::round(x));
        return {2 + 2 * ((k - 1) / n) + 2 * half, 2 + 2 * (k / n) + 2 * half};
    }
    const int v = 2 + 2 * ((iceil(x - 1.0)) / n) + 2 * half;
    return {v, v};
}

MorseReport full_report(const ProblemParams& params, int m,
                        const std::optional<std::vector<double>>& nu, int n_max) {
    params.validate();
    if (m != 1 && m != 2) throw std::invalid_argument("full_report: m in {1,2}");
    if (n_max < 1) throw std::invalid_argument("full_report: n_max must be >= 1");

    MorseReport r;
    r.alpha = params.alpha;
    r.zones = m;
    r.asymptotic = !nu.has_value();
    r.p = r.asymptotic ? 0.0 : params.p;
    r.resonant = is_resonant(params.alpha);
    // nearest resonance alpha_n (n from rounding (2+alpha) kappa / 2)
    {
        const double kappa = universal().kappa;
        const double x = (2.0 + params.alpha) * kappa / 2.0;
        const int n = std::max(static_cast<int>(std::ceil(kappa)),
                               static_cast<int>(std::round(x)));
        r.nearest_resonance = 2.0 * (n / kappa - 1.0);
    }
    auto mult = multiplicity(params.alpha);
    r.multiplicity_positive = mult.first;
    r.multiplicity_nodal = mult.second;

    if (r.asymptotic) {
        r.morse = asymptotic_morse(m, params.alpha);
        for (int n = 1; n <= n_max; ++n) r.sym_morse[n] = asymptotic_sym_morse(n, m, params.alpha);
        return r;
    }

    r.nu_used = *nu;
    check_nu(m, *nu);
    // per-eigenvalue ceiling cells; when (2+alpha)/2 sqrt(-nu) sits within
    // 1e-6 of an integer the discretization cannot resolve the side, so the
    // report carries both resolutions as an interval instead of picking one
    std::vector<int> cell_lo, cell_hi;
    for (double e : *nu) {
        const double x = (2.0 + params.alpha) / 2.0 * std::sqrt(-e);
        const double k = std::round(x);
        // the tie at 0 is one-sided: nu < 0 forces x > 0, so ceil(x) = 1
        if (k >= 1.0 && std::fabs(x - k) < 1e-6) {
            r.ceiling_unstable = true;
            cell_lo.push_back(static_cast<int>(k));
            cell_hi.push_back(static_cast<int>(k) + 1);
        } else {
            const int c = std::max(1, static_cast<int>(std::ceil(x)));
            cell_lo.push_back(c);
            cell_hi.push_back(c);
        }
    }
    int lo = 0, hi = 0;
    for (std::size_t j = 0; j < cell_lo.size(); ++j) {
        lo += cell_lo[j];
        hi += cell_hi[j];
    }
    r.morse = {2 * lo - m, 2 * hi - m};
    for (int n = 1; n <= n_max; ++n) {
        int slo = 0, shi = 0;
        for (std::size_t j = 0; j < cell_lo.size(); ++j) {
            slo += (cell_lo[j] - 1) / n;
            shi += (cell_hi[j] - 1) / n;
        }
        r.sym_morse[n] = {m + 2 * slo, m + 2 * shi};
    }
    return r;
}

}  // namespace henonlab
