#include "henonlab/radial.hpp"

#include <boost/numeric/odeint.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace odeint = boost::numeric::odeint;

namespace henonlab {
namespace {

// state: v, w = t v', int t v'^2 dt, int t |v|^{p+1} dt
using State = std::array<double, 4>;

struct ReducedOde {
    double p;
    void operator()(const State& y, State& dy, double u) const {
        const double v = y[0];
        dy[0] = y[1];
        if (v == 0.0) {
            dy[1] = 0.0;
            dy[3] = 0.0;
        } else {
            const double la = std::log(std::fabs(v));
            // e^{2u} |v|^{p-1} v stays bounded along solutions even when
            // e^{2u} alone overflows, so combine the exponents first.
            const double m = std::exp(2.0 * u + p * la);
            dy[1] = v > 0.0 ? -m : m;
            dy[3] = std::exp(2.0 * u + (p + 1.0) * la);
        }
        dy[2] = y[1] * y[1];
    }
};

// series start v = a - (a^p/4) t^2 + (p a^{2p-1}/64) t^4 at t = e^{u0}
State series_state(double p, double a, double u0) {
    const double t2 = std::exp(2.0 * u0);
    const double ap = std::exp(p * std::log(a));
    const double c2 = -ap / 4.0, c4 = p * ap * ap / (64.0 * a);
    State y;
    y[0] = a + c2 * t2 + c4 * t2 * t2;
    y[1] = 2.0 * c2 * t2 + 4.0 * c4 * t2 * t2;
    y[2] = ap * ap * t2 * t2 / 16.0;   // tail of int t v'^2 dt below t0
    y[3] = ap * a * t2 / 2.0;          // tail of int t |v|^{p+1} dt below t0
    return y;
}

double start_u(double p, double a) {
    // 16 e-folds below the scale of the first feature, a^{-(p-1)/2} p^{-1/2}
    return -0.5 * std::log(p) - 0.5 * (p - 1.0) * std::log(a) - 16.0;
}

struct Event {
    double u;
    double other;  // w at a v-zero, v at a w-zero
    bool is_zero;  // true for v-zero, false for critical point
};

// Integration driver. Calls on_step(stepper, u_prev, u_cur) after every
// accepted step and records refined v-zeros / w-zeros in order.
template <typename Stepper, typename OnStep>
void drive(Stepper& stepper, const ReducedOde& ode, double u_end, int zero_budget,
           std::vector<Event>& events, OnStep&& on_step) {
    int zeros_found = 0;
    while (true) {
        auto interval = stepper.do_step(ode);
        const double ua = interval.first, ub = interval.second;
        if (ub - ua < 1e-13 * std::max(1.0, std::fabs(ub)))
            throw std::runtime_error("radial integrator: step-size underflow at t = " +
                                     std::to_string(std::exp(ub)));

        // scan for sign changes of v and w on subintervals of the step
        const int nsub = std::max(2, static_cast<int>(std::ceil((ub - ua) / 0.1)));
        State yl, yr;
        auto refine = [&](double lo, double hi, int comp) {
            State ym;
            for (int it = 0; it < 200 && hi - lo > 1e-14 * std::max(1.0, std::fabs(hi)); ++it) {
                const double mid = 0.5 * (lo + hi);
                stepper.calc_state(mid, ym);
                State ylo;
                stepper.calc_state(lo, ylo);
                if ((ylo[comp] < 0.0) != (ym[comp] < 0.0))
                    hi = mid;
                else
                    lo = mid;
            }
            stepper.calc_state(0.5 * (lo + hi), ym);
            return std::pair<double, State>(0.5 * (lo + hi), ym);
        };
        bool stop = false;
        for (int k = 0; k < nsub && !stop; ++k) {
            const double lo = ua + (ub - ua) * k / nsub;
            const double hi = ua + (ub - ua) * (k + 1) / nsub;
            stepper.calc_state(lo, yl);
            stepper.calc_state(hi, yr);
            if ((yl[1] < 0.0) != (yr[1] < 0.0)) {
                auto [uc, yc] = refine(lo, hi, 1);
                if (uc <= u_end) events.push_back({uc, yc[0], false});
            }
            if ((yl[0] < 0.0) != (yr[0] < 0.0)) {
                auto [uz, yz] = refine(lo, hi, 0);
                if (uz <= u_end) {
                    events.push_back({uz, yz[1], true});
                    if (++zeros_found >= zero_budget) stop = true;
                }
            }
        }
        on_step(stepper, ua, std::min(ub, u_end));
        if (stop || ub >= u_end) break;
    }
    std::sort(events.begin(), events.end(), [](const Event& a, const Event& b) { return a.u < b.u; });
}

auto make_stepper() {
    // max_dt keeps the controller from inflating steps without bound on the
    // log-linear stretches, where the local error estimate vanishes
    return odeint::make_dense_output(1e-13, 1e-12, 2.0, odeint::runge_kutta_dopri5<State>());
}

}  // namespace

std::vector<double> Trajectory::zeros_t() const {
    std::vector<double> z(zeros_u.size());
    for (std::size_t i = 0; i < z.size(); ++i) z[i] = std::exp(zeros_u[i]);
    return z;
}

Trajectory integrate_ivp(double p, double a, double t_max, int zero_budget) {
    if (!(p > 1.0)) throw std::invalid_argument("integrate_ivp: p must be > 1");
    if (!(a > 0.0)) throw std::invalid_argument("integrate_ivp: a must be > 0");
    if (!(t_max > 0.0)) throw std::invalid_argument("integrate_ivp: t_max must be > 0");

    const double u0 = std::min(start_u(p, a), std::log(t_max) - 1.0);
    const ReducedOde ode{p};
    auto stepper = make_stepper();
    stepper.initialize(series_state(p, a, u0), u0, 0.05);

    Trajectory traj;
    std::vector<Event> events;
    auto record = [&](auto& st, double, double ub) {
        State y;
        st.calc_state(ub, y);
        traj.u.push_back(ub);
        traj.v.push_back(y[0]);
        traj.w.push_back(y[1]);
    };
    traj.u.push_back(u0);
    traj.v.push_back(series_state(p, a, u0)[0]);
    traj.w.push_back(series_state(p, a, u0)[1]);
    drive(stepper, ode, std::log(t_max), zero_budget > 0 ? zero_budget : 1 << 30, events, record);

    for (const auto& e : events) {
        if (e.is_zero) {
            traj.zeros_u.push_back(e.u);
            traj.zeros_w.push_back(e.other);
        } else {
            traj.crit_u.push_back(e.u);
            traj.crit_val.push_back(e.other);
        }
    }
    traj.t.resize(traj.u.size());
    for (std::size_t i = 0; i < traj.u.size(); ++i) traj.t[i] = std::exp(traj.u[i]);
    return traj;
}

namespace {

// normalized s-grid: log-uniform core, uniform-in-t tail on [0.5, 1],
// clusters around interior zeros
std::vector<double> design_grid(double s_min, const std::vector<double>& interior_zeros_s) {
    std::vector<double> s;
    const double s_switch = std::log(0.5);
    const double h = std::min(1.0 / 64.0, (s_switch - s_min) / 3400.0);
    for (double x = s_min; x < s_switch; x += h) s.push_back(x);
    for (int k = 0; k <= 512; ++k) s.push_back(std::log(0.5 + 0.5 * k / 512.0));
    for (double z : interior_zeros_s) {
        double d = 0.4;
        for (int k = 0; k < 26; ++k, d *= 0.45) {
            if (z - d > s_min) s.push_back(z - d);
            if (z + d < 0.0) s.push_back(z + d);
        }
    }
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end(),
                        [](double x, double y) { return y - x < 1e-13; }),
            s.end());
    if (s.back() < 0.0) s.push_back(0.0);
    s.back() = 0.0;
    return s;
}

}  // namespace

RadialSolution solve_radial(const ProblemParams& params, int zones) {
    params.validate();
    if (zones != 1 && zones != 2)
        throw std::invalid_argument("solve_radial: zones must be 1 or 2");

    const double p = params.p;
    const double u0 = start_u(p, 1.0);
    const double u_horizon = 0.5 * p + 50.0;
    const ReducedOde ode{p};

    // pass 1: locate zeros and critical points of the a = 1 trajectory
    std::vector<Event> events;
    {
        auto stepper = make_stepper();
        stepper.initialize(series_state(p, 1.0, u0), u0, 0.05);
        drive(stepper, ode, u_horizon, zones, events, [](auto&, double, double) {});
    }
    std::vector<double> zeros_u, zeros_w, crit_u, crit_v;
    for (const auto& e : events) {
        if (e.is_zero) {
            zeros_u.push_back(e.u);
            zeros_w.push_back(e.other);
        } else {
            crit_u.push_back(e.u);
            crit_v.push_back(e.other);
        }
    }
    if (static_cast<int>(zeros_u.size()) < zones)
        throw std::runtime_error("solve_radial: fewer than requested zeros before safety horizon");

    const double u_m = zeros_u[zones - 1];
    // scale factor T^{2/(p-1)} normalizing the m-th zero to t = 1
    const double log_scale = 2.0 * u_m / (p - 1.0);
    if (log_scale > 700.0)
        throw std::runtime_error("solve_radial: normalization overflows for p this close to 1");
    const double scale = std::exp(log_scale);

    std::vector<double> interior_s(zeros_u.begin(), zeros_u.end() - (zeros_u.size() - zones + 1));
    for (auto& z : interior_s) z -= u_m;

    // pass 2: sample the dense output on the designed normalized grid
    const std::vector<double> s_grid = design_grid(u0 - u_m, interior_s);
    RadialSolution sol;
    sol.params = params;
    sol.zones = zones;
    auto& tr = sol.profile;
    tr.u.reserve(s_grid.size());
    {
        auto stepper = make_stepper();
        stepper.initialize(series_state(p, 1.0, u0), u0, 0.05);
        std::size_t next = 0;
        std::vector<Event> dummy;
        auto sample = [&](auto& st, double ua, double ub) {
            State y;
            while (next < s_grid.size() && s_grid[next] + u_m <= ub + 1e-15) {
                const double uq = std::clamp(s_grid[next] + u_m, ua, ub);
                st.calc_state(uq, y);
                tr.u.push_back(s_grid[next]);
                tr.v.push_back(scale * y[0]);
                tr.w.push_back(scale * y[1]);
                if (next + 1 == s_grid.size()) {
                    sol.nehari_grad = y[2];
                    sol.nehari_pot = y[3];
                }
                ++next;
            }
        };
        drive(stepper, ode, u_m + 1e-9, zones, dummy, sample);
        if (next < s_grid.size())
            throw std::runtime_error("solve_radial: dense sampling ended early");
    }
    tr.t.resize(tr.u.size());
    for (std::size_t i = 0; i < tr.u.size(); ++i) tr.t[i] = std::exp(tr.u[i]);

    for (std::size_t j = 0; j < zeros_u.size() && j < static_cast<std::size_t>(zones); ++j) {
        tr.zeros_u.push_back(zeros_u[j] - u_m);
        tr.zeros_w.push_back(scale * zeros_w[j]);
    }
    for (std::size_t j = 0; j < crit_u.size(); ++j) {
        if (crit_u[j] < u_m) {
            tr.crit_u.push_back(crit_u[j] - u_m);
            tr.crit_val.push_back(scale * crit_v[j]);
        }
    }

    sol.mu.push_back(scale);  // v(0+) = scale * 1
    if (zones == 2) {
        if (tr.crit_u.size() != 1)
            throw std::runtime_error("solve_radial: expected exactly one interior critical point");
        sol.mu.push_back(std::fabs(tr.crit_val[0]));
        sol.log_t1 = tr.zeros_u[0];
        sol.t1 = std::exp(sol.log_t1);
        sol.log_s2 = tr.crit_u[0];
        sol.s2 = std::exp(sol.log_s2);
    }
    for (double m : sol.mu) {
        const double le = -0.5 * (std::log(p) + (p - 1.0) * std::log(m));
        sol.log_eps.push_back(le);
        sol.eps.push_back(std::exp(le));
    }
    sol.v_interp = Pchip(tr.u, tr.v);
    return sol;
}

double RadialSolution::eval_v(double s) const {
    if (s <= v_interp.x_min()) return mu[0];  // flat core below the grid
    if (s >= 0.0) return 0.0;
    return v_interp(s);
}

double RadialSolution::eval_log_abs_v(double s) const {
    if (s <= v_interp.x_min()) return std::log(mu[0]);
    const auto& zu = profile.zeros_u;
    // inside a small collar around each zero, |v| ~ |w_z| |s - s_z|
    for (std::size_t j = 0; j < zu.size(); ++j) {
        const double d = std::fabs(s - zu[j]);
        if (d < 2e-3)
            return std::log(std::fabs(profile.zeros_w[j])) + std::log(std::max(d, 1e-300));
    }
    if (s >= 0.0) return -std::numeric_limits<double>::infinity();
    const double val = v_interp(s);
    if (val == 0.0) return -std::numeric_limits<double>::infinity();
    return std::log(std::fabs(val));
}

std::pair<Trajectory, HenonScalingData> to_henon(const RadialSolution& sol, double alpha) {
    if (!(alpha >= 0.0)) throw std::invalid_argument("to_henon: alpha must be >= 0");
    const double q = 2.0 / (2.0 + alpha);          // log r = q log t
    const double c = std::pow((2.0 + alpha) / 2.0, 2.0 / (sol.params.p - 1.0));

    Trajectory out;
    const auto& tr = sol.profile;
    out.u.resize(tr.size());
    out.t.resize(tr.size());
    out.v.resize(tr.size());
    out.w.resize(tr.size());
    for (std::size_t i = 0; i < tr.size(); ++i) {
        out.u[i] = q * tr.u[i];
        out.t[i] = std::exp(out.u[i]);
        out.v[i] = c * tr.v[i];
        out.w[i] = c * tr.w[i] / q;  // r u'(r) = (1/q) t v'(t)
    }
    for (std::size_t j = 0; j < tr.zeros_u.size(); ++j) {
        out.zeros_u.push_back(q * tr.zeros_u[j]);
        out.zeros_w.push_back(c * tr.zeros_w[j] / q);
    }
    for (std::size_t j = 0; j < tr.crit_u.size(); ++j) {
        out.crit_u.push_back(q * tr.crit_u[j]);
        out.crit_val.push_back(c * tr.crit_val[j]);
    }

    HenonScalingData hs;
    for (std::size_t i = 0; i < sol.mu.size(); ++i) {
        hs.mu_henon.push_back(c * sol.mu[i]);
        hs.rho.push_back(std::exp(q * (std::log(q) + sol.log_eps[i])));
    }
    if (sol.zones == 2) {
        hs.r_p = std::exp(q * sol.log_t1);
        hs.sigma_p = std::exp(q * sol.log_s2);
    }
    return {std::move(out), hs};
}

Trajectory rescale(const RadialSolution& sol, int zone) {
    if (zone < 1 || zone > sol.zones) throw std::invalid_argument("rescale: bad zone");
    const double p = sol.params.p;
    const double le = sol.log_eps[zone - 1];
    const double vc = (zone == 1) ? sol.mu[0] : sol.profile.crit_val[0];

    // r-window: from 1e-4 up to min(100, t_zone_end / eps)
    const double s_end = (zone == 1 && sol.zones == 2) ? sol.log_t1 : 0.0;
    const double r_hi = std::min(100.0, std::exp(s_end - le));
    const double r_lo = 1e-4;
    const int n = 2048;

    Trajectory out;
    out.u.resize(n);
    out.t.resize(n);
    out.v.resize(n);
    out.w.resize(n);
    const double lr0 = std::log(r_lo), lr1 = std::log(r_hi);
    for (int i = 0; i < n; ++i) {
        const double lr = lr0 + (lr1 - lr0) * i / (n - 1);
        const double s = lr + le;  // log t of the sample
        const double r = std::exp(lr);
        const double vv = sol.eval_v(s);
        double ww = 0.0;
        if (s > sol.v_interp.x_min() && s < 0.0) ww = sol.v_interp.derivative(s);
        out.u[i] = lr;
        out.t[i] = r;
        out.v[i] = p * (vv - vc) / vc;
        out.w[i] = p * ww / vc;  // r d(vtilde)/dr = p (t v'(t)) / vc
    }
    return out;
}

Trajectory rescale_henon(const RadialSolution& sol, double alpha, int zone) {
    if (!(alpha >= 0.0)) throw std::invalid_argument("rescale_henon: alpha must be >= 0");
    if (zone < 1 || zone > sol.zones) throw std::invalid_argument("rescale_henon: bad zone");
    const double p = sol.params.p;
    const double le = sol.log_eps[zone - 1];
    const double vc = (zone == 1) ? sol.mu[0] : sol.profile.crit_val[0];
    const double half = (2.0 + alpha) / 2.0;

    // r-window transported from the t-side window through s = r^{(2+a)/2}/half
    const double s_end = (zone == 1 && sol.zones == 2) ? sol.log_t1 : 0.0;
    const double st_hi = std::min(100.0, std::exp(s_end - le));
    const double r_hi = std::pow(half * st_hi, 1.0 / half);
    const double r_lo = 1e-4;
    const int n = 2048;

    Trajectory out;
    out.u.resize(n);
    out.t.resize(n);
    out.v.resize(n);
    out.w.resize(n);
    const double lr0 = std::log(r_lo), lr1 = std::log(r_hi);
    for (int i = 0; i < n; ++i) {
        const double lr = lr0 + (lr1 - lr0) * i / (n - 1);
        const double r = std::exp(lr);
        const double lst = half * lr - std::log(half);  // log of vtilde argument
        const double s = lst + le;                      // log t of the sample
        const double vv = sol.eval_v(s);
        double ww = 0.0;
        if (s > sol.v_interp.x_min() && s < 0.0) ww = sol.v_interp.derivative(s);
        out.u[i] = lr;
        out.t[i] = r;
        out.v[i] = p * (vv - vc) / vc;
        out.w[i] = half * p * ww / vc;  // r d(utilde)/dr
    }
    return out;
}

ScalingReport scaling_report(const RadialSolution& sol, double alpha) {
    auto [traj, hs] = to_henon(sol, alpha);
    (void)traj;
    ScalingReport r;
    r.alpha = alpha;
    r.p = sol.params.p;
    r.zones = sol.zones;
    r.mu = sol.mu;
    r.eps = sol.eps;
    r.rho = hs.rho;
    r.t1 = sol.t1;
    r.s2 = sol.s2;
    r.r_p = hs.r_p;
    r.sigma_p = hs.sigma_p;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    if (sol.zones == 2) {
        r.s2_over_eps2 = std::exp(sol.log_s2 - sol.log_eps[1]);
        r.t1_over_eps1 = std::exp(sol.log_t1 - sol.log_eps[0]);
        r.t1_over_eps2 = std::exp(sol.log_t1 - sol.log_eps[1]);
    } else {
        r.s2_over_eps2 = r.t1_over_eps1 = r.t1_over_eps2 = nan;
    }
    return r;
}

}  // namespace henonlab
