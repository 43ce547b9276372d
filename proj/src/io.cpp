#include "henonlab/io.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace henonlab {

using nlohmann::json;

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

namespace {

json num_array(const std::vector<double>& v) {
    json a = json::array();
    for (double x : v) a.push_back(x);
    return a;
}

json maybe(double x) {
    if (std::isnan(x)) return nullptr;
    return x;
}

}  // namespace

json solution_to_json(const RadialSolution& sol, double alpha) {
    auto [henon, hs] = to_henon(sol, alpha);
    (void)henon;
    const auto& tr = sol.profile;
    std::vector<double> dv(tr.size());
    for (std::size_t i = 0; i < tr.size(); ++i) dv[i] = tr.v_prime(i);
    json crit = json::array();
    for (std::size_t i = 0; i < tr.crit_u.size(); ++i)
        crit.push_back({{"t", std::exp(tr.crit_u[i])}, {"v", tr.crit_val[i]}});
    return json{{"schema", kSchemaTag},
                {"alpha", alpha},
                {"p", sol.params.p},
                {"zones", sol.zones},
                {"grid", num_array(tr.t)},
                {"v", num_array(tr.v)},
                {"dv", num_array(dv)},
                {"zeros", num_array(tr.zeros_t())},
                {"crit", crit},
                {"mu", num_array(sol.mu)},
                {"eps", num_array(sol.eps)},
                {"rho", num_array(hs.rho)},
                {"t1", maybe(sol.t1)},
                {"s2", maybe(sol.s2)},
                {"r_p", maybe(hs.r_p)},
                {"sigma_p", maybe(hs.sigma_p)}};
}

RadialSolution solution_from_json(const json& j) {
    if (j.value("schema", "") != kSchemaTag)
        throw std::invalid_argument("solution_from_json: unknown schema");
    RadialSolution sol;
    sol.params = {j.at("alpha").get<double>(), j.at("p").get<double>()};
    sol.zones = j.at("zones").get<int>();
    auto& tr = sol.profile;
    tr.t = j.at("grid").get<std::vector<double>>();
    tr.v = j.at("v").get<std::vector<double>>();
    const auto dv = j.at("dv").get<std::vector<double>>();
    if (tr.t.size() != tr.v.size() || tr.t.size() != dv.size() || tr.t.size() < 4)
        throw std::invalid_argument("solution_from_json: inconsistent arrays");
    tr.u.resize(tr.t.size());
    tr.w.resize(tr.t.size());
    for (std::size_t i = 0; i < tr.t.size(); ++i) {
        tr.u[i] = std::log(tr.t[i]);
        tr.w[i] = dv[i] * tr.t[i];
    }
    const Pchip w_interp(tr.u, tr.w);
    for (double z : j.at("zeros").get<std::vector<double>>()) {
        tr.zeros_u.push_back(std::log(z));
        tr.zeros_w.push_back(w_interp(std::log(z)));
    }
    for (const auto& cr : j.at("crit")) {
        tr.crit_u.push_back(std::log(cr.at("t").get<double>()));
        tr.crit_val.push_back(cr.at("v").get<double>());
    }
    sol.mu = j.at("mu").get<std::vector<double>>();
    sol.eps = j.at("eps").get<std::vector<double>>();
    for (double e : sol.eps) sol.log_eps.push_back(std::log(e));
    if (!j.at("t1").is_null()) {
        sol.t1 = j.at("t1").get<double>();
        sol.log_t1 = std::log(sol.t1);
    }
    if (!j.at("s2").is_null()) {
        sol.s2 = j.at("s2").get<double>();
        sol.log_s2 = std::log(sol.s2);
    }
    sol.v_interp = Pchip(tr.u, tr.v);
    return sol;
}

json spectrum_to_json(const SpectralResult& res, const ProblemParams& params, int zones) {
    return json{{"schema", kSchemaTag},
                {"alpha", params.alpha},
                {"p", params.p},
                {"zones", zones},
                {"nu", num_array(res.nu)},
                {"disc", {{"L", res.disc.L_lo}, {"N", res.disc.N}, {"scheme", res.disc.scheme},
                          {"too_coarse", res.disc.too_coarse}}}};
}

json report_to_json(const MorseReport& rep) {
    auto range = [](const IndexRange& r) -> json {
        if (r.is_interval()) return json::array({r.lo, r.hi});
        return r.lo;
    };
    json sym = json::object();
    for (const auto& [n, v] : rep.sym_morse) sym[std::to_string(n)] = range(v);
    json j{{"schema", kSchemaTag},
           {"alpha", rep.alpha},
           {"zones", rep.zones},
           {"asymptotic", rep.asymptotic},
           {"morse", range(rep.morse)},
           {"sym_morse", sym},
           {"resonant", rep.resonant},
           {"nearest_resonance", rep.nearest_resonance},
           {"ceiling_unstable", rep.ceiling_unstable},
           {"multiplicity_positive", rep.multiplicity_positive},
           {"multiplicity_nodal", rep.multiplicity_nodal}};
    if (!rep.asymptotic) {
        j["p"] = rep.p;
        j["nu_used"] = num_array(rep.nu_used);
    }
    return j;
}

CsvWriter::CsvWriter(std::vector<std::string> header) : header_(std::move(header)) {}

void CsvWriter::add_row(const std::vector<std::string>& cells) { rows_.push_back(cells); }

void CsvWriter::add_row_numeric(const std::vector<double>& cells) {
    std::vector<std::string> s;
    s.reserve(cells.size());
    for (double x : cells) s.push_back(std::isnan(x) ? "" : format_double(x));
    rows_.push_back(std::move(s));
}

std::string CsvWriter::str() const {
    std::ostringstream os;
    os << "# " << kSchemaTag << "\n";
    auto line = [&os](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) os << ',';
            os << cells[i];
        }
        os << '\n';
    };
    line(header_);
    for (const auto& r : rows_) line(r);
    return os.str();
}

}  // namespace henonlab
