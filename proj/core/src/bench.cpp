#include "locspline/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "locspline/mesh1d.hpp"
#include "locspline/spline1d.hpp"
#include "locspline/spline_ld.hpp"

namespace locspline {

namespace {

std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

double elapsed_ms(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
}

bool is_widths_variant(const std::string& v) {
    return v == "crit" || v == "crit-frac" || v == "steep" || v == "steep-frac";
}

template <typename Fn>
void parallel_rows(int jobs, int count, Fn&& fn) {
    jobs = std::max(1, std::min(jobs, count));
    if (jobs == 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    std::atomic<int> next{0};
    for (int t = 0; t < jobs; ++t)
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
        });
    for (auto& th : pool) th.join();
}

}  // namespace

FunctionClassSpec RunConfig::to_spec() const {
    return FunctionClassSpec::make(class_kind_from_string(kind), r, gamma, u, l);
}

SlopeFit fit_slope(const std::vector<std::pair<double, double>>& n_error) {
    if (n_error.size() < 2) throw std::invalid_argument("fit_slope: need at least 2 points");
    for (const auto& [n, e] : n_error)
        if (!(e > 0.0))
            throw std::invalid_argument(
                "fit_slope: non-positive error, rate unmeasurable (exact reproduction?)");
    std::vector<std::pair<double, double>> pts(n_error.begin(), n_error.end());
    std::sort(pts.begin(), pts.end());
    if (pts.size() >= 3) pts.erase(pts.begin());  // drop the smallest n

    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& [n, e] : pts) {
        double x = std::log(n), y = -std::log(e);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    double m = static_cast<double>(pts.size());
    SlopeFit fit;
    fit.slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    fit.intercept = (sy - fit.slope * sx) / m;
    for (const auto& [n, e] : pts) {
        double d = -std::log(e) - (fit.slope * std::log(n) + fit.intercept);
        fit.residual += d * d;
    }
    fit.residual = std::sqrt(fit.residual / m);
    return fit;
}

ConvergenceReport run_convergence(const RunConfig& config) {
    if (config.n_grid.size() < 2)
        throw std::invalid_argument("run_convergence: n_grid needs at least 2 entries");
    for (size_t i = 0; i + 1 < config.n_grid.size(); ++i)
        if (config.n_grid[i] >= config.n_grid[i + 1])
            throw std::invalid_argument("run_convergence: n_grid must increase strictly");
    if (is_widths_variant(config.variant))
        throw std::invalid_argument("run_convergence: use run_widths for widths variants");

    FunctionClassSpec spec = config.to_spec();
    DerivedParams dp = derive_params(spec);
    SingularFunction raw = test_function(spec, config.family);
    MembershipReport mem = check_membership(raw, spec, membership_probe_grid(spec.l));
    SingularFunction f = raw.rescaled(1.0 / mem.epsilon_star);

    ConvergenceReport rep;
    {
        std::ostringstream cs;
        cs << to_string(spec.kind) << " r=" << spec.r << " gamma=" << spec.gamma
           << " u=" << spec.u << " l=" << spec.l << " variant=" << config.variant;
        rep.config_summary = cs.str();
    }
    rep.rows.resize(config.n_grid.size());

    auto run_row = [&](int i) {
        int N = config.n_grid[i];
        auto t0 = std::chrono::steady_clock::now();
        ReportRow row;
        row.N = N;
        try {
            if (spec.l == 1) {
                Mesh1DVariant var = mesh1d_variant_from_string(config.variant);
                int q = config.samples > 0 ? config.samples : 33;
                Mesh1D mesh = build_mesh1d(spec, N, var);
                auto f1 = [&](double x) {
                    return f.value(std::span<const double>(&x, 1));
                };
                Spline1D sp = build_spline1d(f1, mesh, dp.s);
                row.n_nodes = sp.node_count();
                row.sup_error = sup_error(sp, f1, q);
            } else {
                ScheduleLD sched_kind = schedule_ld_from_string(config.variant);
                int q = config.samples > 0 ? config.samples : 9;
                std::vector<int> M = schedule_ld(spec, dp, N, sched_kind);
                PartitionVariant pv = config.continuous ? PartitionVariant::Aligned
                                                        : PartitionVariant::Independent;
                PartitionLD part = decompose_domain(N, dp.v, spec.l, M, pv);
                auto fl = [&](std::span<const double> t) { return f.value(t); };
                int nodes = dp.s;
                if (spec.kind == ClassKind::FracLog && dp.s == spec.r + 1) nodes = dp.s + 1;
                SplineLD sp = build_spline_ld(fl, part, nodes, config.continuous);
                row.n_nodes = sp.node_count();
                row.sup_error = sup_error_ld(sp, fl, q);
            }
        } catch (const std::exception& e) {
            std::ostringstream msg;
            msg << "run_convergence failed at N=" << N << ": " << e.what();
            throw std::runtime_error(msg.str());
        }
        row.runtime_ms = config.timing ? elapsed_ms(t0) : 0.0;
        rep.rows[i] = row;
    };
    parallel_rows(config.jobs, static_cast<int>(config.n_grid.size()), run_row);

    std::vector<std::pair<double, double>> pts;
    for (const ReportRow& row : rep.rows)
        pts.emplace_back(static_cast<double>(row.n_nodes), row.sup_error);
    SlopeFit fit = fit_slope(pts);
    rep.slope = fit.slope;
    rep.intercept = fit.intercept;
    rep.residual = fit.residual;

    double vcrit = spec.l > 1 ? static_cast<double>(spec.l) / (spec.l - 1) : 2.0;
    if (spec.l == 1) {
        rep.metric = "slope";
        rep.predicted_exponent = dp.s;
    } else if (dp.v < vcrit * (1.0 - 1e-9)) {
        rep.metric = "slope";
        rep.predicted_exponent = static_cast<double>(dp.s) / spec.l;
    } else if (dp.v > vcrit * (1.0 + 1e-9)) {
        rep.metric = "log-ratio";
        rep.predicted_exponent = (dp.s - spec.gamma) / (spec.l - 1);
        rep.ln_power = spec.u;
    } else {
        rep.metric = "log-ratio";
        rep.predicted_exponent = static_cast<double>(dp.s) / spec.l;
        rep.ln_power = spec.u - 1;  // plus s/l inside the band; ratio test only
    }

    if (rep.metric == "slope") {
        rep.band_lo = rep.predicted_exponent - 0.3;
        rep.band_hi = rep.predicted_exponent + 0.5;
        rep.passed = rep.slope >= rep.band_lo && rep.slope <= rep.band_hi;
    } else {
        double rmin = 1e300, rmax = 0.0;
        for (const ReportRow& row : rep.rows) {
            double n = static_cast<double>(row.n_nodes);
            double ratio = row.sup_error * std::pow(n, rep.predicted_exponent) /
                           std::pow(std::log(n), rep.ln_power);
            rmin = std::fmin(rmin, ratio);
            rmax = std::fmax(rmax, ratio);
        }
        rep.ratio_max_min = rmax / rmin;
        rep.band_lo = 0.0;
        rep.band_hi = 3.0;
        rep.passed = rep.ratio_max_min <= 3.0;
    }
    return rep;
}

void emit_report_csv(const ConvergenceReport& rep, std::ostream& os) {
    os << "N,n_nodes,sup_error,runtime_ms\n";
    for (const ReportRow& r : rep.rows)
        os << r.N << ',' << r.n_nodes << ',' << fmt17(r.sup_error) << ',' << fmt17(r.runtime_ms)
           << '\n';
}

std::string report_csv_string(const ConvergenceReport& rep) {
    std::ostringstream os;
    emit_report_csv(rep, os);
    return os.str();
}

void emit_report_json(const ConvergenceReport& rep, std::ostream& os) {
    nlohmann::ordered_json j;
    j["config"] = rep.config_summary;
    j["rows"] = nlohmann::ordered_json::array();
    for (const ReportRow& r : rep.rows)
        j["rows"].push_back({{"N", r.N},
                             {"n_nodes", r.n_nodes},
                             {"sup_error", r.sup_error},
                             {"runtime_ms", r.runtime_ms}});
    j["slope"] = rep.slope;
    j["intercept"] = rep.intercept;
    j["residual"] = rep.residual;
    j["predicted_exponent"] = rep.predicted_exponent;
    j["metric"] = rep.metric;
    j["band"] = {rep.band_lo, rep.band_hi};
    if (rep.metric == "log-ratio") {
        j["ratio_max_min"] = rep.ratio_max_min;
        j["ln_power"] = rep.ln_power;
    }
    j["passed"] = rep.passed;
    os << j.dump(2) << '\n';
}

WidthsReport run_widths(const RunConfig& config) {
    if (!is_widths_variant(config.variant))
        throw std::invalid_argument("run_widths: variant must be a widths family");
    if (config.l < 2) throw std::invalid_argument("run_widths: requires l >= 2");
    FunctionClassSpec spec = config.to_spec();
    DerivedParams dp = derive_params(spec);
    WidthsFamily family = widths_family_from_string(config.variant);

    WidthsReport rep;
    {
        std::ostringstream cs;
        cs << to_string(spec.kind) << " r=" << spec.r << " gamma=" << spec.gamma
           << " u=" << spec.u << " l=" << config.l << " family=" << config.variant;
        rep.config_summary = cs.str();
    }
    rep.rows.resize(config.n_grid.size());
    rep.predicted_exponent = dp.s;
    bool signs_ok = true;

    auto run_row = [&](int i) {
        int N = config.n_grid[i];
        auto t0 = std::chrono::steady_clock::now();
        LowerBoundEstimate est = lower_bound_estimate(spec, N, config.l, family);
        WidthsRow row;
        row.N = N;
        row.n_bumps = est.n;
        row.eps_N = est.eps_N;
        row.max_compliance = est.max_compliance;
        row.rho_m = est.rho_m;
        row.rho_max_residual = est.rho_max_residual;
        // alternating sign pattern across the whole family
        std::vector<double> coeffs(est.bumps.size());
        for (size_t b = 0; b < coeffs.size(); ++b) coeffs[b] = (b % 2 == 0) ? 1.0 : -1.0;
        SignPatternRecord sc = sign_pattern_check(est.bumps, coeffs);
        if (!sc.ok) signs_ok = false;
        row.runtime_ms = config.timing ? elapsed_ms(t0) : 0.0;
        rep.rows[i] = row;
    };
    parallel_rows(config.jobs, static_cast<int>(config.n_grid.size()), run_row);
    rep.sign_check_ok = signs_ok;

    std::vector<std::pair<double, double>> pts;
    for (const WidthsRow& row : rep.rows)
        pts.emplace_back(static_cast<double>(row.N), row.eps_N);
    SlopeFit fit = fit_slope(pts);
    rep.slope = fit.slope;

    double worst_comp = 0.0;
    for (const WidthsRow& row : rep.rows) worst_comp = std::fmax(worst_comp, row.max_compliance);
    rep.passed = signs_ok && worst_comp <= 1.000001 &&
                 std::fabs(rep.slope - rep.predicted_exponent) <= 0.3;
    return rep;
}

void emit_widths_csv(const WidthsReport& rep, std::ostream& os) {
    os << "N,n_bumps,eps_N,max_compliance,rho_m,rho_max_residual,runtime_ms\n";
    for (const WidthsRow& r : rep.rows)
        os << r.N << ',' << r.n_bumps << ',' << fmt17(r.eps_N) << ',' << fmt17(r.max_compliance)
           << ',' << r.rho_m << ',' << fmt17(r.rho_max_residual) << ',' << fmt17(r.runtime_ms)
           << '\n';
}

void emit_widths_json(const WidthsReport& rep, std::ostream& os) {
    nlohmann::ordered_json j;
    j["config"] = rep.config_summary;
    j["rows"] = nlohmann::ordered_json::array();
    for (const WidthsRow& r : rep.rows)
        j["rows"].push_back({{"N", r.N},
                             {"n_bumps", r.n_bumps},
                             {"eps_N", r.eps_N},
                             {"max_compliance", r.max_compliance},
                             {"rho_m", r.rho_m},
                             {"rho_max_residual", r.rho_max_residual},
                             {"runtime_ms", r.runtime_ms}});
    j["slope_epsN"] = rep.slope;
    j["predicted_exponent"] = rep.predicted_exponent;
    j["sign_check_ok"] = rep.sign_check_ok;
    j["passed"] = rep.passed;
    os << j.dump(2) << '\n';
}

RunConfig load_config_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    nlohmann::json j;
    in >> j;
    RunConfig c;
    c.kind = j.value("kind", c.kind);
    c.r = j.value("r", c.r);
    c.gamma = j.value("gamma", c.gamma);
    c.u = j.value("u", c.u);
    c.l = j.value("l", c.l);
    c.variant = j.value("variant", c.variant);
    if (j.contains("n_grid")) c.n_grid = j["n_grid"].get<std::vector<int>>();
    c.samples = j.value("samples", c.samples);
    c.family = j.value("family", c.family);
    c.continuous = j.value("continuous", c.continuous);
    c.format = j.value("format", c.format);
    c.out = j.value("out", c.out);
    c.jobs = j.value("jobs", c.jobs);
    c.timing = j.value("timing", c.timing);
    return c;
}

}  // namespace locspline
