#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "locspline/class_spec.hpp"
#include "locspline/widths_lb.hpp"

namespace locspline {

/// One convergence or widths sweep.  `variant` selects the construction:
/// 1D meshes ("edge-log", "layer-log", "layer-log-frac"), 2D/3D schedules
/// ("graded-log", "graded-log-frac", "unit") or widths families ("crit",
/// "crit-frac", "steep", "steep-frac").
struct RunConfig {
    std::string kind = "power-log";
    int r = 1;
    double gamma = 1.0;
    int u = 1;
    int l = 1;
    std::string variant = "edge-log";
    std::vector<int> n_grid = {8, 16, 32};
    int samples = 0;  ///< 0 = per-dimension default (33 in 1D, 9 per axis else)
    std::string family = "default";
    bool continuous = true;
    std::string format = "csv";
    std::string out;
    int jobs = 1;
    bool timing = true;  ///< false pins runtime_ms to 0 for byte-stable reports

    FunctionClassSpec to_spec() const;
};

struct ReportRow {
    int N = 0;
    size_t n_nodes = 0;
    double sup_error = 0.0;
    double runtime_ms = 0.0;
};

struct ConvergenceReport {
    std::vector<ReportRow> rows;  ///< sorted by N
    double slope = 0.0;
    double intercept = 0.0;
    double residual = 0.0;
    double predicted_exponent = 0.0;
    double band_lo = 0.0, band_hi = 0.0;
    std::string metric;  ///< "slope" or "log-ratio"
    double ratio_max_min = 0.0;
    int ln_power = 0;  ///< log factor in the log-ratio metric
    bool passed = false;
    std::string config_summary;
};

struct SlopeFit {
    double slope = 0.0;
    double intercept = 0.0;
    double residual = 0.0;
};

/// Least squares of -ln(error) against ln(n); with >= 3 points the smallest-n
/// point is excluded.  Throws std::invalid_argument on non-positive errors
/// ("rate unmeasurable": the construction reproduced the function exactly).
SlopeFit fit_slope(const std::vector<std::pair<double, double>>& n_error);

/// Deterministic sweep: per N, build the variant's mesh/partition + spline
/// for the normalized family member and measure the sampled sup error.
/// Distinct N entries run in parallel up to config.jobs.
ConvergenceReport run_convergence(const RunConfig& config);

void emit_report_csv(const ConvergenceReport& rep, std::ostream& os);
void emit_report_json(const ConvergenceReport& rep, std::ostream& os);
std::string report_csv_string(const ConvergenceReport& rep);

/// Widths sweep built on lower_bound_estimate.
struct WidthsRow {
    int N = 0;
    size_t n_bumps = 0;
    double eps_N = 0.0;
    double max_compliance = 0.0;
    int rho_m = 0;
    double rho_max_residual = 0.0;
    double runtime_ms = 0.0;
};

struct WidthsReport {
    std::vector<WidthsRow> rows;
    double slope = 0.0;  ///< -ln eps_N vs ln N
    double predicted_exponent = 0.0;
    bool sign_check_ok = false;
    bool passed = false;
    std::string config_summary;
};

WidthsReport run_widths(const RunConfig& config);
void emit_widths_json(const WidthsReport& rep, std::ostream& os);
void emit_widths_csv(const WidthsReport& rep, std::ostream& os);

/// Reads a RunConfig from a JSON file mirroring the struct fields.
RunConfig load_config_json(const std::string& path);

}  // namespace locspline
