// Command-line harness: convergence sweeps, width lower-bound runs,
// membership checks and partition dumps.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "locspline/bench.hpp"
#include "locspline/mesh_ld.hpp"
#include "locspline/spline_ld.hpp"

namespace {

using namespace locspline;

struct CliOptions {
    RunConfig cfg;
    std::string config_path;
};

void add_common_flags(CLI::App* cmd, CliOptions& opt) {
    cmd->add_option("--config", opt.config_path, "JSON config file (flags override it)");
    cmd->add_option("--class", opt.cfg.kind, "class kind: base|power|power-log|frac-log");
    cmd->add_option("--r", opt.cfg.r, "bounded-derivative order r");
    cmd->add_option("--gamma", opt.cfg.gamma, "blow-up budget gamma");
    cmd->add_option("--u", opt.cfg.u, "log power u");
    cmd->add_option("--l", opt.cfg.l, "dimension (1..3)");
    cmd->add_option("--variant", opt.cfg.variant, "construction variant / widths family");
    cmd->add_option("--n-grid", opt.cfg.n_grid, "N values, e.g. 8,16,32")->delimiter(',');
    cmd->add_option("--samples", opt.cfg.samples, "sup-error samples per interval/axis");
    cmd->add_option("--family", opt.cfg.family, "test-function family");
    cmd->add_flag("--continuous,!--discontinuous", opt.cfg.continuous,
                  "aligned continuous build (l >= 2)");
    cmd->add_option("--format", opt.cfg.format, "report format: csv|json");
    cmd->add_option("--out", opt.cfg.out, "output path (default: stdout)");
    cmd->add_option("--jobs", opt.cfg.jobs, "parallel sweep entries");
    cmd->add_flag("--timing,!--no-timing", opt.cfg.timing, "record wall time per row");
}

/// CLI flags override config-file values: re-parse after loading the file.
RunConfig resolve_config(CLI::App* cmd, CliOptions& opt, int argc, char** argv) {
    if (opt.config_path.empty()) return opt.cfg;
    RunConfig from_file = load_config_json(opt.config_path);
    CliOptions second;
    second.cfg = from_file;
    CLI::App reparse{"reparse"};
    reparse.allow_extras();
    CLI::App* sub = reparse.add_subcommand(cmd->get_name());
    sub->allow_extras();
    add_common_flags(sub, second);
    std::vector<std::string> args(argv + 1, argv + argc);
    std::reverse(args.begin(), args.end());
    reparse.parse(args);
    return second.cfg;
}

std::ostream& open_out(const std::string& path, std::ofstream& file) {
    if (path.empty()) return std::cout;
    file.open(path);
    if (!file) throw std::runtime_error("cannot open output file: " + path);
    return file;
}

int cmd_converge(const RunConfig& cfg) {
    ConvergenceReport rep = run_convergence(cfg);
    std::ofstream file;
    std::ostream& os = open_out(cfg.out, file);
    if (cfg.format == "json") emit_report_json(rep, os);
    else emit_report_csv(rep, os);

    std::cerr << rep.config_summary << "\n";
    for (const ReportRow& r : rep.rows)
        std::cerr << "  N=" << r.N << "  n=" << r.n_nodes << "  err=" << r.sup_error
                  << "  t=" << r.runtime_ms << "ms\n";
    if (rep.metric == "slope")
        std::cerr << "  slope=" << rep.slope << "  band=[" << rep.band_lo << "," << rep.band_hi
                  << "]";
    else
        std::cerr << "  ratio max/min=" << rep.ratio_max_min << " (exp " << rep.predicted_exponent
                  << ", ln^" << rep.ln_power << ")  band max/min<=" << rep.band_hi;
    std::cerr << (rep.passed ? "  PASS" : "  FAIL") << "\n";
    return rep.passed ? 0 : 1;
}

int cmd_widths(const RunConfig& cfg) {
    WidthsReport rep = run_widths(cfg);
    std::ofstream file;
    std::ostream& os = open_out(cfg.out, file);
    if (cfg.format == "json") emit_widths_json(rep, os);
    else emit_widths_csv(rep, os);

    std::cerr << rep.config_summary << "\n";
    for (const WidthsRow& r : rep.rows)
        std::cerr << "  N=" << r.N << "  bumps=" << r.n_bumps << "  eps_N=" << r.eps_N
                  << "  compliance=" << r.max_compliance << "\n";
    std::cerr << "  eps_N slope=" << rep.slope << " (target " << rep.predicted_exponent
              << " +-0.3), signs " << (rep.sign_check_ok ? "ok" : "BAD")
              << (rep.passed ? "  PASS" : "  FAIL") << "\n";
    return rep.passed ? 0 : 1;
}

int cmd_check_membership(const RunConfig& cfg) {
    FunctionClassSpec spec = cfg.to_spec();
    SingularFunction f = test_function(spec, cfg.family);
    MembershipReport rep = check_membership(f, spec, membership_probe_grid(spec.l));
    std::ofstream file;
    std::ostream& os = open_out(cfg.out, file);
    os << "class " << to_string(spec.kind) << " r=" << spec.r << " gamma=" << spec.gamma
       << " u=" << spec.u << " l=" << spec.l << "\n";
    os << "probe grid: " << rep.grid_description << " (" << rep.probe_count << " points)\n";
    os << "eps* = " << rep.epsilon_star << "\n";
    for (const auto& [order, ratio] : rep.worst_ratio_by_order)
        os << "  order " << order << ": worst ratio " << ratio << "\n";
    for (int k : rep.vacuous_orders)
        os << "  note: order " << k << " has a non-positive bound exponent\n";
    return 0;
}

int cmd_dump_partition(const RunConfig& cfg, bool aligned) {
    FunctionClassSpec spec = cfg.to_spec();
    DerivedParams dp = derive_params(spec);
    std::ofstream file;
    std::ostream& os = open_out(cfg.out, file);
    ScheduleLD sched_kind = schedule_ld_from_string(cfg.variant);
    for (int N : cfg.n_grid) {
        std::vector<int> M = schedule_ld(spec, dp, N, sched_kind);
        PartitionLD part = decompose_domain(
            N, dp.v, spec.l, M, aligned ? PartitionVariant::Aligned : PartitionVariant::Independent);
        dump_partition(part, os);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"local-spline approximation of boundary-singular classes: benchmarks and checks"};
    app.require_subcommand(1);

    CliOptions conv_opt, widths_opt, mem_opt, dump_opt;
    bool dump_aligned = true;

    CLI::App* conv = app.add_subcommand("converge", "run a convergence sweep and fit the rate");
    add_common_flags(conv, conv_opt);
    CLI::App* wid = app.add_subcommand("widths", "build width lower-bound bump families");
    add_common_flags(wid, widths_opt);
    CLI::App* mem = app.add_subcommand("check-membership",
                                       "normalization constant eps* for a family member");
    add_common_flags(mem, mem_opt);
    CLI::App* dump = app.add_subcommand("dump-partition", "dump the cell partition as text");
    add_common_flags(dump, dump_opt);
    dump->add_flag("--aligned,!--independent", dump_aligned, "partition variant");

    CLI11_PARSE(app, argc, argv);

    try {
        if (conv->parsed()) return cmd_converge(resolve_config(conv, conv_opt, argc, argv));
        if (wid->parsed()) return cmd_widths(resolve_config(wid, widths_opt, argc, argv));
        if (mem->parsed()) return cmd_check_membership(resolve_config(mem, mem_opt, argc, argv));
        if (dump->parsed())
            return cmd_dump_partition(resolve_config(dump, dump_opt, argc, argv), dump_aligned);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
