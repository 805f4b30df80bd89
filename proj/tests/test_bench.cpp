#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "locspline/bench.hpp"

using namespace locspline;

TEST_CASE("slope fitter recovers exact power laws") {
    std::vector<std::pair<double, double>> pts;
    for (double n : {10.0, 20.0, 40.0, 80.0}) pts.emplace_back(n, std::pow(n, -2.0));
    SlopeFit fit = fit_slope(pts);
    CHECK(std::fabs(fit.slope - 2.0) <= 1e-9);
    CHECK(fit.residual <= 1e-9);

    // the smallest-n point is excluded, so an outlier there does not bias the fit
    std::vector<std::pair<double, double>> with_outlier = {
        {10.0, 1.0}, {20.0, std::pow(20.0, -3.0)}, {40.0, std::pow(40.0, -3.0)},
        {80.0, std::pow(80.0, -3.0)}};
    CHECK(std::fabs(fit_slope(with_outlier).slope - 3.0) <= 1e-9);

    // two points: finite difference of logs
    std::vector<std::pair<double, double>> two = {{10.0, 1e-2}, {100.0, 1e-4}};
    CHECK(std::fabs(fit_slope(two).slope - 2.0) <= 1e-9);

    std::vector<std::pair<double, double>> bad = {{10.0, 0.0}, {20.0, 1e-3}};
    CHECK_THROWS_AS(fit_slope(bad), std::invalid_argument);
    std::vector<std::pair<double, double>> one = {{10.0, 1e-2}};
    CHECK_THROWS_AS(fit_slope(one), std::invalid_argument);
}

TEST_CASE("report emitters") {
    ConvergenceReport rep;
    std::ostringstream empty;
    emit_report_csv(rep, empty);
    CHECK(empty.str() == "N,n_nodes,sup_error,runtime_ms\n");

    rep.rows.push_back({8, 41, 7.3890560989306495e-05, 1.25});
    rep.slope = 3.01;
    rep.metric = "slope";
    std::ostringstream csv;
    emit_report_csv(rep, csv);
    size_t lines = 0;
    for (char ch : csv.str()) lines += (ch == '\n');
    CHECK(lines == rep.rows.size() + 1);

    // JSON round-trip preserves the row values exactly
    std::ostringstream js;
    emit_report_json(rep, js);
    auto j = nlohmann::json::parse(js.str());
    CHECK(j["rows"][0]["N"].get<int>() == 8);
    CHECK(j["rows"][0]["n_nodes"].get<size_t>() == 41);
    CHECK(j["rows"][0]["sup_error"].get<double>() == rep.rows[0].sup_error);
}

TEST_CASE("convergence run: deterministic byte-identical reports") {
    RunConfig cfg;
    cfg.kind = "power-log";
    cfg.r = 2;
    cfg.gamma = 1.0;
    cfg.u = 1;
    cfg.l = 1;
    cfg.variant = "edge-log";
    cfg.n_grid = {8, 16, 32};
    cfg.timing = false;

    ConvergenceReport a = run_convergence(cfg);
    ConvergenceReport b = run_convergence(cfg);
    CHECK(report_csv_string(a) == report_csv_string(b));
    CHECK(a.slope == b.slope);

    // parallel sweep gives the same bytes
    RunConfig par = cfg;
    par.jobs = 3;
    CHECK(report_csv_string(run_convergence(par)) == report_csv_string(a));
}

TEST_CASE("convergence run enforces config invariants") {
    RunConfig cfg;
    cfg.n_grid = {8};
    CHECK_THROWS_AS(run_convergence(cfg), std::invalid_argument);
    cfg.n_grid = {16, 8};
    CHECK_THROWS_AS(run_convergence(cfg), std::invalid_argument);
    cfg.n_grid = {8, 16};
    cfg.variant = "crit";
    CHECK_THROWS_AS(run_convergence(cfg), std::invalid_argument);
}

TEST_CASE("failures surface the offending N") {
    RunConfig cfg;
    cfg.kind = "power-log";
    cfg.variant = "layer-log-frac";  // wrong class for the variant
    cfg.n_grid = {8, 16};
    try {
        run_convergence(cfg);
        FAIL("expected an error");
    } catch (const std::runtime_error& e) {
        CHECK(std::string(e.what()).find("N=8") != std::string::npos);
    }
}

TEST_CASE("widths run over the critical family") {
    RunConfig cfg;
    cfg.kind = "power-log";
    cfg.r = 1;
    cfg.gamma = 1.0;
    cfg.u = 1;
    cfg.l = 2;
    cfg.variant = "crit";
    cfg.n_grid = {4, 8};
    cfg.timing = false;
    WidthsReport rep = run_widths(cfg);
    CHECK(rep.sign_check_ok);
    CHECK(rep.passed);
    CHECK(rep.rows[0].eps_N > rep.rows[1].eps_N);

    std::ostringstream js;
    emit_widths_json(rep, js);
    auto j = nlohmann::json::parse(js.str());
    CHECK(j["rows"].size() == 2);
}

TEST_CASE("config file loading") {
    const char* path = "test_bench_config_tmp.json";
    {
        std::ofstream out(path);
        out << R"({"kind":"frac-log","r":1,"gamma":0.5,"u":1,"l":1,
                   "variant":"layer-log-frac","n_grid":[8,16,32],
                   "samples":17,"timing":false})";
    }
    RunConfig cfg = load_config_json(path);
    CHECK(cfg.kind == "frac-log");
    CHECK(cfg.gamma == 0.5);
    CHECK(cfg.n_grid == std::vector<int>{8, 16, 32});
    CHECK(cfg.samples == 17);
    CHECK(!cfg.timing);
    std::remove(path);
    CHECK_THROWS_AS(load_config_json("does_not_exist.json"), std::runtime_error);
}
