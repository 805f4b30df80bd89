#include <benchmark/benchmark.h>

#include <cmath>

#include "locspline/bench.hpp"
#include "locspline/cheb1d.hpp"
#include "locspline/mesh1d.hpp"
#include "locspline/spline1d.hpp"
#include "locspline/spline_ld.hpp"
#include "locspline/widths_lb.hpp"

namespace {

using namespace locspline;

void BM_Interpolant1DFit(benchmark::State& state) {
    int s = static_cast<int>(state.range(0));
    auto f = [](double x) { return std::exp(x) * std::sin(3 * x); };
    for (auto _ : state) {
        auto p = Interpolant1D::fit(f, -1.0, 1.0, s);
        benchmark::DoNotOptimize(p);
    }
}
BENCHMARK(BM_Interpolant1DFit)->Arg(4)->Arg(8)->Arg(16);

void BM_Interpolant1DEval(benchmark::State& state) {
    int s = static_cast<int>(state.range(0));
    auto f = [](double x) { return std::exp(x) * std::sin(3 * x); };
    auto p = Interpolant1D::fit(f, -1.0, 1.0, s);
    double x = -1.0;
    for (auto _ : state) {
        x += 1e-4;
        if (x > 1.0) x = -1.0;
        benchmark::DoNotOptimize(p(x));
    }
}
BENCHMARK(BM_Interpolant1DEval)->Arg(4)->Arg(8);

void BM_MinimaxOracle(benchmark::State& state) {
    auto f = [](double x) { return std::exp(x); };
    for (auto _ : state) benchmark::DoNotOptimize(minimax_oracle(f, -1.0, 1.0, 4));
}
BENCHMARK(BM_MinimaxOracle);

void BM_Spline1DBuild(benchmark::State& state) {
    int N = static_cast<int>(state.range(0));
    auto spec = FunctionClassSpec::make(ClassKind::PowerLog, 2, 1.0, 1, 1);
    auto f0 = test_function(spec);
    auto f = [&](double x) { return f0.value(std::span<const double>(&x, 1)); };
    Mesh1D mesh = build_mesh1d(spec, N, Mesh1DVariant::EdgeLog);
    for (auto _ : state) {
        Spline1D sp = build_spline1d(f, mesh, 3);
        benchmark::DoNotOptimize(sp);
    }
}
BENCHMARK(BM_Spline1DBuild)->Arg(16)->Arg(64)->Arg(256);

void BM_DecomposeAligned(benchmark::State& state) {
    int N = static_cast<int>(state.range(0));
    std::vector<int> ones(N, 1);
    for (auto _ : state) {
        PartitionLD p = decompose_domain(N, 2.0, 2, ones, PartitionVariant::Aligned);
        benchmark::DoNotOptimize(p);
    }
}
BENCHMARK(BM_DecomposeAligned)->Arg(4)->Arg(8)->Arg(16);

void BM_SplineLDBuildContinuous(benchmark::State& state) {
    int N = static_cast<int>(state.range(0));
    auto spec = FunctionClassSpec::make(ClassKind::PowerLog, 1, 1.0, 1, 2);
    auto f0 = test_function(spec);
    FieldFn f = [&](std::span<const double> t) { return f0.value(t); };
    std::vector<int> ones(N, 1);
    PartitionLD part = decompose_domain(N, 2.0, 2, ones, PartitionVariant::Aligned);
    for (auto _ : state) {
        SplineLD sp = build_spline_ld(f, part, 2, true);
        benchmark::DoNotOptimize(sp);
    }
}
BENCHMARK(BM_SplineLDBuildContinuous)->Arg(4)->Arg(8)->Arg(16);

void BM_SplineLDEval(benchmark::State& state) {
    auto spec = FunctionClassSpec::make(ClassKind::PowerLog, 1, 1.0, 1, 2);
    auto f0 = test_function(spec);
    FieldFn f = [&](std::span<const double> t) { return f0.value(t); };
    std::vector<int> ones(8, 1);
    PartitionLD part = decompose_domain(8, 2.0, 2, ones, PartitionVariant::Aligned);
    SplineLD sp = build_spline_ld(f, part, 2, true);
    double x = -0.999;
    for (auto _ : state) {
        x += 1.7e-4;
        if (x > 0.999) x = -0.999;
        double t[2] = {x, 0.5 * x};
        benchmark::DoNotOptimize(sp(std::span<const double>(t, 2)));
    }
}
BENCHMARK(BM_SplineLDEval);

void BM_LowerBoundEstimate(benchmark::State& state) {
    int N = static_cast<int>(state.range(0));
    auto spec = FunctionClassSpec::make(ClassKind::PowerLog, 1, 1.0, 1, 2);
    for (auto _ : state) {
        auto est = lower_bound_estimate(spec, N, 2, WidthsFamily::CritInt);
        benchmark::DoNotOptimize(est);
    }
}
BENCHMARK(BM_LowerBoundEstimate)->Arg(4)->Arg(8);

void BM_MembershipCheck(benchmark::State& state) {
    auto spec = FunctionClassSpec::make(ClassKind::PowerLog, 2, 1.0, 1, 2);
    auto f = test_function(spec);
    auto grid = membership_probe_grid(2);
    for (auto _ : state) benchmark::DoNotOptimize(check_membership(f, spec, grid));
}
BENCHMARK(BM_MembershipCheck);

}  // namespace

BENCHMARK_MAIN();
