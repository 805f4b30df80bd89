#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "locspline/spline_ld.hpp"
#include "test_util.hpp"

using namespace locspline;

namespace {

std::vector<int> unit_schedule(int N) { return std::vector<int>(N, 1); }

Cell square(double lo, double hi) {
    Cell c;
    c.dim = 2;
    c.lo = {lo, lo, 0.0};
    c.hi = {hi, hi, 0.0};
    return c;
}

FieldFn product_poly(const std::vector<double>& cx, const std::vector<double>& cy) {
    return [cx, cy](std::span<const double> t) {
        return testutil::eval_poly(cx, t[0]) * testutil::eval_poly(cy, t[1]);
    };
}

}  // namespace

TEST_CASE("tensor interpolation reproduces per-variable low degrees") {
    Cell box = square(-1.0, 1.0);
    FieldFn bilinear = [](std::span<const double> t) { return t[0] * t[1]; };
    auto p = tensor_interpolate(bilinear, box, 2);
    FieldFn constant = [](std::span<const double>) { return 4.25; };
    auto pc = tensor_interpolate(constant, box, 3);
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (int rep = 0; rep < 200; ++rep) {
        double t[2] = {dist(rng), dist(rng)};
        std::span<const double> ts(t, 2);
        CHECK(std::fabs(p(ts) - t[0] * t[1]) <= 1e-13);
        CHECK(std::fabs(pc(ts) - 4.25) <= 1e-13);
    }

    for (int s : {2, 3, 4}) {
        auto f = product_poly(testutil::random_poly(rng, s - 1), testutil::random_poly(rng, s - 1));
        auto q = tensor_interpolate(f, box, s);
        for (int rep = 0; rep < 200; ++rep) {
            double t[2] = {dist(rng), dist(rng)};
            std::span<const double> ts(t, 2);
            CHECK(std::fabs(q(ts) - f(ts)) <= 1e-10);
        }
    }
}

TEST_CASE("tensor remainder of a pure power matches the 1D closed form") {
    Cell box = square(-1.0, 1.0);
    // anchored nodes {-1,0,1}: the interpolant of t^3 is t, the remainder
    // max |t^3 - t| = 2/(3 sqrt 3), constant in the other variable
    FieldFn cube = [](std::span<const double> t) { return t[0] * t[0] * t[0]; };
    auto p = tensor_interpolate(cube, box, 3);
    double worst = 0.0;
    for (int i = 0; i <= 400; ++i) {
        double x = -1.0 + 2.0 * i / 400;
        double t[2] = {x, 0.33};
        worst = std::fmax(worst, std::fabs(cube(t) - p(std::span<const double>(t, 2))));
        double xc = 1.0 / std::sqrt(3.0);
        double tc[2] = {xc, -0.7};
        worst = std::fmax(worst, std::fabs(cube(tc) - p(std::span<const double>(tc, 2))));
    }
    CHECK(worst == doctest::Approx(2.0 / (3.0 * std::sqrt(3.0))).epsilon(1e-12));

    // s = 2: nodes {-1,1}, interpolant of t^2 is the constant 1, remainder 1 at 0
    FieldFn sq = [](std::span<const double> t) { return t[0] * t[0]; };
    auto p2 = tensor_interpolate(sq, box, 2);
    double t0[2] = {0.0, 0.5};
    CHECK(std::fabs(sq(t0) - p2(std::span<const double>(t0, 2))) ==
          doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("tensor interpolation rejects non-finite node values") {
    Cell box = square(0.0, 1.0);
    FieldFn bad = [](std::span<const double> t) { return 1.0 / (t[0] + t[1]); };
    CHECK_THROWS_AS(tensor_interpolate(bad, box, 3), std::invalid_argument);
}

TEST_CASE("both spline variants reproduce tensor polynomials globally") {
    std::mt19937 rng(11);
    auto f = product_poly(testutil::random_poly(rng, 2), testutil::random_poly(rng, 2));
    for (auto variant : {PartitionVariant::Independent, PartitionVariant::Aligned}) {
        PartitionLD part = decompose_domain(4, 2.0, 2, unit_schedule(4), variant);
        bool continuous = variant == PartitionVariant::Aligned;
        SplineLD sp = build_spline_ld(f, part, 3, continuous);
        CHECK(sup_error_ld(sp, f, 9) <= 1e-10);
        if (continuous) CHECK(max_face_jump(sp) <= 1e-11);
    }
}

TEST_CASE("continuous glued build: face jumps at rounding level") {
    auto spec = FunctionClassSpec::make(ClassKind::PowerLog, 1, 1.0, 1, 2);
    auto f0 = test_function(spec);
    FieldFn f = [f0](std::span<const double> t) { return f0.value(t); };
    PartitionLD part = decompose_domain(4, 2.0, 2, unit_schedule(4), PartitionVariant::Aligned);
    SplineLD sp = build_spline_ld(f, part, 2, true);
    double fmax = sup_abs_ld(sp, f, 5);
    CHECK(max_face_jump(sp) <= 1e-9 * (1.0 + fmax));

    // the same data without gluing jumps, but no more than twice the sup error
    SplineLD spd = build_spline_ld(f, part, 2, false);
    double jump = max_face_jump(spd);
    double err = sup_error_ld(spd, f, 9);
    CHECK(jump > 1e-9);
    CHECK(jump <= 2.0 * err + 1e-10);
}

TEST_CASE("continuous build on an independent partition is rejected") {
    FieldFn f = [](std::span<const double> t) { return t[0] + t[1]; };
    PartitionLD part = decompose_domain(4, 2.0, 2, unit_schedule(4), PartitionVariant::Independent);
    CHECK_THROWS_AS(build_spline_ld(f, part, 2, true), std::invalid_argument);
}

TEST_CASE("evaluation: cells, shared faces, corners") {
    auto spec = FunctionClassSpec::make(ClassKind::PowerLog, 1, 1.0, 1, 2);
    auto f0 = test_function(spec);
    FieldFn f = [f0](std::span<const double> t) { return f0.value(t); };
    PartitionLD part = decompose_domain(4, 2.0, 2, unit_schedule(4), PartitionVariant::Aligned);
    SplineLD sp = build_spline_ld(f, part, 2, true);

    // a strictly interior point evaluates through its own cell
    double t[2] = {0.123, -0.456};
    size_t c = locate_cell(part, std::span<const double>(t, 2));
    CHECK(sp(std::span<const double>(t, 2)) ==
          sp.pieces()[c](std::span<const double>(t, 2)));

    // on a shared face both adjacent polynomials agree
    const Cell& cell = part.cells[c];
    double face[2] = {cell.hi[0], 0.5 * (cell.lo[1] + cell.hi[1])};
    std::vector<size_t> owners;
    locate_cells_containing(part, std::span<const double>(face, 2), owners);
    REQUIRE(owners.size() >= 2);
    double v0 = sp.pieces()[owners[0]](std::span<const double>(face, 2));
    double v1 = sp.pieces()[owners[1]](std::span<const double>(face, 2));
    CHECK(std::fabs(v0 - v1) <= 1e-9);

    // the cube corner is an interpolation node
    double corner[2] = {-1.0, -1.0};
    CHECK(sp(std::span<const double>(corner, 2)) ==
          doctest::Approx(f(std::span<const double>(corner, 2))).epsilon(1e-14));

    double outside[2] = {0.0, 1.01};
    CHECK_THROWS_AS(sp(std::span<const double>(outside, 2)), std::invalid_argument);
}

TEST_CASE("node inventory counts distinct points once") {
    FieldFn f = [](std::span<const double> t) { return std::exp(t[0]) * std::cos(t[1]); };
    PartitionLD part = decompose_domain(2, 2.0, 2, unit_schedule(2), PartitionVariant::Aligned);
    SplineLD sp = build_spline_ld(f, part, 3, true);
    size_t naive = part.cells.size() * 9;
    CHECK(sp.node_count() < naive);  // shared face nodes deduplicated
    CHECK(sp.node_count() > part.cells.size());

    // the s+1 switch shows up in the inventory
    SplineLD sp4 = build_spline_ld(f, part, 4, true);
    CHECK(sp4.node_count() > sp.node_count());
}

TEST_CASE("subcritical rate: slope near s/l") {
    auto spec = FunctionClassSpec::make(ClassKind::PowerLog, 3, 1.0, 1, 2);  // s=4, v=4/3
    auto dp = derive_params(spec);
    auto raw = test_function(spec);
    auto mem = check_membership(raw, spec, membership_probe_grid(2));
    auto scaled = raw.rescaled(1.0 / mem.epsilon_star);
    FieldFn f = [scaled](std::span<const double> t) { return scaled.value(t); };

    std::vector<std::pair<double, double>> pts;
    for (int N : {4, 8, 16, 32}) {
        auto M = schedule_ld(spec, dp, N, ScheduleLD::GradedLog);
        PartitionLD part = decompose_domain(N, dp.v, 2, M, PartitionVariant::Aligned);
        SplineLD sp = build_spline_ld(f, part, dp.s, true);
        pts.emplace_back(static_cast<double>(sp.node_count()), sup_error_ld(sp, f, 9));
    }
    // least squares on (ln n, -ln err), smallest N dropped
    pts.erase(pts.begin());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (auto [n, e] : pts) {
        double x = std::log(n), y = -std::log(e);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    double m = static_cast<double>(pts.size());
    double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    CHECK(slope >= dp.s / 2.0 - 0.3);
    CHECK(slope <= dp.s / 2.0 + 0.5);
}
