#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "locspline/mesh1d.hpp"

using namespace locspline;

namespace {
FunctionClassSpec powerlog(int r, double g, int u) {
    return FunctionClassSpec::make(ClassKind::PowerLog, r, g, u, 1);
}
}  // namespace

TEST_CASE("graded breakpoints") {
    auto left = graded_points(2, 2.0, Side::Left);
    REQUIRE(left.size() == 3);
    CHECK(left[0] == -1.0);
    CHECK(left[1] == doctest::Approx(-0.75).epsilon(1e-16));
    CHECK(left[2] == 0.0);

    auto right = graded_points(2, 2.0, Side::Right);
    CHECK(right[0] == 1.0);
    CHECK(right[1] == doctest::Approx(0.75).epsilon(1e-16));
    CHECK(right[2] == 0.0);

    auto l4 = graded_points(4, 1.5, Side::Left);
    CHECK(l4[1] == doctest::Approx(-0.875).epsilon(1e-15));

    CHECK_THROWS_AS(graded_points(1, 2.0, Side::Left), std::invalid_argument);
    CHECK_THROWS_AS(graded_points(4, 1.0, Side::Left), std::invalid_argument);
}

TEST_CASE("subdivision schedules") {
    auto spec = powerlog(2, 1.0, 1);
    auto dp = derive_params(spec);
    auto sch = subdivision_counts(spec, dp, 8, Mesh1DVariant::EdgeLog);
    CHECK(sch.M[0] == 3);  // ceil(ln 8)
    for (size_t k = 1; k < sch.M.size(); ++k) CHECK(sch.M[k] == 1);

    auto spec2 = powerlog(1, 2.0, 2);
    auto dp2 = derive_params(spec2);  // s = 3
    auto sch2 = subdivision_counts(spec2, dp2, 8, Mesh1DVariant::LayerLog);
    CHECK(sch2.M[0] == 5);  // ceil((ln 8)^2) = ceil(4.324)
    CHECK(sch2.M[4] == 1);  // ceil((ln 2)^{1/3}) = 1

    auto spec3 = FunctionClassSpec::make(ClassKind::FracLog, 1, 0.5, 1, 1);
    auto dp3 = derive_params(spec3);  // mu = 0.5
    auto sch3 = subdivision_counts(spec3, dp3, 8, Mesh1DVariant::LayerLogFrac);
    CHECK(sch3.M[0] == 2);  // ceil((ln 8)^{1/1.5})
    CHECK(sch3.M[1] == sch3.M[7]);  // constant over interior layers

    // u = 1 with layer-log degrades gracefully but is flagged
    auto sch4 = subdivision_counts(powerlog(1, 1.0, 1), derive_params(powerlog(1, 1.0, 1)), 8,
                                   Mesh1DVariant::LayerLog);
    CHECK(sch4.flagged);
    for (size_t k = 1; k < sch4.M.size(); ++k) CHECK(sch4.M[k] == 1);

    // wrong class pairing
    CHECK_THROWS_AS(
        subdivision_counts(spec3, dp3, 8, Mesh1DVariant::EdgeLog), std::invalid_argument);
}

TEST_CASE("mesh assembly tiles [-1,1] exactly") {
    auto spec = powerlog(2, 1.0, 1);
    Mesh1D mesh = build_mesh1d(spec, 2, Mesh1DVariant::EdgeLog);
    CHECK(mesh.intervals.size() == 4);  // ceil(ln 2) = 1, so 2 per side
    CHECK(mesh.breakpoints.front() == -1.0);
    CHECK(mesh.breakpoints.back() == 1.0);

    for (int N : {2, 4, 8, 16, 32, 128}) {
        Mesh1D m = build_mesh1d(spec, N, Mesh1DVariant::EdgeLog);
        double total = 0.0;
        for (size_t i = 0; i < m.intervals.size(); ++i) {
            const auto& iv = m.intervals[i];
            CHECK(iv.a < iv.b);
            if (i) CHECK(iv.a == m.intervals[i - 1].b);  // exact shared endpoints
            total += iv.b - iv.a;
        }
        CHECK(std::fabs(total - 2.0) <= 1e-14);
        CHECK(m.intervals.front().a == -1.0);
        CHECK(m.intervals.back().b == 1.0);
        // exact seam at 0 between the halves
        bool has_zero = false;
        for (double b : m.breakpoints) has_zero = has_zero || b == 0.0;
        CHECK(has_zero);
    }
}

TEST_CASE("interval count equals 2 sum M_k (enumeration oracle)") {
    auto spec = powerlog(1, 2.0, 2);  // s = 3
    auto dp = derive_params(spec);
    for (int N : {4, 8, 16}) {
        // independent recount of the schedule
        size_t expect = 0;
        {
            double lnN = std::log(static_cast<double>(N));
            expect += static_cast<size_t>(std::ceil(std::pow(lnN, 2.0) - 1e-12));
            for (int k = 1; k < N; ++k) {
                double x = std::pow(std::log(static_cast<double>(N) / k), 1.0 / 3.0);
                expect += static_cast<size_t>(std::max(1.0, std::ceil(x - 1e-12)));
            }
            expect *= 2;
        }
        Mesh1D mesh = build_mesh1d(spec, N, Mesh1DVariant::LayerLog);
        CHECK(mesh.intervals.size() == expect);
        if (N == 4) CHECK(mesh.intervals.size() == 12);  // 2(2+2+1+1)
    }
}

TEST_CASE("layer widths increase for v > 1") {
    for (double v : {1.5, 2.0, 3.0}) {
        auto pts = graded_points(16, v, Side::Left);
        for (size_t k = 0; k + 2 < pts.size(); ++k) {
            double h0 = pts[k + 1] - pts[k], h1 = pts[k + 2] - pts[k + 1];
            CHECK(h1 > h0);
        }
    }
}

TEST_CASE("layer-log interval totals stay proportional to N") {
    auto spec = powerlog(1, 2.0, 2);
    auto dp = derive_params(spec);
    double rmin = 1e300, rmax = 0.0;
    for (int N : {8, 16, 32, 64, 128}) {
        auto sch = subdivision_counts(spec, dp, N, Mesh1DVariant::LayerLog);
        long total = 0;
        for (int m : sch.M) total += m;
        double ratio = static_cast<double>(2 * total) / N;
        rmin = std::fmin(rmin, ratio);
        rmax = std::fmax(rmax, ratio);
    }
    CHECK(rmax / rmin <= 3.0);
}
