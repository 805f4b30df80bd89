#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "locspline/class_spec.hpp"
#include "test_util.hpp"

using namespace locspline;

TEST_CASE("derived parameters match the closed forms") {
    auto dp = derive_params(FunctionClassSpec::make(ClassKind::PowerLog, 2, 1.0, 1, 1));
    CHECK(dp.s == 3);
    CHECK(dp.v == doctest::Approx(1.5).epsilon(1e-15));
    CHECK(dp.zeta == 0.0);
    CHECK(dp.mu == 1.0);

    dp = derive_params(FunctionClassSpec::make(ClassKind::FracLog, 1, 0.5, 1, 1));
    CHECK(dp.s == 2);
    CHECK(dp.zeta == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(dp.mu == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(dp.v == doctest::Approx(4.0 / 3.0).epsilon(1e-15));

    dp = derive_params(FunctionClassSpec::make(ClassKind::PowerLog, 1, 1.0, 1, 1));
    CHECK(dp.s == 2);
    CHECK(dp.v == doctest::Approx(2.0).epsilon(1e-15));

    // Base is the power class with gamma = r + 1
    dp = derive_params(FunctionClassSpec::make(ClassKind::Base, 2, 0.0, 1, 1));
    CHECK(dp.s == 5);
    CHECK(dp.v == doctest::Approx(5.0 / 2.0).epsilon(1e-15));
}

TEST_CASE("derive_params identity (s - gamma) v = s") {
    for (int r = 1; r <= 4; ++r)
        for (double g : {0.25, 0.5, 1.0, 1.5, 2.0, 2.75, 3.0}) {
            bool integer = g == std::floor(g);
            ClassKind kind = integer ? ClassKind::PowerLog : ClassKind::FracLog;
            auto spec = FunctionClassSpec::make(kind, r, g, 1, 2);
            auto dp = derive_params(spec);
            CHECK(std::fabs((dp.s - g) * dp.v - dp.s) <= 8 * 1e-16 * dp.s);
        }
}

TEST_CASE("invalid parameter combinations are rejected") {
    CHECK_THROWS_AS(FunctionClassSpec::make(ClassKind::PowerLog, 1, 0.5, 1, 1),
                    std::invalid_argument);
    CHECK_THROWS_AS(FunctionClassSpec::make(ClassKind::FracLog, 1, 2.0, 1, 1),
                    std::invalid_argument);
    CHECK_THROWS_AS(FunctionClassSpec::make(ClassKind::Power, 0, 1.0, 1, 1),
                    std::invalid_argument);
    CHECK_THROWS_AS(FunctionClassSpec::make(ClassKind::Power, 1, 1.0, 1, 4),
                    std::invalid_argument);
    CHECK_THROWS_AS(FunctionClassSpec::make(ClassKind::Power, 1, -1.0, 1, 1),
                    std::invalid_argument);
}

TEST_CASE("distance to the cube boundary") {
    double t2[2] = {0.0, 0.0};
    CHECK(distance_to_boundary(std::span<const double>(t2, 2)) == 1.0);
    double t1 = -1.0;
    CHECK(distance_to_boundary(std::span<const double>(&t1, 1)) == 0.0);
    double t3[2] = {0.5, -0.9};
    CHECK(distance_to_boundary(std::span<const double>(t3, 2)) == doctest::Approx(0.1));
    double bad = 1.5;
    CHECK_THROWS_AS(distance_to_boundary(std::span<const double>(&bad, 1)),
                    std::invalid_argument);
}

TEST_CASE("built-in family values at reference points") {
    // integer-gamma power family: (1-x^2)^{r+gamma} (1+x/3), no logs
    auto f = test_function(FunctionClassSpec::make(ClassKind::Power, 1, 1.0, 1, 1));
    double x = 0.0;
    CHECK(f.value(std::span<const double>(&x, 1)) == doctest::Approx(1.0).epsilon(1e-15));

    // log family vanishes at the boundary by continuous extension
    auto g = test_function(FunctionClassSpec::make(ClassKind::PowerLog, 2, 1.0, 1, 1));
    for (double b : {-1.0, 1.0})
        CHECK(g.value(std::span<const double>(&b, 1)) == 0.0);
}

TEST_CASE("log family second derivative grows like |ln d| near the boundary") {
    auto spec = FunctionClassSpec::make(ClassKind::PowerLog, 2, 1.0, 1, 1);
    auto f = test_function(spec);
    int v2[1] = {2};
    double prev = 0.0;
    for (int j = 4; j <= 20; j += 4) {
        double x = 1.0 - std::ldexp(1.0, -j);
        double d2 = std::fabs(f.derivative(std::span<const double>(&x, 1),
                                           std::span<const int>(v2, 1)));
        CHECK(d2 > prev);  // unbounded growth
        prev = d2;
        double lnd = std::fabs(std::log(std::ldexp(1.0, -j)));
        CHECK(d2 / lnd > 1.0);   // ln term present
        CHECK(d2 / lnd < 100.0); // and it is only logarithmic
    }
}

TEST_CASE("exact derivatives agree with finite differences away from the boundary") {
    std::vector<FunctionClassSpec> specs = {
        FunctionClassSpec::make(ClassKind::Power, 1, 1.0, 1, 1),
        FunctionClassSpec::make(ClassKind::Power, 2, 1.5, 1, 1),
        FunctionClassSpec::make(ClassKind::PowerLog, 2, 1.0, 1, 1),
        FunctionClassSpec::make(ClassKind::PowerLog, 1, 2.0, 2, 1),
        FunctionClassSpec::make(ClassKind::FracLog, 1, 0.5, 1, 1),
        FunctionClassSpec::make(ClassKind::PowerLog, 1, 1.0, 1, 2),
        FunctionClassSpec::make(ClassKind::FracLog, 1, 0.5, 1, 2),
    };
    for (const auto& spec : specs) {
        auto f = test_function(spec);
        auto dp = derive_params(spec);
        int cap = std::min(dp.s, 3);
        auto grid = membership_probe_grid(spec.l);
        auto indices = multi_indices_up_to(spec.l, cap);

        // per-order scale so zero-crossing points are judged fairly
        std::vector<double> scale(cap + 1, 0.0);
        for (const auto& t : grid) {
            if (distance_to_boundary(t) < 0.1) continue;
            for (const auto& v : indices) {
                int total = 0;
                for (int k : v) total += k;
                bool ok = true;
                for (int k : v) ok = ok && k <= 3;
                if (!ok) continue;
                double ex = std::fabs(f.derivative(t, v));
                scale[total] = std::fmax(scale[total], ex);
            }
        }
        int checked = 0;
        for (const auto& t : grid) {
            if (distance_to_boundary(t) < 0.1) continue;
            for (const auto& v : indices) {
                int total = 0;
                bool ok = true;
                for (int k : v) {
                    total += k;
                    ok = ok && k <= 3;
                }
                if (!ok || total == 0) continue;
                double ex = f.derivative(t, v);
                double fd = testutil::fd_derivative(f, t, v, 0.01);
                CHECK(std::fabs(ex - fd) <=
                      1e-4 * std::fmax(std::fabs(ex), 1e-3 * scale[total]));
                ++checked;
            }
        }
        CHECK(checked > 0);
    }
}

TEST_CASE("membership: linear probe function has eps* = 1 and scales linearly") {
    auto spec = FunctionClassSpec::make(ClassKind::Power, 1, 1.0, 1, 1);
    auto f = coordinate_product_function(1, derive_params(spec).s);
    auto grid = membership_probe_grid(1);
    auto rep = check_membership(f, spec, grid);
    CHECK(rep.epsilon_star == doctest::Approx(1.0).epsilon(1e-12));

    auto rep2 = check_membership(f.rescaled(2.0), spec, grid);
    CHECK(rep2.epsilon_star == doctest::Approx(2.0).epsilon(1e-12));

    // c-homogeneity to 1e-12 relative for awkward scales too
    auto rep3 = check_membership(f.rescaled(0.37), spec, grid);
    CHECK(rep3.epsilon_star == doctest::Approx(0.37 * rep.epsilon_star).epsilon(1e-12));
}

TEST_CASE("membership: default log family has a finite, reproducible eps*") {
    auto spec = FunctionClassSpec::make(ClassKind::PowerLog, 2, 1.0, 1, 1);
    auto f = test_function(spec);
    auto grid = membership_probe_grid(1);
    auto a = check_membership(f, spec, grid);
    auto b = check_membership(f, spec, grid);
    CHECK(a.epsilon_star > 0.0);
    CHECK(std::isfinite(a.epsilon_star));
    CHECK(a.epsilon_star == b.epsilon_star);  // deterministic
    // every order contributes a finite worst ratio
    for (const auto& [order, ratio] : a.worst_ratio_by_order) {
        CHECK(std::isfinite(ratio));
        CHECK(order <= 3);
    }
}

TEST_CASE("membership rejects probe points on the boundary") {
    auto spec = FunctionClassSpec::make(ClassKind::Power, 1, 1.0, 1, 1);
    auto f = coordinate_product_function(1, derive_params(spec).s);
    std::vector<std::vector<double>> grid = {{1.0}};
    CHECK_THROWS_AS(check_membership(f, spec, grid), std::invalid_argument);
}

TEST_CASE("saturation quantity does not increase away from the boundary") {
    // for orders in (r, s], the max of |D^v f| d^{|v|-r-zeta} / (1+|ln d|^u)
    // over a grid restricted away from the boundary cannot exceed the
    // full-grid max
    for (auto spec : {FunctionClassSpec::make(ClassKind::PowerLog, 2, 1.0, 1, 1),
                      FunctionClassSpec::make(ClassKind::FracLog, 1, 0.5, 1, 1)}) {
        auto dp = derive_params(spec);
        auto f = test_function(spec);
        auto grid = membership_probe_grid(1);
        for (int order = spec.r + 1; order <= dp.s; ++order) {
            auto quantity = [&](double dmin) {
                double worst = 0.0;
                int v[1] = {order};
                for (const auto& t : grid) {
                    double d = distance_to_boundary(t);
                    if (d < dmin) continue;
                    double q = std::fabs(f.derivative(t, std::span<const int>(v, 1))) *
                               std::pow(d, order - spec.r - dp.zeta) /
                               (1.0 + std::pow(std::fabs(std::log(d)), spec.u));
                    worst = std::fmax(worst, q);
                }
                return worst;
            };
            double full = quantity(0.0);
            CHECK(std::isfinite(full));
            CHECK(quantity(0.01) <= full + 1e-15);
            CHECK(quantity(0.2) <= full + 1e-15);
        }
    }
}

TEST_CASE("incompatible family names are rejected") {
    auto spec = FunctionClassSpec::make(ClassKind::PowerLog, 1, 1.0, 1, 1);
    CHECK_THROWS_AS(test_function(spec, "power"), std::invalid_argument);
    CHECK_NOTHROW(test_function(spec, "power-log"));
}
