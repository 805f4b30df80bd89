#include "locspline/widths_lb.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

#include "locspline/util.hpp"

namespace locspline {

namespace {

/// Power-basis coefficients of (y(1-y))^s = sum_i C(s,i)(-1)^i y^{s+i}.
std::vector<double> profile_coeffs(int s) {
    std::vector<double> c(2 * s + 1, 0.0);
    double binom = 1.0;
    for (int i = 0; i <= s; ++i) {
        c[s + i] = (i % 2 ? -binom : binom);
        binom = binom * (s - i) / (i + 1);
    }
    return c;
}

std::map<std::pair<int, int>, double>& profile_cache() {
    static std::map<std::pair<int, int>, double> cache;
    return cache;
}
std::mutex cache_mutex;

/// Multi-indices of dimension l with |v| = s exactly.
std::vector<std::array<int, 3>> indices_of_order(int l, int s) {
    std::vector<std::array<int, 3>> out;
    for (int a = 0; a <= s; ++a) {
        if (l == 1) {
            if (a == s) out.push_back({a, 0, 0});
            continue;
        }
        for (int b = 0; a + b <= s; ++b) {
            if (l == 2) {
                if (a + b == s) out.push_back({a, b, 0});
                continue;
            }
            int c = s - a - b;
            if (c >= 0) out.push_back({a, b, c});
        }
    }
    return out;
}

}  // namespace

double bump_profile_derivative_max(int s, int j) {
    if (s < 1 || j < 0) throw std::invalid_argument("bump_profile_derivative_max: bad order");
    if (j > 2 * s) return 0.0;
    {
        std::lock_guard<std::mutex> lock(cache_mutex);
        auto it = profile_cache().find({s, j});
        if (it != profile_cache().end()) return it->second;
    }
    std::vector<double> c = profile_coeffs(s);
    for (int k = 0; k < j; ++k) c = poly_derivative(c);
    double m = max_abs_on_interval(c, 0.0, 1.0, 1025);
    std::lock_guard<std::mutex> lock(cache_mutex);
    profile_cache()[{s, j}] = m;
    return m;
}

double calibrate_amplitude(const Cell& cell, int s, double weight, double denom,
                           double deriv_bound) {
    // |d^k q_i| <= edge_i^{2s-k} c_{s,k} with q_i the per-axis factor; the
    // variables separate, so the max of a mixed derivative is the product of
    // per-axis maxima.
    double worst = 0.0;
    for (const auto& v : indices_of_order(cell.dim, s)) {
        double prod = 1.0;
        for (int a = 0; a < cell.dim; ++a)
            prod *= std::pow(cell.edge(a), 2 * s - v[a]) * bump_profile_derivative_max(s, v[a]);
        worst = std::fmax(worst, prod);
    }
    return deriv_bound * denom / (weight * worst);
}

double Bump::value(std::span<const double> t) const {
    double prod = 1.0;
    for (int a = 0; a < cell.dim; ++a) {
        double f = (t[a] - cell.lo[a]) * (cell.hi[a] - t[a]);
        if (f <= 0.0) return 0.0;
        prod *= std::pow(f, s);
    }
    return amplitude * weight * prod / denom;
}

double Bump::max_value() const {
    double prod = 1.0;
    for (int a = 0; a < cell.dim; ++a) prod *= std::pow(0.25 * cell.edge(a) * cell.edge(a), s);
    return amplitude * weight * prod / denom;
}

double Bump::derivative_abs(std::span<const double> t, std::span<const int> v) const {
    double prod = amplitude * weight / denom;
    for (int a = 0; a < cell.dim; ++a) {
        double edge = cell.edge(a);
        double y = (t[a] - cell.lo[a]) / edge;
        std::vector<double> c = profile_coeffs(s);
        for (int k = 0; k < v[a]; ++k) c = poly_derivative(c);
        prod *= std::pow(edge, 2 * s - v[a]) * poly_eval(c, y);
    }
    return std::fabs(prod);
}

Bump bump_layer(const Cell& cell, int k, int N, double v, int s, int l, int M_k, double gamma,
                int r, int ln_power) {
    Bump b;
    b.cell = cell;
    b.s = s;
    double z = std::pow(static_cast<double>(k + 1) / N, v);
    double lnz = std::fabs(std::log(z));
    double hk = std::pow(static_cast<double>(k + 1) / N, v) - std::pow(static_cast<double>(k) / N, v);
    b.denom = std::pow(hk / M_k, (2 * l - 1) * s);
    b.weight = (1.0 + std::pow(lnz, ln_power)) / std::pow(z, v * gamma);
    b.deriv_bound = (1.0 + std::pow(lnz, ln_power)) / std::pow(z, v * (s - r));
    b.amplitude = calibrate_amplitude(cell, s, b.weight, b.denom, b.deriv_bound);
    return b;
}

Bump bump_interior(const Cell& cell, int s, int l, double h) {
    Bump b;
    b.cell = cell;
    b.s = s;
    b.denom = std::pow(h, (2 * l - 1) * s);
    b.weight = 1.0;
    b.deriv_bound = 1.0;
    b.amplitude = calibrate_amplitude(cell, s, b.weight, b.denom, b.deriv_bound);
    return b;
}

double bump_compliance(const Bump& b, int grid_per_axis) {
    double worst = 0.0;
    std::array<double, 3> pt{0, 0, 0};
    for (const auto& v : indices_of_order(b.cell.dim, b.s)) {
        std::array<int, 3> gi{0, 0, 0};
        while (true) {
            for (int a = 0; a < b.cell.dim; ++a)
                pt[a] = b.cell.lo[a] + b.cell.edge(a) * (gi[a] + 0.5) / grid_per_axis;
            std::array<int, 3> vv{v[0], v[1], v[2]};
            double d = b.derivative_abs(std::span<const double>(pt.data(), b.cell.dim),
                                        std::span<const int>(vv.data(), b.cell.dim));
            worst = std::fmax(worst, d / b.deriv_bound);
            int a = 0;
            for (; a < b.cell.dim; ++a) {
                if (++gi[a] < grid_per_axis) break;
                gi[a] = 0;
            }
            if (a == b.cell.dim) break;
        }
    }
    return worst;
}

RhoMesh rho_sequence(int N, int s, double gamma, int u) {
    if (N < 2) throw std::invalid_argument("rho_sequence: N must be >= 2");
    if (!(s > gamma)) throw std::invalid_argument("rho_sequence: requires s > gamma");
    double v = s / (s - gamma);
    double target = std::pow(static_cast<double>(N), -static_cast<double>(s)) *
                    std::pow(std::log(static_cast<double>(N)), u - 1);
    RhoMesh mesh;
    mesh.target = target;
    mesh.rho.push_back(std::pow(static_cast<double>(N), -v));

    auto phi = [&](double prev, double rho) {
        return std::pow(rho - prev, s) / std::pow(rho, gamma);
    };
    while (true) {
        double prev = mesh.rho.back();
        // phi is increasing in rho beyond prev; bracket then bisect to the
        // last representable interval
        double lo = prev, hi = prev + std::pow(target, 1.0 / s);
        while (phi(prev, hi) < target) hi = prev + 2.0 * (hi - prev);
        for (int it = 0; it < 200; ++it) {
            double mid = 0.5 * (lo + hi);
            if (mid <= lo || mid >= hi) break;
            if (phi(prev, mid) < target) lo = mid;
            else hi = mid;
        }
        double root = hi;
        if (root > 1.0) break;  // the continuation would leave the cube
        mesh.rho.push_back(root);
        mesh.residuals.push_back(std::fabs(phi(prev, root) - target) / target);
    }
    mesh.m = static_cast<int>(mesh.rho.size()) - 1;
    return mesh;
}

const char* to_string(WidthsFamily f) {
    switch (f) {
        case WidthsFamily::CritInt: return "crit";
        case WidthsFamily::CritFrac: return "crit-frac";
        case WidthsFamily::SteepInt: return "steep";
        case WidthsFamily::SteepFrac: return "steep-frac";
    }
    return "?";
}

WidthsFamily widths_family_from_string(const std::string& s) {
    if (s == "crit") return WidthsFamily::CritInt;
    if (s == "crit-frac") return WidthsFamily::CritFrac;
    if (s == "steep") return WidthsFamily::SteepInt;
    if (s == "steep-frac") return WidthsFamily::SteepFrac;
    throw std::invalid_argument("unknown widths family: " + s);
}

LowerBoundEstimate lower_bound_estimate(const FunctionClassSpec& spec, int N, int l,
                                        WidthsFamily family) {
    DerivedParams dp = derive_params(spec);
    double vcrit = static_cast<double>(l) / (l - 1);
    LowerBoundEstimate est;

    bool crit = family == WidthsFamily::CritInt || family == WidthsFamily::CritFrac;
    int ln_power = 0;
    switch (family) {
        case WidthsFamily::CritInt: ln_power = spec.u - 1; break;
        case WidthsFamily::CritFrac: ln_power = spec.u; break;
        case WidthsFamily::SteepInt: ln_power = spec.u - 1; break;
        case WidthsFamily::SteepFrac: ln_power = spec.u; break;
    }

    if (crit) {
        if (std::fabs(dp.v - vcrit) > 1e-9 * vcrit)
            throw std::invalid_argument("crit widths family requires v = l/(l-1)");
        ScheduleLD sched_kind = family == WidthsFamily::CritInt ? ScheduleLD::BumpCrit
                                                                : ScheduleLD::BumpCritFrac;
        FunctionClassSpec spec_l = spec;
        spec_l.l = l;
        std::vector<int> M = schedule_ld(spec_l, dp, N, sched_kind);
        est.partition = decompose_domain(N, dp.v, l, M, PartitionVariant::Independent);
        int central_layer = est.partition.central_layer();
        for (const Cell& cell : est.partition.cells) {
            int k = cell.layer;
            if (k == central_layer) {
                double h = est.partition.h_layer[k] / M[std::min<size_t>(k, M.size() - 1)];
                est.bumps.push_back(bump_interior(cell, dp.s, l, h));
            } else {
                est.bumps.push_back(bump_layer(cell, k, N, dp.v, dp.s, l,
                                               M[std::min<size_t>(k, M.size() - 1)], spec.gamma,
                                               spec.r, ln_power));
            }
        }
    } else {
        if (dp.v <= vcrit * (1.0 + 1e-9))
            throw std::invalid_argument("steep widths family requires v > l/(l-1)");
        RhoMesh rho = rho_sequence(N, dp.s, spec.gamma, spec.u);
        est.rho_m = rho.m;
        for (double rres : rho.residuals) est.rho_max_residual = std::fmax(est.rho_max_residual, rres);

        std::vector<double> radii;
        radii.push_back(0.0);
        for (double r : rho.rho) radii.push_back(r);
        bool trailing = radii.back() < 1.0;
        if (trailing) radii.push_back(1.0);
        else radii.back() = 1.0;
        std::vector<int> unit(radii.size(), 1);
        est.partition = decompose_from_radii(radii, l, unit, PartitionVariant::Independent, N, dp.v);

        double lnN = std::log(static_cast<double>(N));
        double w0 = std::pow(static_cast<double>(N), dp.v * spec.gamma) * std::pow(lnN, ln_power);
        int central_layer = est.partition.central_layer();
        for (const Cell& cell : est.partition.cells) {
            int k = cell.layer;
            Bump b;
            b.cell = cell;
            b.s = dp.s;
            if (k == central_layer && trailing) {
                b = bump_interior(cell, dp.s, l, est.partition.h_layer[k]);
            } else if (k == 0) {
                b.denom = std::pow(est.partition.h_layer[0], (2 * l - 1) * dp.s);
                b.weight = w0;
                b.deriv_bound = w0;
                b.amplitude = calibrate_amplitude(cell, dp.s, b.weight, b.denom, b.deriv_bound);
            } else {
                double rho_k = est.partition.d_radii[k + 1];
                b.denom = std::pow(est.partition.h_layer[k], (2 * l - 1) * dp.s);
                b.weight = 1.0 / std::pow(rho_k, spec.gamma);
                b.deriv_bound = b.weight;
                b.amplitude = calibrate_amplitude(cell, dp.s, b.weight, b.denom, b.deriv_bound);
            }
            est.bumps.push_back(b);
        }
    }

    est.n = est.bumps.size();
    est.eps_N = est.bumps.empty() ? 0.0 : est.bumps.front().max_value();
    for (const Bump& b : est.bumps) est.eps_N = std::fmin(est.eps_N, b.max_value());
    for (const Bump& b : est.bumps)
        est.max_compliance = std::fmax(est.max_compliance, bump_compliance(b));
    return est;
}

SignPatternRecord sign_pattern_check(const std::vector<Bump>& bumps,
                                     std::span<const double> coeffs) {
    if (coeffs.size() != bumps.size())
        throw std::invalid_argument("sign_pattern_check: one coefficient per bump required");
    for (double c : coeffs)
        if (std::fabs(c) > 1.0)
            throw std::invalid_argument("sign_pattern_check: coefficients must satisfy |C| <= 1");

    double eps = bumps.empty() ? 0.0 : bumps.front().max_value();
    for (const Bump& b : bumps) eps = std::fmin(eps, b.max_value());

    SignPatternRecord rec;
    rec.min_abs = 1e300;
    for (size_t i = 0; i < bumps.size(); ++i) {
        std::array<double, 3> center = bumps[i].cell.center();
        std::span<const double> pt(center.data(), bumps[i].cell.dim);
        // disjoint supports: only bump i contributes at its own center
        double xi = coeffs[i] * bumps[i].value(pt);
        ++rec.checked;
        if (coeffs[i] == 0.0) {
            if (xi != 0.0) {
                rec.detail = "nonzero value with zero coefficient";
                return rec;
            }
            continue;
        }
        if ((xi > 0.0) != (coeffs[i] > 0.0) || std::fabs(xi) + 1e-15 < eps * std::fabs(coeffs[i])) {
            rec.detail = "sign or margin violated at a bump center";
            return rec;
        }
        rec.min_abs = std::fmin(rec.min_abs, std::fabs(xi));
    }
    if (rec.min_abs == 1e300) rec.min_abs = 0.0;
    rec.ok = true;
    return rec;
}

}  // namespace locspline
