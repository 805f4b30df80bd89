#include "locspline/mesh1d.hpp"

#include <cmath>
#include <stdexcept>

#include "locspline/util.hpp"

namespace locspline {

const char* to_string(Mesh1DVariant v) {
    switch (v) {
        case Mesh1DVariant::EdgeLog: return "edge-log";
        case Mesh1DVariant::LayerLog: return "layer-log";
        case Mesh1DVariant::LayerLogFrac: return "layer-log-frac";
    }
    return "?";
}

Mesh1DVariant mesh1d_variant_from_string(const std::string& s) {
    if (s == "edge-log") return Mesh1DVariant::EdgeLog;
    if (s == "layer-log") return Mesh1DVariant::LayerLog;
    if (s == "layer-log-frac") return Mesh1DVariant::LayerLogFrac;
    throw std::invalid_argument("unknown 1D mesh variant: " + s);
}

std::vector<double> graded_points(int N, double v, Side side) {
    if (N < 2) throw std::invalid_argument("graded_points: N must be >= 2");
    if (!(v > 1.0)) throw std::invalid_argument("graded_points: v must exceed 1");
    std::vector<double> pts(N + 1);
    for (int k = 0; k <= N; ++k) {
        double frac = (k == N) ? 1.0 : std::pow(static_cast<double>(k) / N, v);
        pts[k] = (side == Side::Left) ? -1.0 + frac : 1.0 - frac;
    }
    pts[N] = 0.0;  // exact seam
    if (side == Side::Left) pts[0] = -1.0;
    else pts[0] = 1.0;
    return pts;
}

Schedule1D subdivision_counts(const FunctionClassSpec& spec, const DerivedParams& dp, int N,
                              Mesh1DVariant variant) {
    if (N < 2) throw std::invalid_argument("subdivision_counts: N must be >= 2");
    Schedule1D sch;
    sch.M.assign(N, 1);
    double lnN = std::log(static_cast<double>(N));
    switch (variant) {
        case Mesh1DVariant::EdgeLog:
            if (spec.kind != ClassKind::PowerLog)
                throw std::invalid_argument("edge-log variant requires the power-log class");
            sch.M[0] = ceil_guard(lnN);
            break;
        case Mesh1DVariant::LayerLog: {
            if (spec.kind != ClassKind::PowerLog)
                throw std::invalid_argument("layer-log variant requires the power-log class");
            if (spec.u == 1) {
                sch.flagged = true;
                sch.note = "u=1 with layer-log: (u-1)/s = 0, all interior counts collapse to 1";
            }
            sch.M[0] = ceil_guard(std::pow(lnN, static_cast<double>(spec.u) / spec.r));
            double q = static_cast<double>(spec.u - 1) / dp.s;
            for (int k = 1; k < N; ++k)
                sch.M[k] = ceil_guard(std::pow(std::log(static_cast<double>(N) / k), q));
            break;
        }
        case Mesh1DVariant::LayerLogFrac: {
            if (spec.kind != ClassKind::FracLog)
                throw std::invalid_argument("layer-log-frac variant requires the frac-log class");
            sch.M[0] = ceil_guard(std::pow(lnN, spec.u / (spec.r + 1.0 - dp.mu)));
            int mk = ceil_guard(std::pow(lnN, static_cast<double>(spec.u) / dp.s));
            for (int k = 1; k < N; ++k) sch.M[k] = mk;
            break;
        }
    }
    return sch;
}

Mesh1D build_mesh1d(const FunctionClassSpec& spec, int N, Mesh1DVariant variant) {
    DerivedParams dp = derive_params(spec);
    Schedule1D sch = subdivision_counts(spec, dp, N, variant);

    // left half: breakpoints from -1 to 0, each layer [t_k, t_{k+1}] split M_k ways
    std::vector<double> left = graded_points(N, dp.v, Side::Left);
    Mesh1D mesh;
    mesh.variant = variant;
    mesh.N = N;
    mesh.spec = spec;
    mesh.derived = dp;
    mesh.schedule = sch.M;

    std::vector<double> bps;
    bps.push_back(left[0]);
    for (int k = 0; k < N; ++k) {
        int M = sch.M[k];
        for (int j = 1; j <= M; ++j) bps.push_back(lerp_exact(left[k], left[k + 1], j, M));
    }
    // mirror to the right half; negation keeps the tiling exactly symmetric
    size_t half_count = bps.size();
    for (size_t i = half_count - 1; i-- > 0;) bps.push_back(-bps[i]);

    mesh.breakpoints = bps;
    size_t idx = 0;
    for (int k = 0; k < N; ++k)
        for (int j = 0; j < sch.M[k]; ++j, ++idx)
            mesh.intervals.push_back({bps[idx], bps[idx + 1], Side::Left, k, j});
    for (int k = N - 1; k >= 0; --k)
        for (int j = sch.M[k] - 1; j >= 0; --j, ++idx)
            mesh.intervals.push_back({bps[idx], bps[idx + 1], Side::Right, k, j});
    return mesh;
}

}  // namespace locspline
