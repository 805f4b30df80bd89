#include "locspline/mesh_ld.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>
#include <stdexcept>

#include "locspline/util.hpp"

namespace locspline {

namespace {

constexpr double kRelTol = 1e-12;

/// Equal pieces of a segment with every piece in [h, 2h): p = floor(len/h).
int piece_count(double len, double h) {
    if (len < h * (1.0 - 1e-9)) throw std::logic_error("piece_count: segment shorter than h");
    int p = static_cast<int>(std::floor(len / h + 1e-12));
    return p < 1 ? 1 : p;
}

struct Builder {
    PartitionLD P;

    void begin_layer() {
        P.layer_grids.emplace_back();
        P.layer_cell_range.emplace_back(P.cells.size(), P.cells.size());
    }
    void end_layer() { P.layer_cell_range.back().second = P.cells.size(); }

    void emit_slab(int layer, int axis, int sign, std::array<std::vector<double>, 3> bps, int M) {
        SlabGrid g;
        g.axis = axis;
        g.sign = sign;
        g.M = M;
        g.cell_offset = P.cells.size();
        int l = P.l;
        std::array<int, 3> n{1, 1, 1};
        for (int a = 0; a < l; ++a) n[a] = static_cast<int>(bps[a].size()) - 1;
        g.counts = n;
        g.bps = std::move(bps);
        // axis-0 fastest
        std::array<int, 3> idx{0, 0, 0};
        size_t total = 1;
        for (int a = 0; a < l; ++a) total *= static_cast<size_t>(n[a]);
        for (size_t c = 0; c < total; ++c) {
            Cell cell;
            cell.dim = l;
            cell.layer = layer;
            for (int a = 0; a < l; ++a) {
                cell.lo[a] = g.bps[a][idx[a]];
                cell.hi[a] = g.bps[a][idx[a] + 1];
                cell.j_ids[a] = M > 1 ? idx[a] % M : 0;
            }
            P.cells.push_back(cell);
            for (int a = 0; a < l; ++a) {
                if (++idx[a] < n[a]) break;
                idx[a] = 0;
            }
        }
        P.layer_grids.back().push_back(std::move(g));
    }
};

/// Slab tangential extent for axis j of face-slab (i, sign): axes before the
/// face axis stop at the inner box, later axes run across the whole frame.
/// The precedence order (axis asc, - before +) fixes corner ownership.
void slab_extent(int i, int j, double W, double w, double& lo, double& hi) {
    if (j < i) {
        lo = -w;
        hi = w;
    } else {
        lo = -W;
        hi = W;
    }
}

std::vector<double> mirror_ladder(const std::vector<double>& positive_corner,
                                  const std::vector<double>& inner) {
    // inner spans [-w, w], positive_corner spans [w, W]; negation is exact
    std::vector<double> full;
    full.reserve(inner.size() + 2 * positive_corner.size());
    for (size_t i = positive_corner.size(); i-- > 1;) full.push_back(-positive_corner[i]);
    for (double x : inner) full.push_back(x);
    for (size_t i = 1; i < positive_corner.size(); ++i) full.push_back(positive_corner[i]);
    return full;
}

std::vector<double> refine_segmentwise(const std::vector<double>& inner, double hstar) {
    std::vector<double> out;
    out.push_back(inner.front());
    for (size_t i = 0; i + 1 < inner.size(); ++i) {
        double a = inner[i], b = inner[i + 1];
        double len = b - a;
        if (len > 2.0 * hstar * (1.0 + kRelTol)) {
            int p = piece_count(len, hstar);
            for (int j = 1; j < p; ++j) out.push_back(lerp_exact(a, b, j, p));
        }
        out.push_back(b);
    }
    return out;
}

std::vector<double> sub_ladder(const std::vector<double>& ladder, double lo, double hi) {
    auto first = std::lower_bound(ladder.begin(), ladder.end(), lo);
    auto last = std::upper_bound(ladder.begin(), ladder.end(), hi);
    if (first == ladder.end() || *first != lo)
        throw std::logic_error("sub_ladder: lo not a ladder point");
    return std::vector<double>(first, last);
}

void assign_lineage_ranks(PartitionLD& P) {
    for (auto [b, e] : P.layer_cell_range) {
        std::array<std::vector<double>, 3> coords;
        for (size_t c = b; c < e; ++c)
            for (int a = 0; a < P.l; ++a) {
                coords[a].push_back(P.cells[c].lo[a]);
                coords[a].push_back(P.cells[c].hi[a]);
            }
        for (int a = 0; a < P.l; ++a) {
            std::sort(coords[a].begin(), coords[a].end());
            coords[a].erase(std::unique(coords[a].begin(), coords[a].end()), coords[a].end());
        }
        for (size_t c = b; c < e; ++c)
            for (int a = 0; a < P.l; ++a) {
                auto it = std::lower_bound(coords[a].begin(), coords[a].end(), P.cells[c].lo[a]);
                P.cells[c].i_ids[a] = static_cast<int>(it - coords[a].begin());
            }
    }
}

}  // namespace

const char* to_string(ScheduleLD s) {
    switch (s) {
        case ScheduleLD::GradedLog: return "graded-log";
        case ScheduleLD::GradedLogFrac: return "graded-log-frac";
        case ScheduleLD::Unit: return "unit";
        case ScheduleLD::BumpCrit: return "bump-crit";
        case ScheduleLD::BumpCritFrac: return "bump-crit-frac";
    }
    return "?";
}

ScheduleLD schedule_ld_from_string(const std::string& s) {
    if (s == "graded-log") return ScheduleLD::GradedLog;
    if (s == "graded-log-frac") return ScheduleLD::GradedLogFrac;
    if (s == "unit") return ScheduleLD::Unit;
    if (s == "bump-crit") return ScheduleLD::BumpCrit;
    if (s == "bump-crit-frac") return ScheduleLD::BumpCritFrac;
    throw std::invalid_argument("unknown schedule: " + s);
}

std::vector<double> standard_radii(int N, double v) {
    if (N < 2) throw std::invalid_argument("standard_radii: N must be >= 2");
    if (!(v > 1.0)) throw std::invalid_argument("standard_radii: v must exceed 1");
    std::vector<double> d(N + 1);
    for (int k = 0; k < N; ++k) d[k] = std::pow(static_cast<double>(k) / N, v);
    d[N] = 1.0;
    return d;
}

int layer_index_from_distance(double d, const std::vector<double>& d_radii) {
    if (d < 0.0 || d > 1.0) throw std::invalid_argument("layer_index: distance outside [0,1]");
    if (d == 0.0) return 0;
    auto it = std::lower_bound(d_radii.begin() + 1, d_radii.end(), d);
    int k = static_cast<int>(it - d_radii.begin()) - 1;
    int L = static_cast<int>(d_radii.size()) - 1;
    return std::clamp(k, 0, L - 1);
}

int layer_index(std::span<const double> t, int N, double v) {
    return layer_index_from_distance(distance_to_boundary(t), standard_radii(N, v));
}

std::vector<Cell> subdivide_cell(const Cell& cell, int M) {
    if (M < 1) throw std::invalid_argument("subdivide_cell: M must be >= 1");
    std::vector<Cell> out;
    std::array<int, 3> idx{0, 0, 0};
    size_t total = 1;
    for (int a = 0; a < cell.dim; ++a) total *= static_cast<size_t>(M);
    out.reserve(total);
    for (size_t c = 0; c < total; ++c) {
        Cell sub = cell;
        for (int a = 0; a < cell.dim; ++a) {
            sub.lo[a] = lerp_exact(cell.lo[a], cell.hi[a], idx[a], M);
            sub.hi[a] = lerp_exact(cell.lo[a], cell.hi[a], idx[a] + 1, M);
            sub.j_ids[a] = idx[a];
        }
        out.push_back(sub);
        for (int a = 0; a < cell.dim; ++a) {
            if (++idx[a] < M) break;
            idx[a] = 0;
        }
    }
    return out;
}

std::vector<int> schedule_ld(const FunctionClassSpec& spec, const DerivedParams& dp, int N,
                             ScheduleLD schedule) {
    if (N < 2) throw std::invalid_argument("schedule_ld: N must be >= 2");
    if (spec.l < 2) throw std::invalid_argument("schedule_ld: requires l >= 2");
    double vcrit = static_cast<double>(spec.l) / (spec.l - 1);
    double lnN = std::log(static_cast<double>(N));
    std::vector<int> M(N, 1);
    auto fill_tail = [&](double q) {
        for (int k = 1; k < N; ++k)
            M[k] = ceil_guard(std::pow(std::log(static_cast<double>(N) / k), q));
    };
    switch (schedule) {
        case ScheduleLD::GradedLog:
            if (spec.kind != ClassKind::PowerLog)
                throw std::invalid_argument("graded-log schedule requires the power-log class");
            if (dp.v > vcrit * (1.0 + 1e-9))
                throw std::invalid_argument("graded-log schedule requires v <= l/(l-1)");
            M[0] = ceil_guard(std::pow(lnN, static_cast<double>(spec.u) / spec.r));
            fill_tail(static_cast<double>(spec.u - 1) / dp.s);
            break;
        case ScheduleLD::GradedLogFrac:
            if (spec.kind != ClassKind::FracLog)
                throw std::invalid_argument("graded-log-frac schedule requires the frac-log class");
            if (dp.v > vcrit * (1.0 + 1e-9))
                throw std::invalid_argument("graded-log-frac schedule requires v <= l/(l-1)");
            M[0] = ceil_guard(std::pow(lnN, spec.u / (spec.r + 1.0 - dp.mu)));
            fill_tail(static_cast<double>(spec.u) / dp.s);
            break;
        case ScheduleLD::Unit:
            if (dp.v < vcrit * (1.0 - 1e-9))
                throw std::invalid_argument("unit schedule requires v > l/(l-1)");
            break;
        case ScheduleLD::BumpCrit:
            if (spec.kind != ClassKind::PowerLog)
                throw std::invalid_argument("bump-crit schedule requires the power-log class");
            M[0] = ceil_guard(std::pow(lnN, static_cast<double>(spec.u - 1) / dp.s));
            fill_tail(static_cast<double>(spec.u - 1) / dp.s);
            break;
        case ScheduleLD::BumpCritFrac:
            if (spec.kind != ClassKind::FracLog)
                throw std::invalid_argument("bump-crit-frac schedule requires the frac-log class");
            M[0] = ceil_guard(std::pow(lnN, static_cast<double>(spec.u) / dp.s));
            fill_tail(static_cast<double>(spec.u) / dp.s);
            break;
    }
    return M;
}

std::vector<Cell> decompose_layer(int k, int N, double v, int l) {
    if (l < 2 || l > 3) throw std::invalid_argument("decompose_layer: l must be 2 or 3");
    std::vector<double> d = standard_radii(N, v);
    if (k < 0 || k >= N) throw std::invalid_argument("decompose_layer: layer out of range");
    std::vector<int> unit(N, 1);
    PartitionLD full = decompose_from_radii(d, l, unit, PartitionVariant::Independent, N, v);
    auto [b, e] = full.layer_cell_range[std::min(k, full.central_layer())];
    return std::vector<Cell>(full.cells.begin() + b, full.cells.begin() + e);
}

PartitionLD decompose_domain(int N, double v, int l, std::span<const int> schedule,
                             PartitionVariant variant) {
    return decompose_from_radii(standard_radii(N, v), l, schedule, variant, N, v);
}

PartitionLD decompose_from_radii(std::vector<double> d_radii, int l,
                                 std::span<const int> schedule, PartitionVariant variant,
                                 int N_bookkeeping, double v_bookkeeping) {
    if (l < 2 || l > 3)
        throw std::invalid_argument("decompose_from_radii: l must be 2 or 3");
    if (d_radii.size() < 2 || d_radii.front() != 0.0 || d_radii.back() != 1.0)
        throw std::invalid_argument("decompose_from_radii: thresholds must run from 0 to 1");
    for (size_t i = 0; i + 1 < d_radii.size(); ++i)
        if (!(d_radii[i] < d_radii[i + 1]))
            throw std::invalid_argument("decompose_from_radii: thresholds must increase strictly");
    int L = static_cast<int>(d_radii.size()) - 1;
    if (static_cast<int>(schedule.size()) < L)
        throw std::invalid_argument("decompose_from_radii: schedule shorter than layer count");

    Builder bld;
    PartitionLD& P = bld.P;
    P.l = l;
    P.N = N_bookkeeping;
    P.v = v_bookkeeping;
    P.variant = variant;
    P.schedule.assign(schedule.begin(), schedule.end());
    P.d_radii = d_radii;
    P.half_widths.resize(d_radii.size());
    for (size_t i = 0; i < d_radii.size(); ++i) P.half_widths[i] = 1.0 - d_radii[i];
    P.half_widths.back() = 1.0 - d_radii.back();  // 0 for a full decomposition
    P.h_layer.resize(L);
    for (int k = 0; k < L; ++k) P.h_layer[k] = P.half_widths[k] - P.half_widths[k + 1];

    // detect a degenerate thin core: absorb the rest into the central box
    int central = L - 1;
    for (int k = 0; k < L - 1; ++k) {
        double w = P.half_widths[k + 1], h = P.h_layer[k];
        if (2.0 * w < h * (1.0 - kRelTol)) {
            central = k;
            P.merged_core = true;
            break;
        }
    }
    if (P.merged_core) {
        P.d_radii.resize(central + 2);
        P.d_radii.back() = 1.0;
        P.half_widths.resize(central + 2);
        P.half_widths.back() = 0.0;
        P.h_layer.resize(central + 1);
        P.h_layer[central] = P.half_widths[central];
        L = central + 1;
    }

    if (variant == PartitionVariant::Independent) {
        for (int k = 0; k < L; ++k) {
            bld.begin_layer();
            double W = P.half_widths[k], w = P.half_widths[k + 1], h = P.h_layer[k];
            int M = P.schedule[std::min<size_t>(k, P.schedule.size() - 1)];
            if (k == central) {
                // solid central box; its edge is exactly 2h so the slab rule
                // leaves it whole (split only above 2h strictly)
                double edge = 2.0 * W;
                int p = edge > 2.0 * h * (1.0 + kRelTol) ? piece_count(edge, h) : 1;
                std::array<std::vector<double>, 3> bps;
                for (int a = 0; a < l; ++a) bps[a] = split_equal(-W, W, p * M);
                bld.emit_slab(k, -1, +1, bps, M);
            } else {
                for (int axis = 0; axis < l; ++axis)
                    for (int sign : {-1, +1}) {
                        std::array<std::vector<double>, 3> bps;
                        bps[axis] = sign > 0 ? split_equal(w, W, M) : split_equal(-W, -w, M);
                        for (int j = 0; j < l; ++j) {
                            if (j == axis) continue;
                            double lo, hi;
                            slab_extent(axis, j, W, w, lo, hi);
                            int p = piece_count(hi - lo, h);
                            bps[j] = split_equal(lo, hi, p * M);
                        }
                        bld.emit_slab(k, axis, sign, std::move(bps), M);
                    }
            }
            bld.end_layer();
        }
        P.central_cell = static_cast<long>(P.layer_cell_range[central].first);
    } else {
        // aligned variant: build per-layer axis ladders center-out, then emit
        // the slabs outermost-layer-first so the cell order matches the
        // independent variant (layer 0 first, central last).
        P.ladders.assign(L, {});
        double wC = P.half_widths[central];
        P.ladders[central] = {-wC, wC};
        for (int k = central - 1; k >= 0; --k) {
            double W = P.half_widths[k], w = P.half_widths[k + 1], h = P.h_layer[k];
            int M = P.schedule[std::min<size_t>(k, P.schedule.size() - 1)];
            double hstar = h / M;
            std::vector<double> corner = split_equal(w, W, M);
            std::vector<double> inner = refine_segmentwise(P.ladders[k + 1], hstar);
            P.ladders[k] = mirror_ladder(corner, inner);
        }
        for (int k = 0; k < L; ++k) {
            bld.begin_layer();
            double W = P.half_widths[k], w = P.half_widths[k + 1];
            if (k == central) {
                std::array<std::vector<double>, 3> bps;
                for (int a = 0; a < l; ++a) bps[a] = {-W, W};
                bld.emit_slab(k, -1, +1, bps, 1);
            } else {
                int M = P.schedule[std::min<size_t>(k, P.schedule.size() - 1)];
                const std::vector<double>& ladder = P.ladders[k];
                for (int axis = 0; axis < l; ++axis)
                    for (int sign : {-1, +1}) {
                        std::array<std::vector<double>, 3> bps;
                        bps[axis] = sign > 0 ? sub_ladder(ladder, w, W) : sub_ladder(ladder, -W, -w);
                        for (int j = 0; j < l; ++j) {
                            if (j == axis) continue;
                            double lo, hi;
                            slab_extent(axis, j, W, w, lo, hi);
                            bps[j] = sub_ladder(ladder, lo, hi);
                        }
                        bld.emit_slab(k, axis, sign, std::move(bps), M);
                    }
            }
            bld.end_layer();
        }
        P.central_cell = static_cast<long>(P.layer_cell_range[central].first);
    }

    assign_lineage_ranks(P);
    return bld.P;
}

namespace {

bool slab_contains(const SlabGrid& g, int l, std::span<const double> t) {
    for (int a = 0; a < l; ++a)
        if (t[a] < g.bps[a].front() || t[a] > g.bps[a].back()) return false;
    return true;
}

int axis_interval(const std::vector<double>& bp, double t) {
    auto it = std::lower_bound(bp.begin() + 1, bp.end(), t);
    int idx = static_cast<int>(it - bp.begin()) - 1;
    return std::clamp(idx, 0, static_cast<int>(bp.size()) - 2);
}

size_t slab_cell_index(const SlabGrid& g, int l, const std::array<int, 3>& idx) {
    size_t c = 0;
    for (int a = l; a-- > 0;) c = c * static_cast<size_t>(g.counts[a]) + static_cast<size_t>(idx[a]);
    return g.cell_offset + c;
}

}  // namespace

size_t locate_cell(const PartitionLD& p, std::span<const double> t) {
    double d = distance_to_boundary(t);
    int k = layer_index_from_distance(d, p.d_radii);
    for (const SlabGrid& g : p.layer_grids[k]) {
        if (!slab_contains(g, p.l, t)) continue;
        std::array<int, 3> idx{0, 0, 0};
        for (int a = 0; a < p.l; ++a) idx[a] = axis_interval(g.bps[a], t[a]);
        return slab_cell_index(g, p.l, idx);
    }
    throw std::logic_error("locate_cell: no slab of the layer contains the point");
}

void locate_cells_containing(const PartitionLD& p, std::span<const double> t,
                             std::vector<size_t>& out) {
    out.clear();
    double d = distance_to_boundary(t);
    int k = layer_index_from_distance(d, p.d_radii);
    // the point may also lie on the closure of the next inner layer
    for (int layer : {k, k + 1}) {
        if (layer >= p.layer_count()) continue;
        for (const SlabGrid& g : p.layer_grids[layer]) {
            if (!slab_contains(g, p.l, t)) continue;
            // up to two containing intervals per axis at breakpoint ties
            std::array<std::vector<int>, 3> cand;
            for (int a = 0; a < p.l; ++a) {
                int idx = axis_interval(g.bps[a], t[a]);
                cand[a].push_back(idx);
                if (t[a] == g.bps[a][idx] && idx > 0) cand[a].push_back(idx - 1);
                if (t[a] == g.bps[a][idx + 1] && idx + 2 < static_cast<int>(g.bps[a].size()))
                    cand[a].push_back(idx + 1);
            }
            std::array<int, 3> pick{0, 0, 0};
            std::array<size_t, 3> ci{0, 0, 0};
            while (true) {
                std::array<int, 3> idx{0, 0, 0};
                for (int a = 0; a < p.l; ++a) idx[a] = cand[a][ci[a]];
                out.push_back(slab_cell_index(g, p.l, idx));
                int a = 0;
                for (; a < p.l; ++a) {
                    if (++ci[a] < cand[a].size()) break;
                    ci[a] = 0;
                }
                if (a == p.l) break;
            }
            (void)pick;
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
}

CellCount count_cells(const PartitionLD& p) {
    CellCount c;
    c.n = p.cells.size();
    double N = p.N, v = p.v, l = p.l;
    double vcrit = l / (l - 1.0);
    double pred;
    if (v < vcrit * (1.0 - 1e-9)) {
        pred = std::pow(N, l);
        c.regime = "subcritical: n ~ N^l";
    } else if (v > vcrit * (1.0 + 1e-9)) {
        pred = std::pow(N, v * (l - 1.0));
        c.regime = "supercritical: n ~ N^{v(l-1)}";
    } else {
        pred = std::pow(N, l) * std::log(N);
        c.regime = "critical: n ~ N^l ln N";
    }
    c.ratio = static_cast<double>(c.n) / pred;
    return c;
}

TilingReport check_tiling(const PartitionLD& p) {
    TilingReport rep;
    double vol = 0.0;
    for (const Cell& c : p.cells) {
        for (int a = 0; a < p.l; ++a)
            if (!(c.lo[a] < c.hi[a])) {
                rep.detail = "degenerate cell edge";
                return rep;
            }
        vol += c.volume();
    }
    rep.volume = vol;
    double expect = std::pow(2.0, p.l);
    rep.volume_rel_err = std::fabs(vol - expect) / expect;

    // slabs of a layer must not overlap; layers are disjoint by construction
    for (const auto& grids : p.layer_grids) {
        for (size_t i = 0; i < grids.size(); ++i)
            for (size_t j = i + 1; j < grids.size(); ++j) {
                bool overlap = true;
                for (int a = 0; a < p.l; ++a) {
                    double lo = std::max(grids[i].bps[a].front(), grids[j].bps[a].front());
                    double hi = std::min(grids[i].bps[a].back(), grids[j].bps[a].back());
                    if (!(lo < hi - 0.0)) {
                        overlap = false;
                        break;
                    }
                }
                if (overlap) {
                    rep.detail = "overlapping slabs within a layer";
                    return rep;
                }
            }
        for (const SlabGrid& g : grids)
            for (int a = 0; a < p.l; ++a)
                for (size_t i = 0; i + 1 < g.bps[a].size(); ++i)
                    if (!(g.bps[a][i] < g.bps[a][i + 1])) {
                        rep.detail = "non-monotone slab breakpoints";
                        return rep;
                    }
    }
    rep.ok = rep.volume_rel_err <= 1e-9;
    if (!rep.ok) rep.detail = "volume defect";
    return rep;
}

EdgeWindowReport check_edge_window(const PartitionLD& p) {
    EdgeWindowReport rep;
    rep.worst_low = 2.0;
    rep.worst_high = 0.0;
    for (const Cell& c : p.cells) {
        int k = c.layer;
        double h = p.h_layer[k];
        int M = p.schedule.empty() ? 1 : p.schedule[std::min<size_t>(k, p.schedule.size() - 1)];
        bool central = (p.central_cell >= 0 && k == p.cells[p.central_cell].layer);
        for (int a = 0; a < p.l; ++a) {
            double e = c.edge(a);
            double lo, hi;
            if (central) {
                // solid central box: edge is 2h (or h*-scaled pieces of it)
                lo = h / std::max(1, M);
                hi = 2.0 * h / std::max(1, M);
                if (p.variant == PartitionVariant::Aligned) {
                    lo = h;
                    hi = 2.0 * h;
                }
                rep.worst_low = std::min(rep.worst_low, e / lo);
                rep.worst_high = std::max(rep.worst_high, e / hi);
                if (e < lo * (1.0 - 1e-9) || e > hi * (1.0 + 1e-9)) {
                    rep.detail = "central cell outside its window";
                    return rep;
                }
                continue;
            }
            if (p.variant == PartitionVariant::Independent) {
                double pre = e * M;  // undo the equal subdivision
                rep.worst_low = std::min(rep.worst_low, pre / h);
                rep.worst_high = std::max(rep.worst_high, pre / (2.0 * h));
                if (pre < h * (1.0 - 1e-9) || pre >= 2.0 * h * (1.0 + 1e-9)) {
                    rep.detail = "independent cell outside [h_k, 2h_k)";
                    return rep;
                }
            } else {
                double hstar = h / M;
                rep.worst_low = std::min(rep.worst_low, e / hstar);
                rep.worst_high = std::max(rep.worst_high, e / (2.0 * hstar));
                if (e < hstar * (1.0 - 1e-9) || e > 2.0 * hstar * (1.0 + 1e-9)) {
                    rep.detail = "aligned cell outside [h*_k, 2h*_k]";
                    return rep;
                }
            }
        }
    }
    rep.ok = true;
    return rep;
}

ConformityReport check_conformity(const PartitionLD& p) {
    ConformityReport rep;
    if (p.variant != PartitionVariant::Aligned) {
        rep.detail = "conformity is only claimed for the aligned variant";
        return rep;
    }
    // interlayer ladders nest center-out
    for (int k = 0; k + 1 < p.layer_count(); ++k) {
        const std::vector<double>& fine = p.ladders[k];
        for (double x : p.ladders[k + 1])
            if (!std::binary_search(fine.begin(), fine.end(), x)) {
                rep.detail = "ladder vertex not inherited by the outer layer";
                return rep;
            }
    }

    // face pairing: on each axis-plane, every overlap between a left-side and
    // a right-side cell must be a full tangential face of one of them
    struct FaceRect {
        const Cell* cell;
        std::array<double, 2> lo, hi;  // tangential extents
    };
    for (int axis = 0; axis < p.l; ++axis) {
        std::map<double, std::pair<std::vector<FaceRect>, std::vector<FaceRect>>> planes;
        for (const Cell& c : p.cells) {
            FaceRect fr;
            fr.cell = &c;
            int t = 0;
            for (int a = 0; a < p.l; ++a) {
                if (a == axis) continue;
                fr.lo[t] = c.lo[a];
                fr.hi[t] = c.hi[a];
                ++t;
            }
            for (; t < 2; ++t) {
                fr.lo[t] = 0.0;
                fr.hi[t] = 1.0;
            }
            planes[c.hi[axis]].first.push_back(fr);
            planes[c.lo[axis]].second.push_back(fr);
        }
        int tdims = p.l - 1;
        for (auto& [x, lists] : planes) {
            auto& left = lists.first;
            auto& right = lists.second;
            if (left.empty() || right.empty()) continue;
            auto by_lo = [](const FaceRect& a, const FaceRect& b) { return a.lo[0] < b.lo[0]; };
            std::sort(left.begin(), left.end(), by_lo);
            std::sort(right.begin(), right.end(), by_lo);
            size_t rstart = 0;
            for (const FaceRect& L : left) {
                while (rstart < right.size() && right[rstart].hi[0] <= L.lo[0]) ++rstart;
                for (size_t j = rstart; j < right.size() && right[j].lo[0] < L.hi[0]; ++j) {
                    const FaceRect& R = right[j];
                    bool positive = true;
                    std::array<double, 2> olo{0, 0}, ohi{0, 0};
                    for (int t = 0; t < tdims; ++t) {
                        olo[t] = std::max(L.lo[t], R.lo[t]);
                        ohi[t] = std::min(L.hi[t], R.hi[t]);
                        if (!(olo[t] < ohi[t])) positive = false;
                    }
                    if (!positive) continue;
                    ++rep.face_pairs;
                    bool fullL = true, fullR = true;
                    for (int t = 0; t < tdims; ++t) {
                        fullL = fullL && olo[t] == L.lo[t] && ohi[t] == L.hi[t];
                        fullR = fullR && olo[t] == R.lo[t] && ohi[t] == R.hi[t];
                    }
                    if (!fullL && !fullR) {
                        rep.detail = "shared face is a full face of neither cell";
                        return rep;
                    }
                }
            }
        }
    }
    rep.ok = true;
    return rep;
}

void dump_partition(const PartitionLD& p, std::ostream& os) {
    char buf[64];
    for (const Cell& c : p.cells) {
        os << c.layer;
        for (int a = 0; a < p.l; ++a) os << ' ' << c.i_ids[a];
        for (int a = 0; a < p.l; ++a) os << ' ' << c.j_ids[a];
        for (int a = 0; a < p.l; ++a) {
            std::snprintf(buf, sizeof buf, " %.17g %.17g", c.lo[a], c.hi[a]);
            os << buf;
        }
        os << '\n';
    }
}

}  // namespace locspline
