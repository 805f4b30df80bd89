#include "locspline/spline_ld.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "locspline/cheb1d.hpp"
#include "locspline/util.hpp"

namespace locspline {

namespace {

std::vector<double> bary_weights_ref(const std::vector<double>& nodes) {
    size_t n = nodes.size();
    std::vector<double> w(n, 1.0);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            if (j != i) w[i] /= (nodes[i] - nodes[j]);
    return w;
}

/// Normalized barycentric basis values l_i(t) at one point of one axis.
void basis_at(const std::vector<double>& nodes, const std::vector<double>& weights, double lo,
              double hi, double t, std::span<double> out) {
    size_t n = nodes.size();
    double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    double x = (t - mid) / half;
    double den = 0.0;
    for (size_t i = 0; i < n; ++i) {
        double xr = (nodes[i] - mid) / half;
        double dx = x - xr;
        if (t == nodes[i] || dx == 0.0) {
            for (size_t j = 0; j < n; ++j) out[j] = (j == i) ? 1.0 : 0.0;
            return;
        }
        out[i] = weights[i] / dx;
        den += out[i];
    }
    for (size_t i = 0; i < n; ++i) out[i] /= den;
}

}  // namespace

InterpolantLD InterpolantLD::fit(const FieldFn& f, const Cell& cell, int nodes_per_dim) {
    if (nodes_per_dim < 2) throw std::invalid_argument("tensor interpolant needs >= 2 nodes/dim");
    InterpolantLD p;
    p.cell_ = cell;
    p.nd_ = nodes_per_dim;
    size_t total = 1;
    for (int a = 0; a < cell.dim; ++a) {
        p.nodes_[a] = map_nodes(nodes_per_dim, cell.lo[a], cell.hi[a]);
        p.weights_[a] = bary_weights_ref(chebyshev_zeros(nodes_per_dim));
        total *= static_cast<size_t>(nodes_per_dim);
    }
    p.values_.resize(total);
    std::array<int, 3> idx{0, 0, 0};
    std::array<double, 3> pt{0, 0, 0};
    for (size_t c = 0; c < total; ++c) {
        for (int a = 0; a < cell.dim; ++a) pt[a] = p.nodes_[a][idx[a]];
        double val = f(std::span<const double>(pt.data(), cell.dim));
        if (!std::isfinite(val)) {
            std::ostringstream msg;
            msg << "tensor_interpolate: non-finite value at node (";
            for (int a = 0; a < cell.dim; ++a) msg << (a ? "," : "") << pt[a];
            msg << ")";
            throw std::invalid_argument(msg.str());
        }
        p.values_[c] = val;
        for (int a = 0; a < cell.dim; ++a) {
            if (++idx[a] < nodes_per_dim) break;
            idx[a] = 0;
        }
    }
    return p;
}

InterpolantLD tensor_interpolate(const FieldFn& f, const Cell& cell, int s) {
    return InterpolantLD::fit(f, cell, s);
}

void InterpolantLD::node_point(std::span<const int> idx, std::span<double> out) const {
    for (int a = 0; a < cell_.dim; ++a) out[a] = nodes_[a][idx[a]];
}

double InterpolantLD::operator()(std::span<const double> t) const {
    int l = cell_.dim, n = nd_;
    double basis[3][8];
    for (int a = 0; a < l; ++a)
        basis_at(nodes_[a], weights_[a], cell_.lo[a], cell_.hi[a], t[a],
                 std::span<double>(basis[a], n));
    double sum = 0.0;
    std::array<int, 3> idx{0, 0, 0};
    for (size_t c = 0; c < values_.size(); ++c) {
        double w = basis[0][idx[0]];
        for (int a = 1; a < l; ++a) w *= basis[a][idx[a]];
        sum += w * values_[c];
        for (int a = 0; a < l; ++a) {
            if (++idx[a] < n) break;
            idx[a] = 0;
        }
    }
    return sum;
}

SplineLD build_spline_ld(const FieldFn& f, const PartitionLD& partition, int s, bool continuous) {
    if (s < 2) throw std::invalid_argument("build_spline_ld: s must be >= 2");
    if (s > 8) throw std::invalid_argument("build_spline_ld: s capped at 8 in this harness");
    if (continuous && partition.variant != PartitionVariant::Aligned)
        throw std::invalid_argument("continuous spline requires the aligned partition variant");

    SplineLD sp;
    sp.partition_ = std::make_shared<PartitionLD>(partition);
    const PartitionLD& P = *sp.partition_;
    sp.continuous_ = continuous;
    sp.nd_ = s;
    sp.pieces_.resize(P.cells.size());

    if (!continuous) {
        for (size_t c = 0; c < P.cells.size(); ++c)
            sp.pieces_[c] = InterpolantLD::fit(f, P.cells[c], s);
    } else {
        std::vector<char> fitted(P.cells.size(), 0);
        std::vector<size_t> containing;
        int L = P.layer_count();
        for (int k = L - 1; k >= 0; --k) {
            auto [b, e] = P.layer_cell_range[k];
            double w_inner = P.half_widths[k + 1];
            for (size_t c = b; c < e; ++c) {
                const Cell& cell = P.cells[c];
                InterpolantLD piece = InterpolantLD::fit(f, cell, s);
                // overwrite node values on faces shared with fitted cells:
                // the inner-layer neighbor wins, then the earliest same-layer
                // neighbor; interior nodes keep f
                std::array<int, 3> idx{0, 0, 0};
                std::array<double, 3> pt{0, 0, 0};
                for (size_t q = 0; q < piece.values().size(); ++q) {
                    piece.node_point(std::span<const int>(idx.data(), P.l),
                                     std::span<double>(pt.data(), P.l));
                    bool on_face = false;
                    for (int a = 0; a < P.l; ++a)
                        on_face = on_face || pt[a] == cell.lo[a] || pt[a] == cell.hi[a];
                    if (on_face) {
                        std::span<const double> tp(pt.data(), P.l);
                        double dmax = 0.0;
                        for (int a = 0; a < P.l; ++a) dmax = std::fmax(dmax, std::fabs(pt[a]));
                        bool inner_surface = (k + 1 <= L - 1) && (dmax == w_inner);
                        locate_cells_containing(P, tp, containing);
                        size_t donor = P.cells.size();
                        for (size_t cand : containing) {
                            if (cand == c || !fitted[cand]) continue;
                            if (inner_surface && P.cells[cand].layer == k + 1) {
                                donor = cand;
                                break;
                            }
                            if (donor == P.cells.size()) donor = cand;
                        }
                        if (donor < P.cells.size()) piece.values()[q] = sp.pieces_[donor](tp);
                    }
                    for (int a = 0; a < P.l; ++a) {
                        if (++idx[a] < s) break;
                        idx[a] = 0;
                    }
                }
                sp.pieces_[c] = std::move(piece);
                fitted[c] = 1;
            }
        }
    }

    std::unordered_set<PointKey, PointKeyHash> seen;
    std::array<int, 3> idx{0, 0, 0};
    std::array<double, 3> pt{0, 0, 0};
    for (const InterpolantLD& piece : sp.pieces_) {
        idx = {0, 0, 0};
        for (size_t q = 0; q < piece.values().size(); ++q) {
            piece.node_point(std::span<const int>(idx.data(), P.l),
                             std::span<double>(pt.data(), P.l));
            seen.insert(make_point_key(std::span<const double>(pt.data(), P.l)));
            for (int a = 0; a < P.l; ++a) {
                if (++idx[a] < sp.nd_) break;
                idx[a] = 0;
            }
        }
    }
    sp.node_count_ = seen.size();
    return sp;
}

double SplineLD::operator()(std::span<const double> t) const {
    size_t c = locate_cell(*partition_, t);
    return pieces_[c](t);
}

double eval_spline_ld(const SplineLD& sp, std::span<const double> t) { return sp(t); }

namespace {

template <typename Visit>
void for_each_sample(const SplineLD& sp, int q, Visit&& visit) {
    const PartitionLD& P = sp.partition();
    int l = P.l;
    std::vector<double> line(q);
    std::array<std::vector<double>, 3> coords;
    for (size_t c = 0; c < P.cells.size(); ++c) {
        const Cell& cell = P.cells[c];
        for (int a = 0; a < l; ++a) {
            coords[a].clear();
            double mid = 0.5 * (cell.lo[a] + cell.hi[a]), half = 0.5 * cell.edge(a);
            for (int k = 0; k < q; ++k) {
                double x = mid - half * std::cos(std::numbers::pi * k / (q - 1));
                if (k == 0) x = cell.lo[a];
                if (k == q - 1) x = cell.hi[a];
                coords[a].push_back(x);
            }
            // geometric ladder toward a cube-boundary face of the cell
            if (cell.lo[a] == -1.0)
                for (int j = 1; j <= 16; ++j)
                    coords[a].push_back(cell.lo[a] + cell.edge(a) * std::ldexp(1.0, -j));
            if (cell.hi[a] == 1.0)
                for (int j = 1; j <= 16; ++j)
                    coords[a].push_back(cell.hi[a] - cell.edge(a) * std::ldexp(1.0, -j));
        }
        std::array<size_t, 3> idx{0, 0, 0};
        std::array<double, 3> pt{0, 0, 0};
        while (true) {
            for (int a = 0; a < l; ++a) pt[a] = coords[a][idx[a]];
            visit(c, std::span<const double>(pt.data(), l));
            int a = 0;
            for (; a < l; ++a) {
                if (++idx[a] < coords[a].size()) break;
                idx[a] = 0;
            }
            if (a == l) break;
        }
    }
}

}  // namespace

double sup_error_ld(const SplineLD& sp, const FieldFn& f, int q) {
    if (q < 3) throw std::invalid_argument("sup_error_ld: q must be >= 3");
    double worst = 0.0;
    for_each_sample(sp, q, [&](size_t c, std::span<const double> pt) {
        worst = std::fmax(worst, std::fabs(f(pt) - sp.pieces()[c](pt)));
    });
    return worst;
}

double sup_abs_ld(const SplineLD& sp, const FieldFn& f, int q) {
    double worst = 0.0;
    for_each_sample(sp, q, [&](size_t, std::span<const double> pt) {
        worst = std::fmax(worst, std::fabs(f(pt)));
    });
    return worst;
}

double max_face_jump(const SplineLD& sp, int q) {
    const PartitionLD& P = sp.partition();
    int l = P.l;
    // nudge smaller than any cell edge so the located neighbor touches the face
    double min_edge = 2.0;
    for (const Cell& c : P.cells)
        for (int a = 0; a < l; ++a) min_edge = std::min(min_edge, c.edge(a));
    double delta = 1e-3 * min_edge;

    double worst = 0.0;
    std::array<double, 3> pt{0, 0, 0};
    std::array<std::vector<double>, 2> tang;
    for (size_t c = 0; c < P.cells.size(); ++c) {
        const Cell& cell = P.cells[c];
        for (int axis = 0; axis < l; ++axis)
            for (int side = 0; side < 2; ++side) {
                double x = side ? cell.hi[axis] : cell.lo[axis];
                if (x == -1.0 || x == 1.0) continue;  // cube boundary
                int t = 0;
                for (int a = 0; a < l; ++a) {
                    if (a == axis) continue;
                    tang[t].clear();
                    // strictly interior tangential samples
                    for (int k = 1; k <= q; ++k) {
                        double lam = static_cast<double>(k) / (q + 1);
                        tang[t].push_back(cell.lo[a] + cell.edge(a) * lam);
                    }
                    ++t;
                }
                std::array<size_t, 2> idx{0, 0};
                while (true) {
                    int tt = 0;
                    pt[axis] = x;
                    for (int a = 0; a < l; ++a) {
                        if (a == axis) continue;
                        pt[a] = tang[tt][idx[tt]];
                        ++tt;
                    }
                    std::array<double, 3> probe = pt;
                    probe[axis] = x + (side ? delta : -delta);
                    if (probe[axis] > -1.0 && probe[axis] < 1.0) {
                        size_t nb = locate_cell(P, std::span<const double>(probe.data(), l));
                        if (nb != c) {
                            double a_val = sp.pieces()[c](std::span<const double>(pt.data(), l));
                            double b_val = sp.pieces()[nb](std::span<const double>(pt.data(), l));
                            worst = std::fmax(worst, std::fabs(a_val - b_val));
                        }
                    }
                    int a2 = 0;
                    for (; a2 < l - 1; ++a2) {
                        if (++idx[a2] < tang[a2].size()) break;
                        idx[a2] = 0;
                    }
                    if (a2 == l - 1) break;
                }
            }
    }
    return worst;
}

}  // namespace locspline
