#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "locspline/class_spec.hpp"

namespace locspline {

/// Axis-aligned box of a layered partition of [-1,1]^l.
struct Cell {
    std::array<double, 3> lo{0, 0, 0};
    std::array<double, 3> hi{0, 0, 0};
    int dim = 0;
    int layer = 0;
    /// Per-axis rank of the lower corner among the layer's distinct cell
    /// boundary coordinates for that axis.
    std::array<int, 3> i_ids{0, 0, 0};
    /// Per-axis subdivision index inside the pre-subdivision cell
    /// (independent variant); zeros in the aligned variant.
    std::array<int, 3> j_ids{0, 0, 0};

    double edge(int axis) const { return hi[axis] - lo[axis]; }
    double volume() const {
        double v = 1.0;
        for (int a = 0; a < dim; ++a) v *= edge(a);
        return v;
    }
    bool contains(std::span<const double> t) const {
        for (int a = 0; a < dim; ++a)
            if (t[a] < lo[a] || t[a] > hi[a]) return false;
        return true;
    }
    std::array<double, 3> center() const {
        std::array<double, 3> c{0, 0, 0};
        for (int a = 0; a < dim; ++a) c[a] = 0.5 * (lo[a] + hi[a]);
        return c;
    }
};

enum class PartitionVariant { Independent, Aligned };

/// Cell subdivision schedules, named by role:
///   GradedLog      - integer-gamma log classes, v <= l/(l-1) upper bound,
///   GradedLogFrac  - fractional-gamma log classes, same regime,
///   Unit           - no subdivision (v > l/(l-1) upper bounds),
///   BumpCrit       - lower-bound bump schedule at v = l/(l-1), weights ln^{u-1},
///   BumpCritFrac   - same with ln^u weights (fractional-gamma classes).
enum class ScheduleLD { GradedLog, GradedLogFrac, Unit, BumpCrit, BumpCritFrac };

const char* to_string(ScheduleLD s);
ScheduleLD schedule_ld_from_string(const std::string& s);

/// Tensor sub-grid of one face slab of a layer (or of the central box when
/// axis == -1); cells of the slab are stored contiguously, axis-0 fastest.
struct SlabGrid {
    int axis = -1;
    int sign = +1;
    std::array<std::vector<double>, 3> bps;
    std::array<int, 3> counts{1, 1, 1};
    int M = 1;  ///< per-axis subdivision factor behind counts (independent)
    size_t cell_offset = 0;
};

struct PartitionLD {
    int l = 2;
    int N = 0;
    double v = 0.0;
    PartitionVariant variant = PartitionVariant::Independent;
    std::vector<int> schedule;
    std::string schedule_name;

    /// Layer thresholds on the boundary distance: d_0 = 0 < ... < d_L = 1;
    /// layer k is the frame d_k <= d(t,Gamma) <= d_{k+1}; the last layer is
    /// the solid central box.
    std::vector<double> d_radii;
    std::vector<double> half_widths;  ///< w_k = 1 - d_k
    std::vector<double> h_layer;      ///< h_k = w_k - w_{k+1}

    std::vector<Cell> cells;
    std::vector<std::vector<SlabGrid>> layer_grids;
    std::vector<std::pair<size_t, size_t>> layer_cell_range;  ///< [begin,end) per layer
    /// Aligned variant: per-layer axis breakpoint ladder on [-w_k, w_k].
    std::vector<std::vector<double>> ladders;
    long central_cell = -1;
    bool merged_core = false;  ///< a degenerate thin-core layer was absorbed

    int layer_count() const { return static_cast<int>(d_radii.size()) - 1; }
    int central_layer() const { return layer_count() - 1; }
};

/// Layer thresholds (k/N)^v, with the last entry exactly 1.
std::vector<double> standard_radii(int N, double v);

/// Index k with (k/N)^v <= d(t,Gamma) <= ((k+1)/N)^v; boundary distances
/// are assigned to the lower k.
int layer_index(std::span<const double> t, int N, double v);
int layer_index_from_distance(double d, const std::vector<double>& d_radii);

/// Independent-variant pre-subdivision cells of one layer: 2l face slabs with
/// all edges in [h_k, 2h_k); the last layer is the solid central box (kept
/// whole, its edge equals 2 h_k exactly).  A frame whose core is thinner than
/// h_k/2 is returned merged into the central box.
std::vector<Cell> decompose_layer(int k, int N, double v, int l);

/// Equal M^l grid split of a cell.
std::vector<Cell> subdivide_cell(const Cell& cell, int M);

/// Per-layer subdivision counts M_0..M_{N-1} for dimension-l constructions.
std::vector<int> schedule_ld(const FunctionClassSpec& spec, const DerivedParams& dp, int N,
                             ScheduleLD schedule);

/// Full partition of [-1,1]^l over the standard graded radii.
PartitionLD decompose_domain(int N, double v, int l, std::span<const int> schedule,
                             PartitionVariant variant);

/// Same over caller-provided distance thresholds (first 0, last 1, strictly
/// increasing); used by the width lower-bound meshes.
PartitionLD decompose_from_radii(std::vector<double> d_radii, int l,
                                 std::span<const int> schedule, PartitionVariant variant,
                                 int N_bookkeeping, double v_bookkeeping);

/// Index of the cell containing t (ties: lower layer, then lexicographically
/// first cell).  Throws if t is outside the cube.
size_t locate_cell(const PartitionLD& p, std::span<const double> t);

/// All cells whose closed box contains t, ascending by cell index.
void locate_cells_containing(const PartitionLD& p, std::span<const double> t,
                             std::vector<size_t>& out);

struct CellCount {
    size_t n = 0;
    double ratio = 0.0;  ///< n / regime-predicted growth term
    std::string regime;
};
CellCount count_cells(const PartitionLD& p);

struct TilingReport {
    bool ok = false;
    double volume = 0.0;
    double volume_rel_err = 0.0;
    std::string detail;
};
TilingReport check_tiling(const PartitionLD& p);

struct EdgeWindowReport {
    bool ok = false;
    double worst_low = 1.0;   ///< min over cells of edge / lower-window bound
    double worst_high = 0.0;  ///< max over cells of edge / upper-window bound
    std::string detail;
};
/// Independent variant: pre-subdivision edges (edge * M_k) must lie in
/// [h_k, 2 h_k); aligned variant: final edges must lie in [h*_k, 2 h*_k].
/// The solid central box is checked against its exact-identity edge 2 h.
EdgeWindowReport check_edge_window(const PartitionLD& p);

struct ConformityReport {
    bool ok = false;
    size_t face_pairs = 0;
    std::string detail;
};
/// Aligned variant: every shared face between adjacent cells must be a full
/// face of at least one of them, and interlayer ladders must nest.
ConformityReport check_conformity(const PartitionLD& p);

/// Line-oriented text dump: `k i-ids j-ids a_1 b_1 ... a_l b_l` per cell,
/// 17-significant-digit decimals.
void dump_partition(const PartitionLD& p, std::ostream& os);

}  // namespace locspline
