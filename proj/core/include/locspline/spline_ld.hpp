#pragma once

#include <functional>
#include <span>
#include <vector>

#include "locspline/mesh_ld.hpp"

namespace locspline {

using FieldFn = std::function<double(std::span<const double>)>;

/// Tensor-product polynomial on a cell: endpoint-anchored Chebyshev nodes per
/// axis, degree nodes-1 per variable, evaluated by iterated barycentric
/// interpolation.
class InterpolantLD {
  public:
    static InterpolantLD fit(const FieldFn& f, const Cell& cell, int nodes_per_dim);

    double operator()(std::span<const double> t) const;
    const Cell& cell() const { return cell_; }
    int nodes_per_dim() const { return nd_; }
    std::span<const double> axis_nodes(int a) const { return nodes_[a]; }
    /// Mutable node values (row-major, axis 0 fastest); used by the gluing.
    std::vector<double>& values() { return values_; }
    const std::vector<double>& values() const { return values_; }
    /// Grid point coordinates of node index (i_0..i_{l-1}).
    void node_point(std::span<const int> idx, std::span<double> out) const;

  private:
    Cell cell_;
    int nd_ = 0;
    std::array<std::vector<double>, 3> nodes_;
    std::array<std::vector<double>, 3> weights_;
    std::vector<double> values_;
};

InterpolantLD tensor_interpolate(const FieldFn& f, const Cell& cell, int s);

/// Local spline over a PartitionLD: independent per-cell interpolants
/// (discontinuous variant) or the glued continuous variant, where node values
/// on faces shared with already-fitted cells are overwritten by the fitted
/// neighbor's polynomial (center-out over layers, lexicographic within one).
class SplineLD {
  public:
    const PartitionLD& partition() const { return *partition_; }
    const std::vector<InterpolantLD>& pieces() const { return pieces_; }
    bool continuous() const { return continuous_; }
    int nodes_per_dim() const { return nd_; }
    /// Distinct interpolation points over all cells.
    size_t node_count() const { return node_count_; }

    double operator()(std::span<const double> t) const;

  private:
    friend SplineLD build_spline_ld(const FieldFn&, const PartitionLD&, int, bool);
    std::shared_ptr<const PartitionLD> partition_;
    std::vector<InterpolantLD> pieces_;
    bool continuous_ = false;
    int nd_ = 0;
    size_t node_count_ = 0;
};

/// s nodes per dimension (callers apply the s+1 switch for fractional-gamma
/// classes with s = r+1 by passing s+1).
SplineLD build_spline_ld(const FieldFn& f, const PartitionLD& partition, int s, bool continuous);

double eval_spline_ld(const SplineLD& sp, std::span<const double> t);

/// Deterministic sampled sup-norm: q^l Chebyshev-distributed points per cell
/// plus the cell vertices; cells touching the cube boundary get an extra
/// geometric ladder toward each boundary face.
double sup_error_ld(const SplineLD& sp, const FieldFn& f, int q = 9);

/// Max sampled |f| over the same deterministic sample set.
double sup_abs_ld(const SplineLD& sp, const FieldFn& f, int q = 9);

/// Largest jump of the spline across interior cell faces, sampled on a
/// tangential grid per face; the neighbor polynomial is evaluated at the
/// exact face point.
double max_face_jump(const SplineLD& sp, int q = 5);

}  // namespace locspline
