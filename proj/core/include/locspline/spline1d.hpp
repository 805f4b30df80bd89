#pragma once

#include <functional>
#include <vector>

#include "locspline/cheb1d.hpp"
#include "locspline/mesh1d.hpp"

namespace locspline {

/// Continuous local spline: per-interval Chebyshev interpolants with
/// endpoint-anchored nodes, so neighbors share their junction node.
class Spline1D {
  public:
    const Mesh1D& mesh() const { return mesh_; }
    const std::vector<Interpolant1D>& pieces() const { return pieces_; }
    int s() const { return s_; }
    /// Distinct interpolation points; equals (s-1)*intervals + 1.
    size_t node_count() const { return node_count_; }

    /// Locates the interval by binary search (ties to the left interval)
    /// and evaluates its local polynomial.  t must lie in [-1,1].
    double operator()(double t) const;

  private:
    friend Spline1D build_spline1d(const std::function<double(double)>&, const Mesh1D&, int);
    Mesh1D mesh_;
    std::vector<Interpolant1D> pieces_;
    int s_ = 0;
    size_t node_count_ = 0;
};

Spline1D build_spline1d(const std::function<double(double)>& f, const Mesh1D& mesh, int s);

double eval_spline1d(const Spline1D& sp, double t);

/// Sampled sup-norm of f - spline: q Chebyshev-distributed points per
/// interval including both endpoints, plus a geometric ladder toward +-1
/// inside the two boundary intervals (the error peaks there).
/// Nested for sample counts with (q-1) | (q'-1), hence monotone in q there.
double sup_error(const Spline1D& sp, const std::function<double(double)>& f, int q = 33);

}  // namespace locspline
