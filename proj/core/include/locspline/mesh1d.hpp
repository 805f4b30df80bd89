#pragma once

#include <string>
#include <vector>

#include "locspline/class_spec.hpp"

namespace locspline {

/// 1D graded-mesh variants, named by their boundary-layer subdivision rule:
///   EdgeLog      - only the boundary layer is split, into ceil(ln N) parts
///                  (integer-gamma log classes, u = 1),
///   LayerLog     - M_0 = ceil(ln^{u/r} N), M_k = ceil(ln^{(u-1)/s}(N/k))
///                  (integer-gamma log classes, u >= 2),
///   LayerLogFrac - M_0 = ceil(ln^{u/(r+1-mu)} N), M_k = ceil(ln^{u/s} N)
///                  (fractional-gamma log classes).
enum class Mesh1DVariant { EdgeLog, LayerLog, LayerLogFrac };

const char* to_string(Mesh1DVariant v);
Mesh1DVariant mesh1d_variant_from_string(const std::string& s);

enum class Side { Left, Right };

struct Interval1D {
    double a, b;
    Side side;
    int layer;  ///< graded layer k (0 = boundary layer)
    int sub;    ///< subinterval index within the layer, 0..M_k-1
};

struct Mesh1D {
    std::vector<double> breakpoints;  ///< ascending, first = -1, last = +1
    std::vector<Interval1D> intervals;
    Mesh1DVariant variant;
    int N = 0;
    FunctionClassSpec spec;
    DerivedParams derived;
    std::vector<int> schedule;  ///< M_0..M_{N-1}
};

/// Graded breakpoints t_k = -1 + (k/N)^v (left) or 1 - (k/N)^v (right,
/// descending).  The k = N point is exactly 0 so the two halves share a seam.
std::vector<double> graded_points(int N, double v, Side side);

struct Schedule1D {
    std::vector<int> M;
    bool flagged = false;  ///< degenerate-parameter warning (e.g. u=1 with LayerLog)
    std::string note;
};

/// Per-layer subdivision counts M_0..M_{N-1} for the variant.
Schedule1D subdivision_counts(const FunctionClassSpec& spec, const DerivedParams& dp, int N,
                              Mesh1DVariant variant);

/// Full graded mesh of [-1,1]: each layer interval split into M_k equal parts.
Mesh1D build_mesh1d(const FunctionClassSpec& spec, int N, Mesh1DVariant variant);

}  // namespace locspline
