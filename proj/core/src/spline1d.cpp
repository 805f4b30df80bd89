#include "locspline/spline1d.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <unordered_set>

#include "locspline/util.hpp"

namespace locspline {

Spline1D build_spline1d(const std::function<double(double)>& f, const Mesh1D& mesh, int s) {
    if (s < 2) throw std::invalid_argument("build_spline1d: s must be >= 2");
    Spline1D sp;
    sp.mesh_ = mesh;
    sp.s_ = s;
    sp.pieces_.reserve(mesh.intervals.size());
    for (const Interval1D& iv : mesh.intervals)
        sp.pieces_.push_back(Interpolant1D::fit(f, iv.a, iv.b, s));

    std::unordered_set<PointKey, PointKeyHash> seen;
    for (const Interpolant1D& p : sp.pieces_)
        for (double x : p.nodes()) seen.insert(make_point_key(std::span<const double>(&x, 1)));
    sp.node_count_ = seen.size();
    return sp;
}

double Spline1D::operator()(double t) const {
    if (t < -1.0 || t > 1.0) throw std::invalid_argument("spline eval: t outside [-1,1]");
    const std::vector<double>& bp = mesh_.breakpoints;
    // first index i with bp[i+1] >= t; ties at a breakpoint go to the left interval
    auto it = std::lower_bound(bp.begin() + 1, bp.end(), t);
    size_t idx = static_cast<size_t>(it - bp.begin()) - 1;
    if (idx >= pieces_.size()) idx = pieces_.size() - 1;
    return pieces_[idx](t);
}

double eval_spline1d(const Spline1D& sp, double t) { return sp(t); }

double sup_error(const Spline1D& sp, const std::function<double(double)>& f, int q) {
    if (q < 3) throw std::invalid_argument("sup_error: q must be >= 3");
    double worst = 0.0;
    const auto& intervals = sp.mesh().intervals;
    for (size_t i = 0; i < intervals.size(); ++i) {
        const Interval1D& iv = intervals[i];
        const Interpolant1D& p = sp.pieces()[i];
        double mid = 0.5 * (iv.a + iv.b), half = 0.5 * (iv.b - iv.a);
        for (int k = 0; k < q; ++k) {
            double x = mid - half * std::cos(std::numbers::pi * k / (q - 1));
            if (k == 0) x = iv.a;
            if (k == q - 1) x = iv.b;
            worst = std::fmax(worst, std::fabs(f(x) - p(x)));
        }
        bool first = (i == 0), last = (i + 1 == intervals.size());
        if (first || last) {
            double len = iv.b - iv.a;
            for (int j = 1; j <= 40; ++j) {
                double off = len * std::ldexp(1.0, -j);
                if (off <= 0.0) break;
                double x = first ? iv.a + off : iv.b - off;
                worst = std::fmax(worst, std::fabs(f(x) - p(x)));
            }
        }
    }
    return worst;
}

}  // namespace locspline
