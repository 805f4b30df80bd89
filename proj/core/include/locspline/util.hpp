#pragma once

#include <cmath>
#include <cstdint>
#include <cstring>
#include <span>
#include <stdexcept>
#include <vector>

namespace locspline {

/// Ceiling with a small downward nudge so that values computed a hair above
/// an exact integer (fp drift in pow/log chains) do not get rounded up twice.
/// Result is clamped to be at least 1.
inline int ceil_guard(double x) {
    double nudged = x - 1e-12 * std::fmax(1.0, std::fabs(x));
    int c = static_cast<int>(std::ceil(nudged));
    return c < 1 ? 1 : c;
}

/// j-th of n+1 equally spaced points on [a,b], exact at both endpoints.
inline double lerp_exact(double a, double b, int j, int n) {
    if (j <= 0) return a;
    if (j >= n) return b;
    return ((n - j) * a + j * b) / n;
}

/// Splits [a,b] into n equal pieces; returns the n+1 breakpoints.
inline std::vector<double> split_equal(double a, double b, int n) {
    std::vector<double> pts(n + 1);
    for (int j = 0; j <= n; ++j) pts[j] = lerp_exact(a, b, j, n);
    return pts;
}

/// Dense in-place Gaussian elimination with partial pivoting; A is n x n
/// row-major, rhs length n. Throws on (numerically) singular systems.
void gauss_solve(std::vector<double>& A, std::vector<double>& rhs, int n);

/// Maximum of |f| over [a,b]: dense scan followed by golden-section polish
/// around the best local maxima.
double max_abs_on_interval(const std::vector<double>& coeffs, double a, double b,
                           int scan_points = 513);

/// Evaluates a power-basis polynomial sum c[i] x^i by Horner's rule.
inline double poly_eval(const std::vector<double>& c, double x) {
    double v = 0.0;
    for (size_t i = c.size(); i-- > 0;) v = v * x + c[i];
    return v;
}

/// Derivative of a power-basis polynomial.
inline std::vector<double> poly_derivative(const std::vector<double>& c) {
    if (c.size() <= 1) return {0.0};
    std::vector<double> d(c.size() - 1);
    for (size_t i = 1; i < c.size(); ++i) d[i - 1] = c[i] * static_cast<double>(i);
    return d;
}

/// Bitwise hash key for a point with up to 3 coordinates, for exact node
/// deduplication (coordinates of shared nodes are bitwise identical by
/// construction).
struct PointKey {
    uint64_t bits[3] = {0, 0, 0};
    int dim = 0;
    bool operator==(const PointKey& o) const {
        return dim == o.dim && bits[0] == o.bits[0] && bits[1] == o.bits[1] &&
               bits[2] == o.bits[2];
    }
};

inline PointKey make_point_key(std::span<const double> t) {
    PointKey k;
    k.dim = static_cast<int>(t.size());
    for (int i = 0; i < k.dim; ++i) std::memcpy(&k.bits[i], &t[i], sizeof(double));
    return k;
}

struct PointKeyHash {
    size_t operator()(const PointKey& k) const {
        uint64_t h = 1469598103934665603ull;
        for (int i = 0; i < k.dim; ++i) {
            h ^= k.bits[i];
            h *= 1099511628211ull;
        }
        return static_cast<size_t>(h ^ static_cast<uint64_t>(k.dim));
    }
};

}  // namespace locspline
