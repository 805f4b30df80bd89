#include "locspline/util.hpp"

#include <algorithm>
#include <cmath>

namespace locspline {

void gauss_solve(std::vector<double>& A, std::vector<double>& rhs, int n) {
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int row = col + 1; row < n; ++row)
            if (std::fabs(A[row * n + col]) > std::fabs(A[piv * n + col])) piv = row;
        if (std::fabs(A[piv * n + col]) < 1e-300)
            throw std::runtime_error("gauss_solve: singular system");
        if (piv != col) {
            for (int j = 0; j < n; ++j) std::swap(A[col * n + j], A[piv * n + j]);
            std::swap(rhs[col], rhs[piv]);
        }
        double inv = 1.0 / A[col * n + col];
        for (int row = col + 1; row < n; ++row) {
            double f = A[row * n + col] * inv;
            if (f == 0.0) continue;
            for (int j = col; j < n; ++j) A[row * n + j] -= f * A[col * n + j];
            rhs[row] -= f * rhs[col];
        }
    }
    for (int row = n - 1; row >= 0; --row) {
        double s = rhs[row];
        for (int j = row + 1; j < n; ++j) s -= A[row * n + j] * rhs[j];
        rhs[row] = s / A[row * n + row];
    }
}

namespace {

double golden_refine_abs(const std::vector<double>& c, double lo, double hi) {
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = lo, b = hi;
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double f1 = std::fabs(poly_eval(c, x1)), f2 = std::fabs(poly_eval(c, x2));
    for (int it = 0; it < 90 && b - a > 1e-16 * (1.0 + std::fabs(a) + std::fabs(b)); ++it) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + gr * (b - a);
            f2 = std::fabs(poly_eval(c, x2));
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - gr * (b - a);
            f1 = std::fabs(poly_eval(c, x1));
        }
    }
    return std::max(f1, f2);
}

}  // namespace

double max_abs_on_interval(const std::vector<double>& coeffs, double a, double b, int scan_points) {
    double best = std::max(std::fabs(poly_eval(coeffs, a)), std::fabs(poly_eval(coeffs, b)));
    std::vector<double> vals(scan_points);
    for (int i = 0; i < scan_points; ++i) {
        double x = a + (b - a) * i / (scan_points - 1);
        vals[i] = std::fabs(poly_eval(coeffs, x));
        best = std::max(best, vals[i]);
    }
    for (int i = 1; i + 1 < scan_points; ++i) {
        if (vals[i] >= vals[i - 1] && vals[i] >= vals[i + 1]) {
            double lo = a + (b - a) * (i - 1) / (scan_points - 1);
            double hi = a + (b - a) * (i + 1) / (scan_points - 1);
            best = std::max(best, golden_refine_abs(coeffs, lo, hi));
        }
    }
    return best;
}

}  // namespace locspline
