#pragma once

#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

namespace locspline {

/// Zeros of the degree-s Chebyshev polynomial of the first kind, ascending.
/// Computed via sin so the set is exactly symmetric about 0.
std::vector<double> chebyshev_zeros(int s);

/// Affine image of the zeros with [zeta_1, zeta_s] mapped onto [a,b]:
/// the first node lands exactly on a and the last exactly on b.
/// For s = 1 the single node is the midpoint.
std::vector<double> map_nodes(int s, double a, double b);

/// Polynomial interpolant of degree s-1 on s nodes, evaluated with the
/// second barycentric formula.
class Interpolant1D {
  public:
    /// Interpolation at the endpoint-anchored mapped nodes.
    static Interpolant1D fit(const std::function<double(double)>& f, double a, double b, int s);
    /// Interpolation at the raw Chebyshev zeros of degree s on [-1,1]
    /// (the classical operator appearing in the W^r error bound).
    static Interpolant1D fit_at_zeros(const std::function<double(double)>& f, int s);
    /// Interpolation at caller-provided strictly increasing nodes.
    static Interpolant1D from_nodes(std::vector<double> nodes, std::vector<double> values,
                                    double a, double b);

    double operator()(double t) const;
    /// False when t is outside [a,b]; evaluation there is extrapolation.
    bool inside(double t) const { return t >= a_ && t <= b_; }

    double a() const { return a_; }
    double b() const { return b_; }
    int s() const { return static_cast<int>(nodes_.size()); }
    std::span<const double> nodes() const { return nodes_; }
    std::span<const double> values() const { return values_; }

  private:
    double a_ = -1.0, b_ = 1.0;
    std::vector<double> nodes_, values_, weights_;
};

/// Lebesgue constant of the anchored node set on [a,b], as the max of the
/// Lebesgue function over a uniform grid of `samples` points
/// (default 10 s^2 + 1).  Affine-invariant by construction; 1 for s <= 2.
double lebesgue_constant(int s, int samples = 0, double a = -1.0, double b = 1.0);

struct minimax_error : std::runtime_error {
    minimax_error(const std::string& msg, double lo, double hi)
        : std::runtime_error(msg), bracket_lo(lo), bracket_hi(hi) {}
    double bracket_lo, bracket_hi;  ///< levelled reference error / grid max at the last iterate
};

/// Best uniform approximation error of f on [a,b] by polynomials of degree
/// <= d: discrete exchange iteration on a 2049-point Chebyshev-distributed
/// grid, refined once around the equioscillation points.
/// Throws minimax_error (with the last bracket) if the exchange stalls.
double minimax_oracle(const std::function<double(double)>& f, double a, double b, int degree,
                      double tol = 1e-9);

}  // namespace locspline
