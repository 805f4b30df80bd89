#pragma once

#include <span>
#include <string>
#include <vector>

#include "locspline/class_spec.hpp"
#include "locspline/mesh_ld.hpp"

namespace locspline {

/// Compactly supported polynomial bump on a cell:
///   phi(t) = A * W * prod_i ((t_i - a_i)(b_i - t_i))^s / D,
/// zero outside the cell, with layer weight W and denominator D chosen per
/// construction; A is calibrated so every order-s derivative satisfies the
/// target bound.
struct Bump {
    Cell cell;
    int s = 0;
    double amplitude = 1.0;    ///< A
    double weight = 1.0;       ///< W
    double denom = 1.0;        ///< D
    double deriv_bound = 1.0;  ///< calibration target for |D^v phi|, |v| = s

    double value(std::span<const double> t) const;
    /// phi attains its maximum at the cell center.
    double max_value() const;
    /// |D^v phi| at t via exact differentiation of the polynomial factor.
    double derivative_abs(std::span<const double> t, std::span<const int> v) const;
};

/// max_{[0,1]} |d^j/dy^j (y(1-y))^s|; cached universal constants used by the
/// exact amplitude calibration.
double bump_profile_derivative_max(int s, int j);

/// A = bound * D / (W * max_{|v|=s} prod_i edge_i^{2s-v_i} c_{s,v_i}).
double calibrate_amplitude(const Cell& cell, int s, double weight, double denom,
                           double deriv_bound);

/// Layer bump with the graded-mesh weight
///   W = (1 + |ln z|^{ln_power}) / z^{v*gamma},  z = ((k+1)/N)^v,
/// denominator (h_k/M_k)^{(2l-1)s} and derivative target
///   (1 + |ln z|^{ln_power}) / z^{v(s-r)}.
Bump bump_layer(const Cell& cell, int k, int N, double v, int s, int l, int M_k, double gamma,
                int r, int ln_power);

/// Interior bump: unit weight, denominator h^{(2l-1)s}, target |D^s phi| <= 1.
Bump bump_interior(const Cell& cell, int s, int l, double h);

/// Largest sampled ratio |D^v phi| / bound over order-s multi-indices on a
/// grid_per_axis^l cell grid; <= 1 + 1e-6 for a calibrated bump.
double bump_compliance(const Bump& b, int grid_per_axis = 17);

/// Layer radii rho_k solving (rho_k - rho_{k-1})^s / rho_k^gamma = T with
/// T = N^{-s} ln^{u-1} N, starting from rho_0 = N^{-v}; stops at the last
/// root <= 1.
struct RhoMesh {
    std::vector<double> rho;  ///< rho_0..rho_m
    int m = 0;
    std::vector<double> residuals;  ///< |phi(rho_k) - T| / T, k = 1..m
    double target = 0.0;
};

RhoMesh rho_sequence(int N, int s, double gamma, int u);

/// Lower-bound construction families:
///   CritInt/CritFrac   - graded radii at v = l/(l-1), subdivided cells,
///                        ln^{u-1} / ln^u layer weights,
///   SteepInt/SteepFrac - rho-mesh radii for v > l/(l-1), boundary-layer
///                        weight N^{v gamma} ln^{u-1} N / ln^u N.
enum class WidthsFamily { CritInt, CritFrac, SteepInt, SteepFrac };

const char* to_string(WidthsFamily f);
WidthsFamily widths_family_from_string(const std::string& s);

struct LowerBoundEstimate {
    size_t n = 0;       ///< number of bumps (disjoint supports)
    double eps_N = 0.0; ///< min over bumps of the guaranteed center amplitude
    double max_compliance = 0.0;
    std::vector<Bump> bumps;
    PartitionLD partition;
    // rho-mesh diagnostics (Steep families)
    int rho_m = 0;
    double rho_max_residual = 0.0;
};

LowerBoundEstimate lower_bound_estimate(const FunctionClassSpec& spec, int N, int l,
                                        WidthsFamily family);

struct SignPatternRecord {
    bool ok = false;
    size_t checked = 0;
    double min_abs = 0.0;  ///< min |xi(center)| over bumps with C != 0
    std::string detail;
};

/// Verifies that xi = sum C_b phi_b realizes the requested sign pattern at
/// the bump centers with margin eps_N * |C_b| (supports are disjoint).
SignPatternRecord sign_pattern_check(const std::vector<Bump>& bumps,
                                     std::span<const double> coeffs);

}  // namespace locspline
