#include "locspline/cheb1d.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "locspline/util.hpp"

namespace locspline {

namespace {

/// Barycentric weights for an arbitrary (small) node set, computed on the
/// given nodes directly.  Affine rescaling multiplies all weights by a common
/// factor, which cancels in the barycentric ratio, so reference-interval
/// weights are reused for mapped nodes.
std::vector<double> bary_weights(const std::vector<double>& nodes) {
    size_t n = nodes.size();
    std::vector<double> w(n, 1.0);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            if (j != i) w[i] /= (nodes[i] - nodes[j]);
    return w;
}

}  // namespace

std::vector<double> chebyshev_zeros(int s) {
    if (s < 1) throw std::invalid_argument("chebyshev_zeros: s must be >= 1");
    std::vector<double> z(s);
    for (int k = 1; k <= s; ++k)
        z[k - 1] = std::sin(std::numbers::pi * (2 * k - s - 1) / (2.0 * s));
    return z;
}

std::vector<double> map_nodes(int s, double a, double b) {
    if (!(a < b)) throw std::invalid_argument("map_nodes: requires a < b");
    std::vector<double> z = chebyshev_zeros(s);
    if (s == 1) return {0.5 * (a + b)};
    double lo = z.front(), hi = z.back();
    std::vector<double> out(s);
    out.front() = a;
    out.back() = b;
    for (int i = 1; i + 1 < s; ++i) {
        double lam = (z[i] - lo) / (hi - lo);
        out[i] = a + (b - a) * lam;
    }
    return out;
}

Interpolant1D Interpolant1D::from_nodes(std::vector<double> nodes, std::vector<double> values,
                                        double a, double b) {
    if (nodes.empty() || nodes.size() != values.size())
        throw std::invalid_argument("Interpolant1D: node/value size mismatch");
    for (size_t i = 0; i + 1 < nodes.size(); ++i)
        if (!(nodes[i] < nodes[i + 1]))
            throw std::invalid_argument("Interpolant1D: nodes must be strictly increasing");
    for (size_t i = 0; i < values.size(); ++i)
        if (!std::isfinite(values[i])) {
            std::ostringstream msg;
            msg << "Interpolant1D: non-finite value at node " << nodes[i];
            throw std::invalid_argument(msg.str());
        }
    Interpolant1D p;
    p.a_ = a;
    p.b_ = b;
    // weights on nodes normalized to [-1,1] to keep products well-scaled
    double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    std::vector<double> ref(nodes.size());
    for (size_t i = 0; i < nodes.size(); ++i)
        ref[i] = half > 0.0 ? (nodes[i] - mid) / half : nodes[i];
    p.weights_ = bary_weights(ref);
    p.nodes_ = std::move(nodes);
    p.values_ = std::move(values);
    return p;
}

Interpolant1D Interpolant1D::fit(const std::function<double(double)>& f, double a, double b,
                                 int s) {
    std::vector<double> nodes = map_nodes(s, a, b);
    std::vector<double> values(nodes.size());
    for (size_t i = 0; i < nodes.size(); ++i) values[i] = f(nodes[i]);
    return from_nodes(std::move(nodes), std::move(values), a, b);
}

Interpolant1D Interpolant1D::fit_at_zeros(const std::function<double(double)>& f, int s) {
    std::vector<double> nodes = chebyshev_zeros(s);
    std::vector<double> values(nodes.size());
    for (size_t i = 0; i < nodes.size(); ++i) values[i] = f(nodes[i]);
    return from_nodes(std::move(nodes), std::move(values), -1.0, 1.0);
}

double Interpolant1D::operator()(double t) const {
    size_t n = nodes_.size();
    if (n == 1) return values_[0];
    double mid = 0.5 * (a_ + b_), half = 0.5 * (b_ - a_);
    double x = half > 0.0 ? (t - mid) / half : t;
    double num = 0.0, den = 0.0;
    for (size_t i = 0; i < n; ++i) {
        double xref = half > 0.0 ? (nodes_[i] - mid) / half : nodes_[i];
        double dx = x - xref;
        if (t == nodes_[i] || dx == 0.0) return values_[i];
        double q = weights_[i] / dx;
        num += q * values_[i];
        den += q;
    }
    return num / den;
}

double lebesgue_constant(int s, int samples, double a, double b) {
    if (s < 1) throw std::invalid_argument("lebesgue_constant: s must be >= 1");
    if (s == 1) return 1.0;
    if (samples <= 1) samples = 10 * s * s + 1;
    std::vector<double> nodes = map_nodes(s, a, b);
    double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    std::vector<double> ref(nodes.size());
    for (size_t i = 0; i < nodes.size(); ++i) ref[i] = (nodes[i] - mid) / half;
    std::vector<double> w = bary_weights(ref);

    double lmax = 1.0;
    for (int k = 0; k < samples; ++k) {
        double x = -1.0 + 2.0 * k / (samples - 1);
        double den = 0.0, absnum = 0.0;
        bool hit = false;
        for (size_t i = 0; i < ref.size(); ++i) {
            double dx = x - ref[i];
            if (dx == 0.0) {
                hit = true;
                break;
            }
            double q = w[i] / dx;
            den += q;
            absnum += std::fabs(q);
        }
        if (hit) continue;  // Lebesgue function equals 1 at nodes
        lmax = std::fmax(lmax, absnum / std::fabs(den));
    }
    return lmax;
}

namespace {

struct RemezState {
    std::vector<double> coeffs;  // Chebyshev-basis coefficients on [a,b]
    double level = 0.0;          // levelled reference error
};

double cheb_basis_eval(const std::vector<double>& c, double x01) {
    // Clenshaw on x01 in [-1,1]
    double b1 = 0.0, b2 = 0.0;
    for (size_t i = c.size(); i-- > 1;) {
        double t = 2.0 * x01 * b1 - b2 + c[i];
        b2 = b1;
        b1 = t;
    }
    return x01 * b1 - b2 + c[0];
}

RemezState remez_solve(const std::function<double(double)>& f, double a, double b,
                       const std::vector<double>& refpts, int degree) {
    int n = degree + 2;
    double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    std::vector<double> A(n * n), rhs(n);
    for (int i = 0; i < n; ++i) {
        double x01 = (refpts[i] - mid) / half;
        double t0 = 1.0, t1 = x01;
        for (int j = 0; j <= degree; ++j) {
            double tj = (j == 0) ? 1.0 : (j == 1 ? x01 : 2.0 * x01 * t1 - t0);
            if (j >= 2) {
                t0 = t1;
                t1 = tj;
            }
            A[i * n + j] = tj;
        }
        A[i * n + degree + 1] = (i % 2 == 0) ? 1.0 : -1.0;
        rhs[i] = f(refpts[i]);
    }
    gauss_solve(A, rhs, n);
    RemezState st;
    st.coeffs.assign(rhs.begin(), rhs.begin() + degree + 1);
    st.level = std::fabs(rhs[degree + 1]);
    return st;
}

/// Picks degree+2 alternating-sign local extrema of the error on the grid.
std::vector<double> pick_reference(const std::vector<double>& grid,
                                   const std::vector<double>& err, int degree) {
    struct Cand {
        double x, e;
    };
    std::vector<Cand> cands;
    size_t i = 0;
    while (i < grid.size()) {
        if (err[i] == 0.0) {
            ++i;
            continue;
        }
        bool pos = err[i] > 0.0;
        size_t best = i;
        while (i < grid.size() && (err[i] == 0.0 || (err[i] > 0.0) == pos)) {
            if (std::fabs(err[i]) > std::fabs(err[best])) best = i;
            ++i;
        }
        cands.push_back({grid[best], err[best]});
    }
    int need = degree + 2;
    if (static_cast<int>(cands.size()) < need) return {};
    while (static_cast<int>(cands.size()) > need) {
        size_t worst = 0;
        for (size_t k = 1; k < cands.size(); ++k)
            if (std::fabs(cands[k].e) < std::fabs(cands[worst].e)) worst = k;
        if (worst == 0 || worst + 1 == cands.size()) {
            cands.erase(cands.begin() + worst);
        } else {
            // removing an interior candidate merges two same-sign runs;
            // drop the weaker neighbor to keep the signs alternating
            size_t nb = std::fabs(cands[worst - 1].e) < std::fabs(cands[worst + 1].e)
                            ? worst - 1
                            : worst + 1;
            size_t hi = std::max(worst, nb), lo = std::min(worst, nb);
            cands.erase(cands.begin() + hi);
            cands.erase(cands.begin() + lo);
        }
    }
    std::vector<double> out(cands.size());
    for (size_t k = 0; k < cands.size(); ++k) out[k] = cands[k].x;
    return out;
}

double run_exchange(const std::function<double(double)>& f, double a, double b, int degree,
                    double tol, const std::vector<double>& grid, std::vector<double>& refpts,
                    int max_iter) {
    double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double gmax = 0.0, level = 0.0;
    for (int iter = 0; iter < max_iter; ++iter) {
        RemezState st = remez_solve(f, a, b, refpts, degree);
        level = st.level;
        std::vector<double> err(grid.size());
        gmax = 0.0;
        for (size_t i = 0; i < grid.size(); ++i) {
            err[i] = cheb_basis_eval(st.coeffs, (grid[i] - mid) / half) - f(grid[i]);
            gmax = std::fmax(gmax, std::fabs(err[i]));
        }
        if (gmax <= 1e-14 * (1.0 + level)) return gmax;  // exact reproduction
        if (gmax - level <= tol * std::fmax(gmax, 1e-300)) return gmax;
        std::vector<double> next = pick_reference(grid, err, degree);
        if (next.empty() || next == refpts) return gmax;
        refpts = std::move(next);
    }
    throw minimax_error("minimax_oracle: exchange did not converge", level, gmax);
}

}  // namespace

double minimax_oracle(const std::function<double(double)>& f, double a, double b, int degree,
                      double tol) {
    if (!(a < b)) throw std::invalid_argument("minimax_oracle: requires a < b");
    if (degree < 0) throw std::invalid_argument("minimax_oracle: degree must be >= 0");
    double mid = 0.5 * (a + b), half = 0.5 * (b - a);

    const int G = 2049;
    std::vector<double> grid(G);
    for (int i = 0; i < G; ++i)
        grid[i] = mid - half * std::cos(std::numbers::pi * i / (G - 1));
    grid.front() = a;
    grid.back() = b;

    // initial reference: Chebyshev extrema of degree+1
    int n = degree + 2;
    std::vector<double> refpts(n);
    for (int i = 0; i < n; ++i)
        refpts[i] = mid - half * std::cos(std::numbers::pi * i / (n - 1));
    refpts.front() = a;
    refpts.back() = b;

    double coarse = run_exchange(f, a, b, degree, tol, grid, refpts, 100);
    if (coarse <= 1e-14) return coarse;

    // one refinement pass: add fine clusters around the reference points
    double spacing = std::numbers::pi / (G - 1);
    std::vector<double> fine = grid;
    for (double x : refpts) {
        double theta = std::acos(std::clamp((mid - x) / half, -1.0, 1.0));
        for (int j = -32; j <= 32; ++j) {
            double th = theta + j * spacing / 32.0;
            if (th < 0.0 || th > std::numbers::pi) continue;
            fine.push_back(mid - half * std::cos(th));
        }
    }
    std::sort(fine.begin(), fine.end());
    fine.erase(std::unique(fine.begin(), fine.end()), fine.end());
    return run_exchange(f, a, b, degree, tol, fine, refpts, 100);
}

}  // namespace locspline
