#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

#include "gcf/quat.hpp"

namespace gcf {

/// Central tolerance/step configuration. Defaults follow the FD noise budget:
/// solver tol 1e-12 and step 1e-3 keep second-derivative noise near 1e-6.
struct ToleranceConfig {
    double solver_tol = 1e-12;
    int solver_max_iter = 50;
    double fd_first = 1e-4;   // first covariant derivatives
    double fd_second = 1e-3;  // nested / second derivatives
    double margin_decreasing = 1e-3;
};

/// Central difference (fn(h) - fn(-h)) / (2h); O(h^2) truncation error.
template <class F>
auto fd_central(F&& fn, double h) {
    return (fn(h) - fn(-h)) / (2.0 * h);
}

/// Second central difference (fn(h) - 2 fn(0) + fn(-h)) / h^2.
template <class F>
auto fd_second(F&& fn, double h) {
    return (fn(h) - 2.0 * fn(0.0) + fn(-h)) / (h * h);
}

/// Classical fourth-order Runge-Kutta over a uniform grid. Returns the
/// trajectory including the initial state.
template <class State, class Field>
std::vector<State> rk4(Field&& field, State y0, const std::vector<double>& t_grid) {
    std::vector<State> out;
    out.reserve(t_grid.size());
    out.push_back(y0);
    for (std::size_t n = 0; n + 1 < t_grid.size(); ++n) {
        const double t = t_grid[n];
        const double h = t_grid[n + 1] - t_grid[n];
        const State k1 = field(t, y0);
        const State k2 = field(t + 0.5 * h, y0 + (0.5 * h) * k1);
        const State k3 = field(t + 0.5 * h, y0 + (0.5 * h) * k2);
        const State k4 = field(t + h, y0 + h * k3);
        y0 = y0 + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        out.push_back(y0);
    }
    return out;
}

/// Product quadrature on S^3 in Hopf coordinates
///   p(theta, phi1, phi2) = (cos t cos p1, cos t sin p1, sin t cos p2, sin t sin p2),
/// midpoint nodes per axis (which avoids the degenerate theta circles),
/// weight cos(theta) sin(theta). Weights sum to vol(S^3) = 2 pi^2.
struct QuadratureSpec {
    int n_theta = 24;
    int n_phi1 = 32;
    int n_phi2 = 32;

    std::size_t node_count() const {
        return std::size_t(n_theta) * std::size_t(n_phi1) * std::size_t(n_phi2);
    }
    /// Node `n` in row-major (theta, phi1, phi2) order with its weight.
    std::pair<Quat, double> node(std::size_t n) const;
};

double s3_quadrature(const QuadratureSpec& spec, const std::function<double(const Quat&)>& fn);

/// Deterministic pairwise summation (reduction order independent of threading).
double pairwise_sum(std::vector<double> values);

/// Closed-form SVD of a 2x2 real matrix m[row][col]. Returns singular values
/// ascending with right/left singular vectors as columns of v/u:
/// m * v_col = sigma * u_col.
struct Svd2 {
    double s1 = 0, s2 = 0;            // s1 <= s2
    std::array<double, 4> u{1, 0, 0, 1};  // row-major 2x2
    std::array<double, 4> v{1, 0, 0, 1};
};
Svd2 svd2(const std::array<double, 4>& m);

/// Damped Gauss-Newton on a residual map R^2 -> R^k with finite-difference
/// Jacobian. Non-convergence is reported, never silent.
struct GaussNewtonResult {
    std::array<double, 2> x{0, 0};
    double residual_norm = 0;
    int iterations = 0;
    bool converged = false;
};
GaussNewtonResult gauss_newton(const std::function<std::vector<double>(const std::array<double, 2>&)>& residual,
                               std::array<double, 2> x0, double tol, int max_iter);

/// Fibonacci lattice of n near-uniform points on the unit 2-sphere of Im H.
std::vector<Quat> fibonacci_sphere(int n);

/// Runs fn(i) for i in [0, n); parallel over at most FIBLAB_THREADS (or
/// hardware concurrency) workers. Each index is computed independently, so
/// results do not depend on the thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

/// Splitmix-based deterministic RNG helpers for reproducible sampling.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}
    std::uint64_t next();
    double uniform(double lo = 0.0, double hi = 1.0);
    /// Uniform point on the unit sphere of Im H.
    Quat unit_imag();
    /// Uniform point on S^3.
    Quat unit_s3();
    /// Standard normal via Box-Muller.
    double normal();

  private:
    std::uint64_t state_;
};

}  // namespace gcf
