#include "gcf/geometry.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "gcf/numerics.hpp"

namespace gcf {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

/// Unit vector in the orthogonal complement of the orthonormal pair (u1, u2):
/// projects the first of {1, i, j, k} that keeps at least half its length.
/// The trace of the projection is 2, so the best reference keeps >= 1/sqrt(2).
Quat complement_reference(const Quat& u1, const Quat& u2) {
    const Quat refs[4] = {Quat::one(), Quat::i(), Quat::j(), Quat::k()};
    for (const Quat& ref : refs) {
        const Quat t = ref - inner(ref, u1) * u1 - inner(ref, u2) * u2;
        if (t.norm() >= 0.5) return t.normalized();
    }
    throw std::logic_error("complement_reference: no admissible reference");  // unreachable
}

/// Riccati state for the component system (3.3).
struct PhiState {
    double f22 = 0, f23 = 0, f32 = 0, f33 = 0;

    friend PhiState operator+(const PhiState& a, const PhiState& b) {
        return {a.f22 + b.f22, a.f23 + b.f23, a.f32 + b.f32, a.f33 + b.f33};
    }
    friend PhiState operator*(double s, const PhiState& a) {
        return {s * a.f22, s * a.f23, s * a.f32, s * a.f33};
    }
};

PhiState riccati_field(double, const PhiState& y) {
    const double v = y.f22 + y.f33;
    return {1.0 + y.f22 * y.f22 + y.f23 * y.f32, y.f23 * v, y.f32 * v,
            1.0 + y.f33 * y.f33 + y.f23 * y.f32};
}

/// Spectral (trigonometric) differentiation on a uniform periodic grid of
/// spacing dt covering one period n*dt; truncation error decays exponentially
/// for analytic data. Direct DFT: the grids here are small (n ~ 64).
std::vector<double> periodic_derivative5(const std::vector<double>& f, double dt) {
    const std::size_t n = f.size();
    const double omega = 2.0 * std::numbers::pi / (double(n) * dt);
    std::vector<double> d(n, 0.0);
    for (std::size_t m = 1; m <= (n - 1) / 2; ++m) {
        // Fourier pair (a_m, b_m) of mode m.
        double am = 0.0, bm = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            const double arg = 2.0 * std::numbers::pi * double(m) * double(k) / double(n);
            am += f[k] * std::cos(arg);
            bm += f[k] * std::sin(arg);
        }
        am *= 2.0 / double(n);
        bm *= 2.0 / double(n);
        const double mw = double(m) * omega;
        for (std::size_t k = 0; k < n; ++k) {
            const double arg = 2.0 * std::numbers::pi * double(m) * double(k) / double(n);
            d[k] += mw * (-am * std::sin(arg) + bm * std::cos(arg));
        }
    }
    return d;
}

double bivector_dist(const GrassPoint& a, const GrassPoint& b) {
    return std::sqrt((a.minus - b.minus).norm2() + (a.plus - b.plus).norm2());
}

}  // namespace

std::pair<Quat, Quat> plane_complement(const Quat& u1, const Quat& u2) {
    const Quat b2 = complement_reference(u1, u2);
    return {b2, cross4(u1, u2, b2).normalized()};
}

std::vector<double> uniform_t_grid(int n) {
    if (n < 5) throw std::invalid_argument("uniform_t_grid: need at least 5 nodes");
    std::vector<double> t(static_cast<std::size_t>(n), 0.0);
    for (int k = 0; k < n; ++k) t[std::size_t(k)] = kTwoPi * double(k) / double(n);
    return t;
}

Quat covariant_derivative(const Fibration& fib, const Quat& p, const Quat& v, double h,
                          const Quat& hint_x) {
    const double speed = v.norm();
    if (speed < 1e-14) return Quat::zero();
    const Quat vh = v / speed;
    const Quat d = fd_central(
        [&](double s) {
            return fib.zeta((std::cos(s) * p + std::sin(s) * vh).normalized(), hint_x);
        },
        h);
    return speed * tangent_project(p, d);
}

Quat covariant_derivative(const Fibration& fib, const Quat& p, const Quat& v, double h) {
    return covariant_derivative(fib, p, v, h, fib.solve_fiber(p).x);
}

Frame frame_at(const Fibration& fib, const Quat& p) {
    if (std::abs(p.norm() - 1.0) > 1e-8)
        throw std::invalid_argument("frame_at: expected a unit quaternion");
    Frame f;
    f.p = p;
    f.a1 = fib.zeta(p);
    f.a2 = complement_reference(p, f.a1);
    f.a3 = cross4(p, f.a1, f.a2).normalized();
    if (inner(f.a2 * conj(p) * f.a3, f.a1) < 0.0) f.a3 = -f.a3;
    return f;
}

Frame fiber_frame(const Fibration& fib, const FiberCoord& c) {
    Frame f;
    f.p = fib.circle(c);
    f.a1 = fib.zeta_on_fiber(c);
    const auto [xi, eta] = fib.generators(c.x);
    const auto [b2, b3] = plane_complement(xi, eta);
    f.a2 = b2;
    f.a3 = b3;
    if (inner(f.a2 * conj(f.p) * f.a3, f.a1) < 0.0) f.a3 = -f.a3;
    return f;
}

PhiTensor phi_at(const Fibration& fib, const Frame& frame) {
    const Quat x = fib.solve_fiber(frame.p).x;
    const Quat d2 = covariant_derivative(fib, frame.p, frame.a2, 1e-4, x);
    const Quat d3 = covariant_derivative(fib, frame.p, frame.a3, 1e-4, x);
    PhiTensor phi;
    phi.f22 = inner(-d2, frame.a2);
    phi.f23 = inner(-d2, frame.a3);
    phi.f32 = inner(-d3, frame.a2);
    phi.f33 = inner(-d3, frame.a3);
    return phi;
}

RiccatiRecord riccati_residuals(const Fibration& fib, const Quat& x,
                                const std::vector<double>& t_grid) {
    const int n = int(t_grid.size());
    if (n < 5) throw std::invalid_argument("riccati_residuals: need at least 5 t-nodes");
    const double dt = kTwoPi / double(n);
    for (int k = 0; k < n; ++k)
        if (std::abs(t_grid[std::size_t(k)] - (t_grid[0] + dt * k)) > 1e-12)
            throw std::invalid_argument("riccati_residuals: t_grid must be uniform over a period");

    const auto [xi, eta] = fib.generators(x);
    // Parallel frame: the horizontal plane along the fiber is constant in R^4.
    const Quat b2 = complement_reference(xi, eta);
    Quat b3 = cross4(xi, eta, b2).normalized();
    if (inner(b2 * conj(xi) * b3, eta) < 0.0) b3 = -b3;

    RiccatiRecord rec;
    rec.t_grid = t_grid;
    rec.phi.resize(t_grid.size());
    std::vector<PhiTensor>& phi = rec.phi;
    parallel_for(t_grid.size(), [&](std::size_t k) {
        const Quat p = fib.circle({x, t_grid[k]});
        const Quat d2 = covariant_derivative(fib, p, b2, 1e-4, x);
        const Quat d3 = covariant_derivative(fib, p, b3, 1e-4, x);
        phi[k] = {inner(-d2, b2), inner(-d2, b3), inner(-d3, b2), inner(-d3, b3)};
    });

    std::vector<double> f22(phi.size()), f23(phi.size()), f32(phi.size()), f33(phi.size());
    std::vector<double> u(phi.size()), v(phi.size()), opd(phi.size()), disc(phi.size());
    for (std::size_t k = 0; k < phi.size(); ++k) {
        f22[k] = phi[k].f22;
        f23[k] = phi[k].f23;
        f32[k] = phi[k].f32;
        f33[k] = phi[k].f33;
        u[k] = phi[k].trace_j();
        v[k] = phi[k].trace();
        opd[k] = 1.0 + phi[k].det();
        disc[k] = v[k] * v[k] - 4.0 * phi[k].det();
        if (!(opd[k] > 0.0)) rec.det_positive = false;
        if (!(disc[k] < 0.0)) rec.discriminant_negative = false;
        if (u[k] == 0.0 || u[k] * u[0] <= 0.0) rec.u_one_sign = false;
    }

    const auto df22 = periodic_derivative5(f22, dt);
    const auto df23 = periodic_derivative5(f23, dt);
    const auto df32 = periodic_derivative5(f32, dt);
    const auto df33 = periodic_derivative5(f33, dt);
    const auto du = periodic_derivative5(u, dt);
    const auto dv = periodic_derivative5(v, dt);
    const auto dopd = periodic_derivative5(opd, dt);
    const auto ddisc = periodic_derivative5(disc, dt);
    auto bump = [](double& acc, double r) { acc = std::max(acc, std::abs(r)); };
    for (std::size_t k = 0; k < phi.size(); ++k) {
        bump(rec.max_component_residual, df22[k] - (1.0 + f22[k] * f22[k] + f23[k] * f32[k]));
        bump(rec.max_component_residual, df33[k] - (1.0 + f33[k] * f33[k] + f23[k] * f32[k]));
        bump(rec.max_component_residual, df23[k] - f23[k] * v[k]);
        bump(rec.max_component_residual, df32[k] - f32[k] * v[k]);
        bump(rec.max_scalar_residual, du[k] - u[k] * v[k]);
        bump(rec.max_scalar_residual, dopd[k] - v[k] * opd[k]);
        bump(rec.max_scalar_residual, dv[k] - (v[k] * v[k] - 2.0 * opd[k] + 4.0));
        bump(rec.max_discriminant_residual, ddisc[k] - 2.0 * v[k] * disc[k]);
    }

    // Reference RK4 integration of (3.3) from the t = 0 sample, on an
    // eightfold-refined grid; compare at the sample nodes.
    const int refine = 8;
    std::vector<double> fine(std::size_t(n * refine) + 1);
    for (std::size_t k = 0; k < fine.size(); ++k) fine[k] = t_grid[0] + dt * double(k) / refine;
    const PhiState y0{phi[0].f22, phi[0].f23, phi[0].f32, phi[0].f33};
    const auto traj = rk4(riccati_field, y0, fine);
    for (int k = 0; k < n; ++k) {
        const PhiState& y = traj[std::size_t(k * refine)];
        bump(rec.rk4_max_diff, y.f22 - f22[std::size_t(k)]);
        bump(rec.rk4_max_diff, y.f23 - f23[std::size_t(k)]);
        bump(rec.rk4_max_diff, y.f32 - f32[std::size_t(k)]);
        bump(rec.rk4_max_diff, y.f33 - f33[std::size_t(k)]);
    }
    return rec;
}

GaussMapRecord gauss_maps(const Fibration& fib, const Quat& x, int n_t) {
    if (n_t < 1) throw std::invalid_argument("gauss_maps: need at least one t sample");
    GaussMapRecord rec;
    for (int k = 0; k < n_t; ++k) {
        const FiberCoord c{x, kTwoPi * double(k) / double(n_t)};
        const GrassPoint g = grass_encode(fib.circle(c), fib.zeta_on_fiber(c));
        if (k == 0)
            rec.point = g;
        else
            rec.max_spread = std::max(rec.max_spread, bivector_dist(rec.point, g));
    }
    return rec;
}

std::pair<double, double> mu_from_phi(const PhiTensor& phi) {
    const double det = phi.det();
    const double v = phi.trace();
    const double u = phi.trace_j();
    const double denom = 1.0 + det + std::abs(u);
    if (std::abs(denom) < 1e-10)
        throw std::domain_error("mu_from_phi: denominator 1 + det + |trace(phi o J)| vanishes");
    const double t1 = std::sqrt((1.0 - det) * (1.0 - det) + v * v);
    // |phi|^2 - 2 det = (f22 - f33)^2 + (f23 + f32)^2, nonnegative by identity.
    const double s = std::max(0.0, phi.norm2() - 2.0 * det);
    const double t2 = std::sqrt(s);
    return {std::abs(t1 - t2) / denom, (t1 + t2) / denom};
}

double contact_value(const PhiTensor& phi) { return phi.trace_j(); }

double codazzi_residual(const Fibration& fib, const Quat& p, double h) {
    const Frame fr = frame_at(fib, p);
    const Quat x = fib.solve_fiber(p).x;

    // Extensions of a2, a3 by horizontal projection followed by normalization.
    auto extend = [&](const Quat& a, const Quat& q) {
        const Quat zq = fib.zeta(q, x);
        return (a - inner(a, q) * q - inner(a, zq) * zq).normalized();
    };
    auto horiz = [&](const Quat& w) {
        return w - inner(w, fr.p) * fr.p - inner(w, fr.a1) * fr.a1;
    };
    auto phi_of = [&](const Quat& q, const Quat& w) {
        return -covariant_derivative(fib, q, w, 1e-4, x);
    };

    // (nabla^H_X phi)(Y) = nabla^H_X (phi(Y~)) - phi(nabla^H_X Y~).
    auto nabla_term = [&](const Quat& X, const Quat& Yref) {
        auto point = [&](double s) { return (std::cos(s) * fr.p + std::sin(s) * X).normalized(); };
        const Quat d_phiY =
            horiz(tangent_project(fr.p, fd_central([&](double s) {
                                      const Quat q = point(s);
                                      return phi_of(q, extend(Yref, q));
                                  },
                                                   h)));
        const Quat d_Y = horiz(tangent_project(
            fr.p, fd_central([&](double s) { return extend(Yref, point(s)); }, h)));
        return d_phiY - phi_of(fr.p, d_Y);
    };

    const Quat r = nabla_term(fr.a2, fr.a3) - nabla_term(fr.a3, fr.a2);
    return std::max(std::abs(inner(r, fr.a2)), std::abs(inner(r, fr.a3)));
}

}  // namespace gcf
