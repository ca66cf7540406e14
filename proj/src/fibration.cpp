#include "gcf/fibration.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "gcf/numerics.hpp"

namespace gcf {

namespace {

Quat check_unit_imag(const Quat& x, const char* what) {
    if (!x.is_imaginary() || std::abs(x.norm() - 1.0) > 1e-8)
        throw std::invalid_argument(std::string(what) + ": expected a unit imaginary quaternion");
    return x;
}

Quat check_unit_s3(const Quat& p, const char* what) {
    if (std::abs(p.norm() - 1.0) > 1e-8)
        throw std::invalid_argument(std::string(what) + ": expected a unit quaternion");
    return p;
}

}  // namespace

Fibration Fibration::create(MapSpec g, SolverConfig cfg, int certify_samples) {
    DilationCertificate cert = certify_decreasing(g, certify_samples);
    if (!cert.decreasing)
        throw std::invalid_argument("Fibration::create: map is not strictly length decreasing "
                                    "(sup singular value " + std::to_string(cert.sup_sv) + ")");
    return Fibration(std::move(g), cfg, cert);
}

Fibration Fibration::local(MapSpec g, SolverConfig cfg) {
    return Fibration(std::move(g), cfg, std::nullopt);
}

void Fibration::require_global(const char* op) const {
    if (!cert_ || !cert_->decreasing)
        throw std::logic_error(std::string(op) +
                               ": global query on an uncertified (local-only) fibration");
}

std::pair<Quat, Quat> Fibration::generators(const Quat& x) const {
    check_unit_imag(x, "Fibration::generators");
    const Quat gx = eval(g_, x);
    const Quat sum = x + gx;
    const double d = sum.norm();
    if (d >= 1e-8) {
        const Quat xi = -(sum / d);
        const Quat eta = (gx * xi).normalized();
        return {xi, eta};
    }
    // Antipodal case g(x) = -x: cross-product branch with the largest
    // denominator among the three axis choices.
    const Quat axes[3] = {Quat::i(), Quat::j(), Quat::k()};
    int best = -1;
    double best_norm = 1e-8;
    for (int m = 0; m < 3; ++m) {
        const double nm = cross(x, axes[m]).norm();
        if (nm > best_norm) {
            best_norm = nm;
            best = m;
        }
    }
    if (best < 0)
        throw std::runtime_error("Fibration::generators: all antipodal-branch denominators "
                                 "vanish (corrupt input)");
    const Quat xi = cross(x, axes[best]).normalized();
    const Quat eta = (-(x * xi)).normalized();
    return {xi, eta};
}

Quat Fibration::circle(const FiberCoord& c) const {
    const auto [xi, eta] = generators(c.x);
    return (std::cos(c.t) * xi + std::sin(c.t) * eta).normalized();
}

Quat Fibration::zeta_on_fiber(const FiberCoord& c) const {
    const auto [xi, eta] = generators(c.x);
    return (-std::sin(c.t) * xi + std::cos(c.t) * eta).normalized();
}

std::optional<FiberCoord> Fibration::try_solve_from(const Quat& p, const Quat& start) const {
    // Chart: azimuthal equidistant centered at `start`.
    const auto [t1, t2] = tangent_frame_s2(start);
    auto chart = [&, t1 = t1, t2 = t2](const std::array<double, 2>& u) {
        const Quat v = u[0] * t1 + u[1] * t2;
        const double r = v.norm();
        if (r < 1e-300) return start;
        return (std::cos(r) * start + (std::sin(r) / r) * v).normalized();
    };
    auto residual = [&](const std::array<double, 2>& u) {
        const auto [xi, eta] = generators(chart(u));
        const Quat r = p - inner(p, xi) * xi - inner(p, eta) * eta;
        return std::vector<double>{r.w, r.x, r.y, r.z};
    };
    const auto gn = gauss_newton(residual, {0.0, 0.0}, cfg_.tol, cfg_.max_iter);
    if (!gn.converged) return std::nullopt;
    const Quat x = chart(gn.x);
    const auto [xi, eta] = generators(x);
    return FiberCoord{x, std::atan2(inner(p, eta), inner(p, xi))};
}

FiberCoord Fibration::solve_fiber(const Quat& p, const Quat& hint_x) const {
    require_global("Fibration::solve_fiber");
    check_unit_s3(p, "Fibration::solve_fiber");
    if (auto sol = try_solve_from(p, check_unit_imag(hint_x, "Fibration::solve_fiber hint")))
        return *sol;
    return solve_fiber(p);
}

FiberCoord Fibration::solve_fiber(const Quat& p) const {
    require_global("Fibration::solve_fiber");
    check_unit_s3(p, "Fibration::solve_fiber");

    static const std::vector<Quat> coarse = fibonacci_sphere(32);
    int best = 0;
    double best_res = std::numeric_limits<double>::infinity();
    for (int n = 0; n < int(coarse.size()); ++n) {
        const auto [xi, eta] = generators(coarse[std::size_t(n)]);
        const Quat r = p - inner(p, xi) * xi - inner(p, eta) * eta;
        if (r.norm2() < best_res) {
            best_res = r.norm2();
            best = n;
        }
    }
    if (auto sol = try_solve_from(p, coarse[std::size_t(best)])) return *sol;
    for (const Quat& start : coarse)
        if (auto sol = try_solve_from(p, start)) return *sol;
    throw std::runtime_error("Fibration::solve_fiber: no convergence from any start point");
}

Quat Fibration::zeta(const Quat& p) const { return zeta_on_fiber(solve_fiber(p)); }

Quat Fibration::zeta(const Quat& p, const Quat& hint_x) const {
    return zeta_on_fiber(solve_fiber(p, hint_x));
}

Quat Fibration::project(const Quat& p) const {
    const FiberCoord c = solve_fiber(p);
    const GrassPoint g = grass_encode(circle(c), zeta_on_fiber(c));
    return iota_coords((1.0 / g.minus.norm() / std::sqrt(2.0)) * g.minus, Side::Minus);
}

}  // namespace gcf
