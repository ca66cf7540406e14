#pragma once

#include <optional>
#include <utility>

#include "gcf/lambda2.hpp"
#include "gcf/sphere_maps.hpp"

namespace gcf {

struct SolverConfig {
    double tol = 1e-12;
    int max_iter = 50;
};

/// Fiber coordinate: base point x on the unit 2-sphere of Im H and circle
/// parameter t in [-pi, pi). S(x, t + pi) = -S(x, t), so fiber membership is
/// compared through the base point only.
struct FiberCoord {
    Quat x;
    double t = 0.0;
};

/// A great circle fibration of S^3 built from a map g of the 2-sphere:
/// every base point x spans, together with g(x), a plane of R^4 whose unit
/// circle is the fiber. Global queries (solve_fiber, zeta, project) require
/// g to be certified strictly length decreasing; the boundary families
/// (g(x) = +-x) are supported only through the local, per-fiber queries.
class Fibration {
  public:
    /// Certifies g over `certify_samples` points and constructs the fibration.
    /// Throws if g is not strictly length decreasing.
    static Fibration create(MapSpec g, SolverConfig cfg = {}, int certify_samples = 1000);

    /// Constructs without certification; global queries throw.
    static Fibration local(MapSpec g, SolverConfig cfg = {});

    const MapSpec& map() const { return g_; }
    const SolverConfig& solver_config() const { return cfg_; }
    const std::optional<DilationCertificate>& certificate() const { return cert_; }

    /// Orthonormal generators (xi, eta) of the fiber plane over x:
    /// xi = -(x + g(x))/|x + g(x)| and eta = g(x) * xi, with the antipodal
    /// case g(x) = -x routed through the largest-denominator cross-product
    /// branch.
    std::pair<Quat, Quat> generators(const Quat& x) const;

    /// S(x, t) = cos t xi(x) + sin t eta(x), a point of S^3.
    Quat circle(const FiberCoord& c) const;

    /// Unit tangent of the fiber at S(x, t): -sin t xi + cos t eta.
    Quat zeta_on_fiber(const FiberCoord& c) const;

    /// Inverts the fibration at p via damped Gauss-Newton over an azimuthal
    /// chart of the base sphere (multi-start on a coarse grid on failure).
    FiberCoord solve_fiber(const Quat& p) const;
    /// Same, seeded at hint_x (used by finite-difference stencils).
    FiberCoord solve_fiber(const Quat& p, const Quat& hint_x) const;

    /// The unit vector field generating the fibers, at an arbitrary p of S^3.
    Quat zeta(const Quat& p) const;
    /// Same, seeded at hint_x (used by finite-difference stencils).
    Quat zeta(const Quat& p, const Quat& hint_x) const;

    /// The projection to the base sphere in unit coordinates; constant along
    /// fibers and equal to solve_fiber(p).x.
    Quat project(const Quat& p) const;

  private:
    Fibration(MapSpec g, SolverConfig cfg, std::optional<DilationCertificate> cert)
        : g_(std::move(g)), cfg_(cfg), cert_(std::move(cert)) {}

    void require_global(const char* op) const;
    std::optional<FiberCoord> try_solve_from(const Quat& p, const Quat& start) const;

    MapSpec g_;
    SolverConfig cfg_;
    std::optional<DilationCertificate> cert_;
};

}  // namespace gcf
