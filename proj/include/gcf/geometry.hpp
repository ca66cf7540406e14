#pragma once

#include <vector>

#include "gcf/fibration.hpp"
#include "gcf/lambda2.hpp"

namespace gcf {

/// Adapted orthonormal frame at p in S^3: a1 = zeta(p) spans the vertical
/// line, {a2, a3} span the horizontal plane, with the orientation
/// a2 * conj(p) * a3 = a1.
struct Frame {
    Quat p, a1, a2, a3;
};

/// Components phi_ij = <phi(a_i), a_j> of the second fundamental form
/// phi(v) = -grad_v zeta of the horizontal distribution, i, j in {2, 3}.
struct PhiTensor {
    double f22 = 0, f23 = 0, f32 = 0, f33 = 0;

    double trace() const { return f22 + f33; }
    /// trace(phi o J) in the convention phi_32 - phi_23.
    double trace_j() const { return f32 - f23; }
    double det() const { return f22 * f33 - f23 * f32; }
    double norm2() const { return f22 * f22 + f23 * f23 + f32 * f32 + f33 * f33; }
};

/// Residual record for the Riccati system along one fiber.
struct RiccatiRecord {
    std::vector<double> t_grid;
    std::vector<PhiTensor> phi;     // sampled components
    double max_component_residual = 0;  // the four component ODEs
    double max_scalar_residual = 0;     // u' = uv, (1+det)' = v(1+det), v' = v^2-2(1+det)+4
    double max_discriminant_residual = 0;  // (v^2-4det)' = 2v(v^2-4det)
    double rk4_max_diff = 0;            // reference integration vs sampled phi
    bool det_positive = true;           // 1 + det > 0 at every node
    bool u_one_sign = true;             // trace(phi o J) nonvanishing, constant sign
    bool discriminant_negative = true;  // v^2 - 4 det < 0 at every node
};

/// Gauss-map sample along a fiber: the common Grassmann point and the spread
/// over the sampled circle parameters (well-definedness check).
struct GaussMapRecord {
    GrassPoint point;
    double max_spread = 0;
};

Frame frame_at(const Fibration& fib, const Quat& p);

/// Frame at a fiber point built from the fiber coordinate directly (no global
/// solve); same orientation convention as frame_at.
Frame fiber_frame(const Fibration& fib, const FiberCoord& c);

/// Covariant derivative grad_v zeta of S^3 realized as the tangentially
/// projected ambient derivative along the great circle through p with
/// velocity v. Central differences with step h.
Quat covariant_derivative(const Fibration& fib, const Quat& p, const Quat& v, double h = 1e-4);
/// Same, with every zeta solve seeded at the fiber base hint_x.
Quat covariant_derivative(const Fibration& fib, const Quat& p, const Quat& v, double h,
                          const Quat& hint_x);

PhiTensor phi_at(const Fibration& fib, const Frame& frame);

/// Samples phi along the fiber over x in the parallel frame (a2, a3 constant
/// in R^4) and evaluates the Riccati ODE residuals; derivatives along t by
/// spectral (trigonometric) differentiation on the periodic grid. The grid
/// must be uniform over [0, 2 pi).
RiccatiRecord riccati_residuals(const Fibration& fib, const Quat& x,
                                const std::vector<double>& t_grid);

GaussMapRecord gauss_maps(const Fibration& fib, const Quat& x, int n_t = 8);

/// Singular values (mu1 <= mu2) of the graph map from the components of phi;
/// the denominator branch follows the sign of trace(phi o J).
std::pair<double, double> mu_from_phi(const PhiTensor& phi);

/// trace(phi o J); the value of (omega ^ d omega)(a1, a2, a3) for the dual
/// 1-form of zeta, nonvanishing exactly when that form is contact.
double contact_value(const PhiTensor& phi);

/// Max over i in {2,3} of |<(grad^H_{a2} phi) a3 - (grad^H_{a3} phi) a2, a_i>|
/// (Codazzi symmetry on the horizontal distribution), second-order FD.
double codazzi_residual(const Fibration& fib, const Quat& p, double h = 1e-3);

/// Uniform grid of n values of [0, 2 pi).
std::vector<double> uniform_t_grid(int n);

/// Deterministic orthonormal basis of the orthogonal complement in R^4 of the
/// orthonormal pair (u1, u2); orientation unconstrained.
std::pair<Quat, Quat> plane_complement(const Quat& u1, const Quat& u2);

}  // namespace gcf
