#pragma once

#include <array>
#include <memory>
#include <string>
#include <utility>

#include "gcf/numerics.hpp"
#include "gcf/quat.hpp"

namespace gcf {

/// Parametric description of a smooth map of the unit 2-sphere of Im H into
/// itself (the defining data of a fibration, in unit coordinates).
///
/// CapContraction(n, eps) sends x to ((1-eps) n + eps x) normalized; it
/// contracts the sphere toward the axis n and is smooth for eps in (0, 1/2)
/// since |(1-eps) n + eps x| >= 1 - 2 eps > 0.
struct MapSpec {
    enum class Kind { Constant, CapContraction, PreRotated };

    Kind kind = Kind::Constant;
    std::string name;
    Quat q = Quat::i();                      // Constant value / CapContraction axis
    double eps = 0.0;                        // CapContraction only
    std::array<double, 9> rot{1, 0, 0, 0, 1, 0, 0, 0, 1};  // PreRotated, row-major
    std::shared_ptr<const MapSpec> inner;    // PreRotated only

    static MapSpec constant(const Quat& value, std::string name = "constant");
    static MapSpec cap_contraction(const Quat& axis, double eps,
                                   std::string name = "cap_contraction");
    static MapSpec pre_rotated(const std::array<double, 9>& rotation, MapSpec inner,
                               std::string name = "pre_rotated");
};

/// Certification record for the strict-length-decreasing property: sup of the
/// largest singular value over a Fibonacci sample of the sphere.
struct DilationCertificate {
    double sup_sv = 0.0;
    int n_samples = 0;
    bool decreasing = false;
    double margin = 1e-3;
};

/// Evaluate g at a unit imaginary x; the result is unit imaginary.
Quat eval(const MapSpec& g, const Quat& x);

/// Differential dg_x(v) for v tangent at x, by central finite differences
/// along the great circle through x with velocity v, projected onto the
/// tangent plane at g(x). Step 1e-5 on the unit-speed circle.
Quat differential(const MapSpec& g, const Quat& x, const Quat& v);

/// Singular values (mu1 <= mu2) of dg_x in orthonormal tangent frames.
std::pair<double, double> singular_values(const MapSpec& g, const Quat& x);

/// Sup of mu2 over n_samples Fibonacci points; decreasing iff sup < 1 - margin.
DilationCertificate certify_decreasing(const MapSpec& g, int n_samples, double margin = 1e-3);

/// Deterministic orthonormal tangent frame at unit x in Im H: the first leg
/// projects the first of {i, j, k} that stays away from degeneracy, the
/// second is cross(x, first).
std::pair<Quat, Quat> tangent_frame_s2(const Quat& x);

}  // namespace gcf
