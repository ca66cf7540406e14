#pragma once

#include <array>
#include <utility>

#include "gcf/quat.hpp"

namespace gcf {

/// 2-vector of Lambda^2(R^4) in the ordered wedge basis
/// (e12, e13, e14, e23, e24, e34), where e1..e4 are (1, i, j, k) of H.
struct Bivector {
    double a12 = 0, a13 = 0, a14 = 0, a23 = 0, a24 = 0, a34 = 0;

    std::array<double, 6> coeffs() const { return {a12, a13, a14, a23, a24, a34}; }

    friend constexpr Bivector operator+(const Bivector& a, const Bivector& b) {
        return {a.a12 + b.a12, a.a13 + b.a13, a.a14 + b.a14,
                a.a23 + b.a23, a.a24 + b.a24, a.a34 + b.a34};
    }
    friend constexpr Bivector operator-(const Bivector& a, const Bivector& b) {
        return {a.a12 - b.a12, a.a13 - b.a13, a.a14 - b.a14,
                a.a23 - b.a23, a.a24 - b.a24, a.a34 - b.a34};
    }
    friend constexpr Bivector operator-(const Bivector& a) {
        return {-a.a12, -a.a13, -a.a14, -a.a23, -a.a24, -a.a34};
    }
    friend constexpr Bivector operator*(double s, const Bivector& a) {
        return {s * a.a12, s * a.a13, s * a.a14, s * a.a23, s * a.a24, s * a.a34};
    }
    friend constexpr Bivector operator*(const Bivector& a, double s) { return s * a; }
    friend constexpr Bivector operator/(const Bivector& a, double s) { return (1.0 / s) * a; }

    double norm2() const;
    double norm() const;
};

/// Oriented 2-plane of R^4 as a point of S^2_- x S^2_+; both components
/// have Lambda^2 norm 1/sqrt(2).
struct GrassPoint {
    Bivector minus;
    Bivector plus;
};

enum class Side { Minus, Plus };

/// Exterior product of two vectors of R^4.
Bivector wedge(const Quat& v, const Quat& w);

/// The natural inner product of Lambda^2(R^4); the wedge basis is orthonormal.
double inner2(const Bivector& a, const Bivector& b);

/// Hodge star; an involutive isometry exchanging a plane with its orthogonal
/// complement.
Bivector hodge(const Bivector& w);

/// True iff w is decomposable, i.e. (w, *w) = 0 within 1e-10 * |w|^2.
bool is_simple(const Bivector& w);

/// Unique decomposition into the -1 and +1 eigenspaces of the Hodge star:
/// ((w - *w)/2, (w + *w)/2).
std::pair<Bivector, Bivector> split_pm(const Bivector& w);

/// Encode the oriented plane spanned by the orthonormal pair (v1, v2) as a
/// point of S^2_- x S^2_+. Throws if the pair is not orthonormal (1e-10).
GrassPoint grass_encode(const Quat& v1, const Quat& v2);

/// Canonical orthonormal pair spanning the plane of G, inverse to
/// grass_encode up to rotation of the pair in its plane. Throws if the
/// GrassPoint invariants are violated beyond 1e-8.
std::pair<Quat, Quat> grass_decode(const GrassPoint& G);

/// Coordinates of an eigenspace element against the E_-/E_+ bases
/// { (1^i -+ j^k)/2, (1^j +- i^k)/2, (1^k -+ i^j)/2 }, identified with
/// (i, j, k) of Im H. Linear; elements of norm 1/sqrt(2) map to unit
/// imaginaries. Throws if w is not in the declared eigenspace.
Quat iota_coords(const Bivector& w, Side side);

/// Inverse of iota_coords: unit imaginary q maps to an eigenspace element of
/// norm |q|/sqrt(2).
Bivector iota_point(const Quat& q, Side side);

/// Basis element m (0..2) of E_- or E_+; each has norm 1/sqrt(2).
Bivector e_basis(Side side, int m);

}  // namespace gcf
