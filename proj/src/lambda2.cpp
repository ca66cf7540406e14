#include "gcf/lambda2.hpp"

#include <cmath>
#include <stdexcept>

namespace gcf {

double Bivector::norm2() const {
    return a12 * a12 + a13 * a13 + a14 * a14 + a23 * a23 + a24 * a24 + a34 * a34;
}

double Bivector::norm() const { return std::sqrt(norm2()); }

Bivector wedge(const Quat& v, const Quat& w) {
    return {v[0] * w[1] - v[1] * w[0], v[0] * w[2] - v[2] * w[0], v[0] * w[3] - v[3] * w[0],
            v[1] * w[2] - v[2] * w[1], v[1] * w[3] - v[3] * w[1], v[2] * w[3] - v[3] * w[2]};
}

double inner2(const Bivector& a, const Bivector& b) {
    return a.a12 * b.a12 + a.a13 * b.a13 + a.a14 * b.a14 + a.a23 * b.a23 + a.a24 * b.a24 +
           a.a34 * b.a34;
}

Bivector hodge(const Bivector& w) {
    return {w.a34, -w.a24, w.a23, w.a14, -w.a13, w.a12};
}

bool is_simple(const Bivector& w) { return std::abs(inner2(w, hodge(w))) <= 1e-10 * w.norm2(); }

std::pair<Bivector, Bivector> split_pm(const Bivector& w) {
    const Bivector s = hodge(w);
    return {0.5 * (w - s), 0.5 * (w + s)};
}

GrassPoint grass_encode(const Quat& v1, const Quat& v2) {
    if (std::abs(v1.norm2() - 1.0) > 1e-10 || std::abs(v2.norm2() - 1.0) > 1e-10 ||
        std::abs(inner(v1, v2)) > 1e-10)
        throw std::invalid_argument("grass_encode: input pair is not orthonormal");
    auto [m, p] = split_pm(wedge(v1, v2));
    return {m, p};
}

std::pair<Quat, Quat> grass_decode(const GrassPoint& G) {
    constexpr double kInvSqrt2 = 0.70710678118654752440;
    if ((hodge(G.minus) + G.minus).norm() > 1e-8 || (hodge(G.plus) - G.plus).norm() > 1e-8 ||
        std::abs(G.minus.norm() - kInvSqrt2) > 1e-8 || std::abs(G.plus.norm() - kInvSqrt2) > 1e-8)
        throw std::invalid_argument("grass_decode: GrassPoint invariants violated");

    Bivector w = G.minus + G.plus;
    w = w / w.norm();

    // Antisymmetric matrix of w; A u = <v2,u> v1 - <v1,u> v2 lies in the plane.
    double A[4][4] = {{0, w.a12, w.a13, w.a14},
                      {-w.a12, 0, w.a23, w.a24},
                      {-w.a13, -w.a23, 0, w.a34},
                      {-w.a14, -w.a24, -w.a34, 0}};
    auto apply = [&](const Quat& u) {
        Quat r;
        for (int a = 0; a < 4; ++a) {
            double s = 0;
            for (int b = 0; b < 4; ++b) s += A[a][b] * u[b];
            r[a] = s;
        }
        return r;
    };

    // Deterministic seed: the basis vector with the largest image.
    Quat best;
    double best_norm = -1;
    for (int n = 0; n < 4; ++n) {
        Quat e;
        e[n] = 1.0;
        const Quat img = apply(e);
        if (img.norm() > best_norm) {
            best_norm = img.norm();
            best = img;
        }
    }
    const Quat u1 = best.normalized();
    // For orthonormal generators A rotates the plane by -90 degrees, so
    // u1 ^ (-A u1) reproduces w with positive orientation.
    Quat u2 = -apply(u1);
    u2 = tangent_project(u1, u2).normalized();
    return {u1, u2};
}

Bivector e_basis(Side side, int m) {
    const double s = side == Side::Plus ? 1.0 : -1.0;
    switch (m) {
        case 0: return {0.5, 0, 0, 0, 0, s * 0.5};         // (1^i +- j^k)/2
        case 1: return {0, 0.5, 0, 0, -s * 0.5, 0};        // (1^j -+ i^k)/2
        default: return {0, 0, 0.5, s * 0.5, 0, 0};        // (1^k +- i^j)/2
    }
}

Quat iota_coords(const Bivector& w, Side side) {
    const double s = side == Side::Plus ? 1.0 : -1.0;
    if ((hodge(w) - s * w).norm() > 1e-8 * (1.0 + w.norm()))
        throw std::invalid_argument("iota_coords: element not in the declared eigenspace");
    return Quat::imag(2.0 * inner2(w, e_basis(side, 0)), 2.0 * inner2(w, e_basis(side, 1)),
                      2.0 * inner2(w, e_basis(side, 2)));
}

Bivector iota_point(const Quat& q, Side side) {
    if (!q.is_imaginary())
        throw std::invalid_argument("iota_point: input must be pure imaginary");
    return q.x * e_basis(side, 0) + q.y * e_basis(side, 1) + q.z * e_basis(side, 2);
}

}  // namespace gcf
