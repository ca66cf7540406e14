#pragma once

#include <cmath>
#include <stdexcept>

namespace gcf {

/// Quaternion w + x*i + y*j + z*k, doubling as a point or vector of R^4.
/// Pure imaginary quaternions (w == 0) carry points of S^2 and tangent
/// vectors of Im H.
struct Quat {
    double w = 0.0, x = 0.0, y = 0.0, z = 0.0;

    constexpr Quat() = default;
    constexpr Quat(double w_, double x_, double y_, double z_) : w(w_), x(x_), y(y_), z(z_) {}

    static constexpr Quat one() { return {1, 0, 0, 0}; }
    static constexpr Quat i() { return {0, 1, 0, 0}; }
    static constexpr Quat j() { return {0, 0, 1, 0}; }
    static constexpr Quat k() { return {0, 0, 0, 1}; }
    static constexpr Quat zero() { return {0, 0, 0, 0}; }

    /// Pure imaginary quaternion from R^3 components.
    static constexpr Quat imag(double a, double b, double c) { return {0, a, b, c}; }

    double norm2() const { return w * w + x * x + y * y + z * z; }
    double norm() const { return std::sqrt(norm2()); }

    constexpr double operator[](int n) const {
        return n == 0 ? w : n == 1 ? x : n == 2 ? y : z;
    }
    double& operator[](int n) {
        switch (n) {
            case 0: return w;
            case 1: return x;
            case 2: return y;
            default: return z;
        }
    }

    friend constexpr Quat operator+(const Quat& a, const Quat& b) {
        return {a.w + b.w, a.x + b.x, a.y + b.y, a.z + b.z};
    }
    friend constexpr Quat operator-(const Quat& a, const Quat& b) {
        return {a.w - b.w, a.x - b.x, a.y - b.y, a.z - b.z};
    }
    friend constexpr Quat operator-(const Quat& a) { return {-a.w, -a.x, -a.y, -a.z}; }
    friend constexpr Quat operator*(double s, const Quat& a) {
        return {s * a.w, s * a.x, s * a.y, s * a.z};
    }
    friend constexpr Quat operator*(const Quat& a, double s) { return s * a; }
    friend constexpr Quat operator/(const Quat& a, double s) { return (1.0 / s) * a; }

    Quat& operator+=(const Quat& b) { return *this = *this + b; }
    Quat& operator-=(const Quat& b) { return *this = *this - b; }

    /// Hamilton product.
    friend constexpr Quat operator*(const Quat& a, const Quat& b) {
        return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
                a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
                a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
                a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
    }

    Quat normalized() const {
        const double n = norm();
        if (n == 0.0) throw std::invalid_argument("Quat::normalized: zero quaternion");
        return *this / n;
    }

    bool is_imaginary(double tol = 1e-10) const { return std::abs(w) <= tol * (1.0 + norm()); }
};

constexpr Quat mul(const Quat& a, const Quat& b) { return a * b; }

constexpr Quat conj(const Quat& a) { return {a.w, -a.x, -a.y, -a.z}; }

/// Euclidean inner product of R^4, equal to Re(a * conj(b)).
constexpr double inner(const Quat& a, const Quat& b) {
    return a.w * b.w + a.x * b.x + a.y * b.y + a.z * b.z;
}

/// Cross product of pure imaginary quaternions, Im(a * b).
inline Quat cross(const Quat& a, const Quat& b) {
    if (!a.is_imaginary() || !b.is_imaginary())
        throw std::invalid_argument("cross: arguments must be pure imaginary");
    const Quat p = a * b;
    return {0, p.x, p.y, p.z};
}

/// Projection of v onto the orthogonal complement of the unit vector p.
inline Quat tangent_project(const Quat& p, const Quat& v) { return v - inner(v, p) * p; }

/// The unit vector orthogonal to u, v, w (generalized cross product of R^4).
inline Quat cross4(const Quat& u, const Quat& v, const Quat& w) {
    auto det3 = [](double a0, double a1, double a2, double b0, double b1, double b2, double c0,
                   double c1, double c2) {
        return a0 * (b1 * c2 - b2 * c1) - a1 * (b0 * c2 - b2 * c0) + a2 * (b0 * c1 - b1 * c0);
    };
    Quat r;
    double sign = 1.0;
    for (int n = 0; n < 4; ++n) {
        int m[3], q = 0;
        for (int s = 0; s < 4; ++s)
            if (s != n) m[q++] = s;
        r[n] = sign * det3(u[m[0]], u[m[1]], u[m[2]], v[m[0]], v[m[1]], v[m[2]], w[m[0]], w[m[1]],
                           w[m[2]]);
        sign = -sign;
    }
    return r;
}

}  // namespace gcf
