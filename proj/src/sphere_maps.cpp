#include "gcf/sphere_maps.hpp"

#include <cmath>
#include <stdexcept>

namespace gcf {

namespace {

Quat check_unit_imag(const Quat& x, const char* what) {
    if (!x.is_imaginary() || std::abs(x.norm() - 1.0) > 1e-8)
        throw std::invalid_argument(std::string(what) + ": expected a unit imaginary quaternion");
    return x;
}

Quat rotate3(const std::array<double, 9>& r, const Quat& x) {
    return Quat::imag(r[0] * x.x + r[1] * x.y + r[2] * x.z,
                      r[3] * x.x + r[4] * x.y + r[5] * x.z,
                      r[6] * x.x + r[7] * x.y + r[8] * x.z);
}

}  // namespace

MapSpec MapSpec::constant(const Quat& value, std::string name) {
    MapSpec g;
    g.kind = Kind::Constant;
    g.q = check_unit_imag(value, "MapSpec::constant");
    g.name = std::move(name);
    return g;
}

MapSpec MapSpec::cap_contraction(const Quat& axis, double eps, std::string name) {
    if (!(eps > 0.0 && eps < 0.5))
        throw std::invalid_argument("MapSpec::cap_contraction: eps must lie in (0, 0.5)");
    MapSpec g;
    g.kind = Kind::CapContraction;
    g.q = check_unit_imag(axis, "MapSpec::cap_contraction");
    g.eps = eps;
    g.name = std::move(name);
    return g;
}

MapSpec MapSpec::pre_rotated(const std::array<double, 9>& rotation, MapSpec inner,
                             std::string name) {
    // Orthogonality check, det +1.
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
            double dot = 0;
            for (int c = 0; c < 3; ++c) dot += rotation[3 * a + c] * rotation[3 * b + c];
            if (std::abs(dot - (a == b ? 1.0 : 0.0)) > 1e-8)
                throw std::invalid_argument("MapSpec::pre_rotated: matrix is not orthogonal");
        }
    const double det =
        rotation[0] * (rotation[4] * rotation[8] - rotation[5] * rotation[7]) -
        rotation[1] * (rotation[3] * rotation[8] - rotation[5] * rotation[6]) +
        rotation[2] * (rotation[3] * rotation[7] - rotation[4] * rotation[6]);
    if (std::abs(det - 1.0) > 1e-8)
        throw std::invalid_argument("MapSpec::pre_rotated: matrix must be a rotation (det 1)");
    MapSpec g;
    g.kind = Kind::PreRotated;
    g.rot = rotation;
    g.inner = std::make_shared<MapSpec>(std::move(inner));
    g.name = std::move(name);
    return g;
}

Quat eval(const MapSpec& g, const Quat& x) {
    switch (g.kind) {
        case MapSpec::Kind::Constant: return g.q;
        case MapSpec::Kind::CapContraction: {
            const Quat n = (1.0 - g.eps) * g.q + g.eps * x;
            return n.normalized();
        }
        case MapSpec::Kind::PreRotated: return eval(*g.inner, rotate3(g.rot, x));
    }
    throw std::logic_error("eval: unknown MapSpec kind");
}

Quat differential(const MapSpec& g, const Quat& x, const Quat& v) {
    const double speed = v.norm();
    if (speed < 1e-14) return Quat::zero();
    const Quat vh = v / speed;
    constexpr double h = 1e-5;
    const Quat d = fd_central(
        [&](double s) { return eval(g, (std::cos(s) * x + std::sin(s) * vh).normalized()); }, h);
    return speed * tangent_project(eval(g, x), d);
}

std::pair<Quat, Quat> tangent_frame_s2(const Quat& x) {
    check_unit_imag(x, "tangent_frame_s2");
    const Quat refs[3] = {Quat::i(), Quat::j(), Quat::k()};
    for (const Quat& ref : refs) {
        const Quat t = tangent_project(x, ref);
        if (t.norm() >= 0.5) {
            const Quat t1 = t.normalized();
            return {t1, cross(x, t1)};
        }
    }
    throw std::logic_error("tangent_frame_s2: no admissible reference");  // unreachable
}

std::pair<double, double> singular_values(const MapSpec& g, const Quat& x) {
    const auto [t1, t2] = tangent_frame_s2(x);
    const auto [s1, s2] = tangent_frame_s2(eval(g, x));
    const Quat d1 = differential(g, x, t1);
    const Quat d2 = differential(g, x, t2);
    const auto sv = svd2({inner(d1, s1), inner(d2, s1), inner(d1, s2), inner(d2, s2)});
    return {sv.s1, sv.s2};
}

DilationCertificate certify_decreasing(const MapSpec& g, int n_samples, double margin) {
    if (n_samples < 100)
        throw std::invalid_argument("certify_decreasing: need at least 100 samples");
    const auto pts = fibonacci_sphere(n_samples);
    std::vector<double> sup(pts.size());
    parallel_for(pts.size(), [&](std::size_t n) { sup[n] = singular_values(g, pts[n]).second; });
    DilationCertificate cert;
    cert.n_samples = n_samples;
    cert.margin = margin;
    for (double s : sup) cert.sup_sv = std::max(cert.sup_sv, s);
    cert.decreasing = cert.sup_sv < 1.0 - margin;
    return cert;
}

}  // namespace gcf
