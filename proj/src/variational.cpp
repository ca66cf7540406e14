#include "gcf/variational.hpp"

#include <cmath>
#include <stdexcept>

namespace gcf {

namespace {

constexpr double kPi = 3.1415926535897932384626433832795;
constexpr double kFdFirst = 1e-4;
constexpr double kFdSecond = 1e-3;

Quat geodesic(const Quat& p, const Quat& dir, double s) {
    return (std::cos(s) * p + std::sin(s) * dir).normalized();
}

/// Hessian term nabla^2_{a,a} zeta = P_p(second FD of zeta along the geodesic)
/// + <zeta(p), a> a, for unit a (the correction is the c'' = -c term of the
/// ambient expansion; it vanishes for a ⊥ zeta).
Quat hessian_diag(const Fibration& fib, const Quat& p, const Quat& a, const Quat& zeta_p,
                  const Quat& hint_x, double h = kFdSecond) {
    const Quat second =
        fd_second([&](double s) { return fib.zeta(geodesic(p, a, s), hint_x); }, h);
    return tangent_project(p, second) + inner(zeta_p, a) * a;
}

/// Quotient map f(q) = conj(q) * zeta(q), a point of S^2 in Im H.
Quat quotient_map(const Fibration& fib, const Quat& q, const Quat& hint_x) {
    return conj(q) * fib.zeta(q, hint_x);
}

double det3(const std::array<double, 9>& m) {
    return m[0] * (m[4] * m[8] - m[5] * m[7]) - m[1] * (m[3] * m[8] - m[5] * m[6]) +
           m[2] * (m[3] * m[7] - m[4] * m[6]);
}

/// Solves the symmetric positive definite 3x3 system G w = c by Cramer.
std::array<double, 3> solve3(const std::array<double, 9>& G, const std::array<double, 3>& c) {
    const double d = det3(G);
    if (std::abs(d) < 1e-14) throw std::domain_error("solve3: singular Gram matrix");
    std::array<double, 3> w{};
    for (int col = 0; col < 3; ++col) {
        std::array<double, 9> m = G;
        for (int row = 0; row < 3; ++row) m[std::size_t(3 * row + col)] = c[std::size_t(row)];
        w[std::size_t(col)] = det3(m) / d;
    }
    return w;
}

}  // namespace

Quat rough_laplacian(const Fibration& fib, const Quat& p, double h) {
    const Frame fr = frame_at(fib, p);
    const Quat x = fib.solve_fiber(p).x;
    Quat sum = Quat::zero();
    for (const Quat& a : {fr.a1, fr.a2, fr.a3}) sum += hessian_diag(fib, p, a, fr.a1, x, h);
    return sum;
}

double grad_norm2(const Fibration& fib, const Quat& p) {
    const Frame fr = frame_at(fib, p);
    const Quat x = fib.solve_fiber(p).x;
    double g2 = 0;
    for (const Quat& a : {fr.a1, fr.a2, fr.a3})
        g2 += covariant_derivative(fib, p, a, kFdFirst, x).norm2();
    return g2;
}

Quat tension_f(const Fibration& fib, const Quat& p, double h) {
    const Frame fr = frame_at(fib, p);
    const Quat x = fib.solve_fiber(p).x;
    const Quat f0 = quotient_map(fib, p, x);
    Quat tau = Quat::zero();
    for (const Quat& a : {fr.a1, fr.a2, fr.a3}) {
        const Quat second = fd_second(
            [&](double s) { return quotient_map(fib, geodesic(p, a, s), x); }, h);
        tau += second - inner(second, f0) * f0;
    }
    return tau;
}

TensionReport laplacian_identity(const Fibration& fib, const Quat& p, double h) {
    TensionReport rep;
    rep.p = p;
    const Quat lap = rough_laplacian(fib, p, h);
    const double g2 = grad_norm2(fib, p);
    const Quat zeta_p = fib.zeta(p);
    const Quat tau = tension_f(fib, p, h);
    rep.harmonic_residual = (lap + g2 * zeta_p).norm();
    rep.tension_norm = tau.norm();
    rep.identity_residual = (lap + g2 * zeta_p - p * tau).norm();
    return rep;
}

double hessian_identity_residual(const Fibration& fib, const Quat& p) {
    const Frame fr = frame_at(fib, p);
    const Quat x = fib.solve_fiber(p).x;

    // Extension of a horizontal vector by projection and normalization.
    auto extend = [&](const Quat& aref, const Quat& q) {
        const Quat zq = fib.zeta(q, x);
        return (aref - inner(aref, q) * q - inner(aref, zq) * zq).normalized();
    };
    auto df = [&](const Quat& q, const Quat& w) {
        const double speed = w.norm();
        if (speed < 1e-14) return Quat::zero();
        const Quat wh = w / speed;
        const Quat fq = quotient_map(fib, q, x);
        const Quat d = fd_central(
            [&](double s) { return quotient_map(fib, geodesic(q, wh, s), x); }, kFdFirst);
        return speed * (d - inner(d, fq) * fq);
    };

    const Quat f0 = quotient_map(fib, p, x);
    double worst = 0;
    for (const Quat& X : {fr.a2, fr.a3})
        for (const Quat& Yref : {fr.a2, fr.a3}) {
            auto at = [&](double s) { return geodesic(p, X, s); };
            // nabla_X (nabla_{Y~} zeta) and nabla_X Y~ by outer central FD.
            const Quat dcov = tangent_project(
                p, fd_central(
                       [&](double s) {
                           const Quat q = at(s);
                           return covariant_derivative(fib, q, extend(Yref, q), kFdFirst, x);
                       },
                       kFdSecond));
            const Quat dY = tangent_project(
                p, fd_central([&](double s) { return extend(Yref, at(s)); }, kFdSecond));
            const Quat hess = dcov - covariant_derivative(fib, p, dY, kFdFirst, x);

            // Hessian of f: nabla^f_X df(Y~) - df(nabla_X Y~).
            const Quat ddf = fd_central(
                [&](double s) {
                    const Quat q = at(s);
                    return df(q, extend(Yref, q));
                },
                kFdSecond);
            const Quat Bf = (ddf - inner(ddf, f0) * f0) - df(p, dY);

            const Quat gradX = covariant_derivative(fib, p, X, kFdFirst, x);
            const Quat gradY = covariant_derivative(fib, p, Yref, kFdFirst, x);
            const Quat rhs = p * Bf - inner(gradX, gradY) * fr.a1;
            worst = std::max(worst, (hess - rhs).norm());
        }
    return worst;
}

USphereVec mean_curvature_zeta(const Fibration& fib, const Quat& p, HZetaVariant variant) {
    const Frame fr = frame_at(fib, p);
    const Quat x = fib.solve_fiber(p).x;
    const PhiTensor phi = phi_at(fib, fr);

    // Matrix of phi in the basis (a2, a3): column i holds the components of
    // phi(a_{2+i}).
    const Svd2 sv = svd2({phi.f22, phi.f32, phi.f23, phi.f33});
    const double lam[2] = {sv.s1, sv.s2};
    Quat v[2], beta[2];
    for (int i = 0; i < 2; ++i) {
        v[i] = sv.v[std::size_t(i)] * fr.a2 + sv.v[std::size_t(2 + i)] * fr.a3;
        beta[i] = sv.u[std::size_t(i)] * fr.a2 + sv.u[std::size_t(2 + i)] * fr.a3;
    }

    const Quat hess0 = hessian_diag(fib, p, fr.a1, fr.a1, x);
    const Quat hess[2] = {hessian_diag(fib, p, v[0], fr.a1, x),
                          hessian_diag(fib, p, v[1], fr.a1, x)};

    USphereVec H{Quat::zero(), Quat::zero()};
    for (int a = 0; a < 2; ++a) {
        const double wa = 1.0 + lam[a] * lam[a];
        double coef = inner(hess0, beta[a]);
        for (int i = 0; i < 2; ++i) {
            const double wi = 1.0 + lam[i] * lam[i];
            const double div = (variant == HZetaVariant::SingleDivision) ? wi : wi * wi;
            // Constant curvature: R(X,Y,Z,W) = <Y,Z><X,W> - <X,Z><Y,W>;
            // vanishes here since the e's are horizontal and zeta vertical.
            const Quat ea = v[a] / std::sqrt(wa);
            const Quat ei = v[i] / std::sqrt(wi);
            const double R = inner(ei, fr.a1) * inner(ea, beta[i]) -
                             inner(ea, fr.a1) * inner(ei, beta[i]);
            coef += (inner(hess[i], beta[a]) - lam[a] * lam[i] * R) / div;
        }
        // Unit normal of the embedding at zeta(p): (lambda v, beta)/sqrt(1+lambda^2);
        // the sign is fixed by <xi_a, d zeta(v_a)>_Sasaki = 0 with
        // grad_{v_a} zeta = -lambda_a beta_a.
        const USphereVec xi{(lam[a] / std::sqrt(wa)) * v[a], (1.0 / std::sqrt(wa)) * beta[a]};
        const double scale = coef / std::sqrt(wa);
        H.w1 += scale * xi.w1;
        H.w2 += scale * xi.w2;
    }
    return H;
}

Bivector stiefel_T(const Quat& x, const Quat& u) { return wedge(x, u); }

Bivector stiefel_dT(const Quat& x, const Quat& u, const USphereVec& Z) {
    return wedge(Z.w1, u) + wedge(x, Z.w2);
}

double submersion_residual(const Quat& x, const Quat& u, const USphereVec& Z1,
                           const USphereVec& Z2) {
    if (std::abs(x.norm() - 1.0) > 1e-10 || std::abs(u.norm() - 1.0) > 1e-10 ||
        std::abs(inner(x, u)) > 1e-10)
        throw std::invalid_argument("submersion_residual: (x, u) must be a unit orthogonal pair");
    for (const USphereVec* Z : {&Z1, &Z2})
        if (std::abs(inner(Z->w1, u)) > 1e-10 || std::abs(inner(Z->w2, u)) > 1e-10 ||
            std::abs(inner(Z->w2, x)) > 1e-10)
            throw std::invalid_argument(
                "submersion_residual: need w1 ⊥ u, w2 ⊥ u, w2 ⊥ x for both arguments");
    const double lhs = inner2(stiefel_dT(x, u, Z1), stiefel_dT(x, u, Z2));
    const double rhs = inner(Z1.w1, Z2.w1) + inner(Z1.w2, Z2.w2);
    return std::abs(lhs - rhs);
}

Bivector graph_mean_curvature(const Fibration& fib, const Quat& x) {
    const MapSpec& g = fib.map();
    const auto [t1, t2] = tangent_frame_s2(x);
    auto chart = [&, t1 = t1, t2 = t2](double u1, double u2) {
        const Quat v = u1 * t1 + u2 * t2;
        const double r = v.norm();
        const Quat q = (r < 1e-300) ? x : (std::cos(r) * x + (std::sin(r) / r) * v).normalized();
        return iota_point(q, Side::Minus) + iota_point(eval(g, q), Side::Plus);
    };

    const double h = 1e-3;
    const Bivector G0 = chart(0, 0);
    const Bivector G1 = (chart(h, 0) - chart(-h, 0)) / (2.0 * h);
    const Bivector G2 = (chart(0, h) - chart(0, -h)) / (2.0 * h);
    const Bivector G11 = (chart(h, 0) - 2.0 * G0 + chart(-h, 0)) / (h * h);
    const Bivector G22 = (chart(0, h) - 2.0 * G0 + chart(0, -h)) / (h * h);
    const Bivector G12 =
        (chart(h, h) - chart(h, -h) - chart(-h, h) + chart(-h, -h)) / (4.0 * h * h);

    // Normal projection within T(S^2 x S^2): remove the two sphere-radial
    // directions, then the surface-tangent directions.
    const auto [g0m, g0p] = split_pm(G0);
    auto project_normal = [&](Bivector b) {
        auto [bm, bp] = split_pm(b);
        bm = bm - (inner2(bm, g0m) / g0m.norm2()) * g0m;
        bp = bp - (inner2(bp, g0p) / g0p.norm2()) * g0p;
        b = bm + bp;
        const Bivector e1 = G1 / G1.norm();
        Bivector e2 = G2 - inner2(G2, e1) * e1;
        e2 = e2 / e2.norm();
        b = b - inner2(b, e1) * e1 - inner2(b, e2) * e2;
        return b;
    };

    const double g11 = inner2(G1, G1), g12 = inner2(G1, G2), g22 = inner2(G2, G2);
    const double det = g11 * g22 - g12 * g12;
    if (std::abs(det) < 1e-14)
        throw std::domain_error("graph_mean_curvature: degenerate first fundamental form");
    return project_normal((g22 / det) * G11 - (2.0 * g12 / det) * G12 + (g11 / det) * G22);
}

CurvatureReport mean_curvature_relation(const Fibration& fib, const Quat& x,
                                        HZetaVariant variant) {
    CurvatureReport rep;
    rep.x = x;
    const FiberCoord c{x, 0.0};
    const Quat p = fib.circle(c);
    const Quat zeta_p = fib.zeta_on_fiber(c);
    const USphereVec H = mean_curvature_zeta(fib, p, variant);
    const Bivector dTH = stiefel_dT(p, zeta_p, H);
    const Bivector HG = graph_mean_curvature(fib, x);
    rep.H_zeta_norm = H.norm();
    rep.H_graph_norm = HG.norm();
    rep.relation_residual = (dTH - HG).norm();
    return rep;
}

double fiber_geodesy_residual(const Fibration& fib, const Quat& p) {
    const Frame fr = frame_at(fib, p);
    const FiberCoord fc = fib.solve_fiber(p);
    const Quat x = fc.x;

    auto grad_zeta = [&](const Quat& q, const Quat& w) {
        return covariant_derivative(fib, q, w, kFdFirst, x);
    };
    // Extensions X_j(q) = P_q(A_j) of the frame by constant ambient vectors.
    const Quat frame[3] = {fr.a1, fr.a2, fr.a3};
    std::array<double, 3> c{};
    for (int j = 0; j < 3; ++j) {
        const Quat A = frame[std::size_t(j)];

        // zeta( g~(zeta, X_j) ): derivative along the fiber itself.
        auto psi = [&](double s) {
            const FiberCoord cs{x, fc.t + s};
            const Quat q = fib.circle(cs);
            const Quat zq = fib.zeta_on_fiber(cs);
            const Quat Xq = A - inner(A, q) * q;
            return inner(zq, Xq) + inner(grad_zeta(q, zq), grad_zeta(q, Xq));
        };
        const double term1 = fd_central(psi, kFdSecond);

        // X_j( g~(zeta, zeta) ) = X_j( 1 + |grad_zeta zeta|^2 ).
        auto phi2 = [&](double s) {
            const Quat q = geodesic(p, A, s);
            const Quat zq = fib.zeta(q, x);
            return grad_zeta(q, zq).norm2();
        };
        const double term2 = fd_central(phi2, kFdSecond);

        // [X_j, zeta] = grad_{X_j} zeta - grad_zeta X_j, with
        // grad_zeta (P_q A) = -<A, p> zeta at p.
        const Quat bracket = grad_zeta(p, A) + inner(A, p) * fr.a1;
        const double term3 =
            inner(bracket, fr.a1) + inner(grad_zeta(p, bracket), grad_zeta(p, fr.a1));

        c[std::size_t(j)] = term1 - 0.5 * term2 + term3;
    }

    // Gram matrix of the pullback metric on the frame.
    Quat grads[3];
    for (int j = 0; j < 3; ++j) grads[std::size_t(j)] = grad_zeta(p, frame[std::size_t(j)]);
    std::array<double, 9> G{};
    for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k)
            G[std::size_t(3 * j + k)] =
                inner(frame[std::size_t(j)], frame[std::size_t(k)]) +
                inner(grads[std::size_t(j)], grads[std::size_t(k)]);
    const auto w = solve3(G, c);
    double n2 = 0;
    for (int j = 0; j < 3; ++j) n2 += w[std::size_t(j)] * c[std::size_t(j)];
    return std::sqrt(std::max(0.0, n2));
}

CrReport cauchy_riemann_residuals(const Fibration& fib, const Quat& p) {
    const Frame fr = frame_at(fib, p);
    const PhiTensor phi0 = phi_at(fib, fr);

    // u and v are frame rotation invariants of phi, hence well-defined scalar
    // fields; evaluated through the deterministic frame at each point.
    auto uv = [&](const Quat& q) {
        const PhiTensor ph = phi_at(fib, frame_at(fib, q));
        return std::pair<double, double>{ph.trace_j(), ph.trace()};
    };
    auto duv = [&](const Quat& dir) {
        const auto [up, vp] = uv(geodesic(p, dir, kFdSecond));
        const auto [um, vm] = uv(geodesic(p, dir, -kFdSecond));
        return std::pair<double, double>{(up - um) / (2.0 * kFdSecond),
                                         (vp - vm) / (2.0 * kFdSecond)};
    };

    const auto [d2u, d2v] = duv(fr.a2);
    const auto [d3u, d3v] = duv(fr.a3);
    const auto [d1u, d1v] = duv(fr.a1);

    CrReport rep;
    rep.cr_a2u_a3v = std::abs(d2u - d3v);
    rep.cr_a3u_a2v = std::abs(d3u + d2v);
    const double u0 = phi0.trace_j(), v0 = phi0.trace(), opd = 1.0 + phi0.det();
    rep.fiber_v = std::abs(d1v - (v0 * v0 - 2.0 * opd + 4.0));
    rep.fiber_u = std::abs(d1u - u0 * v0);
    return rep;
}

namespace {

FunctionalReport functionals_once(const Fibration& fib, const QuadratureSpec& grid) {
    const std::size_t n = grid.node_count();
    std::vector<double> e_terms(n), v_terms(n);
    parallel_for(n, [&](std::size_t k) {
        const auto [p, wgt] = grid.node(k);
        const FiberCoord c = fib.solve_fiber(p);
        const Quat a1 = fib.zeta_on_fiber(c);
        const auto [xi, eta] = fib.generators(c.x);
        const auto [b2, b3] = plane_complement(xi, eta);
        const Quat frame[3] = {a1, b2, b3};
        Quat d[3];
        double g2 = 0;
        for (int i = 0; i < 3; ++i) {
            d[i] = covariant_derivative(fib, p, frame[i], kFdFirst, c.x);
            g2 += d[i].norm2();
        }
        std::array<double, 9> N{};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) N[std::size_t(3 * i + j)] = inner(d[i], frame[j]);
        std::array<double, 9> M{};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                double s = (i == j) ? 1.0 : 0.0;
                for (int r = 0; r < 3; ++r)
                    s += N[std::size_t(3 * r + i)] * N[std::size_t(3 * r + j)];
                M[std::size_t(3 * i + j)] = s;
            }
        e_terms[k] = wgt * 0.5 * g2;
        v_terms[k] = wgt * std::sqrt(std::max(0.0, det3(M)));
    });
    FunctionalReport rep;
    rep.quadrature_nodes = n;
    rep.energy = 1.5 * 2.0 * kPi * kPi + pairwise_sum(std::move(e_terms));
    rep.volume = pairwise_sum(std::move(v_terms));
    return rep;
}

}  // namespace

FunctionalReport functionals(const Fibration& fib, const QuadratureSpec& grid) {
    FunctionalReport rep = functionals_once(fib, grid);
    QuadratureSpec half;
    half.n_theta = std::max(4, grid.n_theta / 2);
    half.n_phi1 = std::max(4, grid.n_phi1 / 2);
    half.n_phi2 = std::max(4, grid.n_phi2 / 2);
    const FunctionalReport coarse = functionals_once(fib, half);
    rep.estimated_error = std::max(std::abs(rep.energy - coarse.energy),
                                   std::abs(rep.volume - coarse.volume));
    return rep;
}

FunctionalReport energy(const Fibration& fib, const QuadratureSpec& grid) {
    return functionals(fib, grid);
}

FunctionalReport volume(const Fibration& fib, const QuadratureSpec& grid) {
    return functionals(fib, grid);
}

}  // namespace gcf
