#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "gcf/numerics.hpp"

using namespace gcf;

TEST_CASE("finite differences") {
    const auto f = [](double h) { return std::exp(0.3 + h); };
    CHECK(std::abs(fd_central(f, 1e-5) - std::exp(0.3)) < 1e-9);
    CHECK(std::abs(fd_second(f, 1e-3) - std::exp(0.3)) < 1e-6);
}

TEST_CASE("rk4 exponential and riccati") {
    std::vector<double> grid;
    for (int n = 0; n <= 100; ++n) grid.push_back(n / 100.0);
    const auto exp_field = [](double, double y) { return y; };
    auto traj = rk4(exp_field, 1.0, grid);
    CHECK(std::abs(traj.back() - std::exp(1.0)) < 1e-8);

    // y' = 1 + y^2, y(0) = 0 has y = tan(t).
    grid.clear();
    const double tmax = std::numbers::pi / 4.0;
    for (int n = 0; n <= 200; ++n) grid.push_back(tmax * n / 200.0);
    const auto ric = [](double, double y) { return 1.0 + y * y; };
    traj = rk4(ric, 0.0, grid);
    CHECK(std::abs(traj.back() - 1.0) < 1e-10);
}

TEST_CASE("rk4 is fourth order") {
    const auto field = [](double t, double y) { return std::cos(t) * y; };
    auto run = [&](int n) {
        std::vector<double> grid;
        for (int m = 0; m <= n; ++m) grid.push_back(2.0 * m / n);
        return rk4(field, 1.0, grid).back();
    };
    const double exact = std::exp(std::sin(2.0));
    const double e1 = std::abs(run(20) - exact);
    const double e2 = std::abs(run(40) - exact);
    CHECK(e1 / e2 > 12.0);
    CHECK(e1 / e2 < 20.0);
}

TEST_CASE("s3 quadrature") {
    const QuadratureSpec spec;
    const double pi2 = std::numbers::pi * std::numbers::pi;
    const double vol = s3_quadrature(spec, [](const Quat&) { return 1.0; });
    CHECK(std::abs(vol - 2.0 * pi2) < 1e-10);

    // integral of <p, e>^2 = vol / 4 = pi^2 / 2 by symmetry.
    for (int axis = 0; axis < 4; ++axis) {
        const double v = s3_quadrature(spec, [axis](const Quat& p) {
            const double c = p[axis];
            return c * c;
        });
        CHECK(std::abs(v - pi2 / 2.0) < 1e-3 * pi2);
    }
    // Odd integrand vanishes by symmetry of the midpoint nodes.
    const double odd = s3_quadrature(spec, [](const Quat& p) { return p.w * p.x * p.y; });
    CHECK(std::abs(odd) < 1e-12);

    double wsum = 0;
    for (std::size_t n = 0; n < spec.node_count(); ++n) {
        const auto [p, w] = spec.node(n);
        CHECK(w > 0);
        CHECK(std::abs(p.norm() - 1.0) < 1e-14);
        wsum += w;
    }
    CHECK(std::abs(wsum - 2.0 * pi2) < 1e-10);
}

TEST_CASE("pairwise_sum deterministic and accurate") {
    std::vector<double> v;
    Rng rng(31);
    for (int k = 0; k < 10000; ++k) v.push_back(rng.uniform(-1, 1));
    const double a = pairwise_sum(v);
    const double b = pairwise_sum(v);
    CHECK(a == b);
    long double ref = 0;
    for (double x : v) ref += x;
    CHECK(std::abs(a - double(ref)) < 1e-10);
}

TEST_CASE("svd2") {
    const Svd2 id = svd2({1, 0, 0, 1});
    CHECK(id.s1 == doctest::Approx(1.0));
    CHECK(id.s2 == doctest::Approx(1.0));

    const Svd2 d = svd2({0.5, 0, 0, 0.2});
    CHECK(d.s1 == doctest::Approx(0.2));
    CHECK(d.s2 == doctest::Approx(0.5));

    Rng rng(32);
    for (int k = 0; k < 500; ++k) {
        std::array<double, 4> m{rng.normal(), rng.normal(), rng.normal(), rng.normal()};
        const Svd2 sv = svd2(m);
        CHECK(sv.s1 >= 0);
        CHECK(sv.s1 <= sv.s2 + 1e-15);
        const double s[2] = {sv.s1, sv.s2};
        for (int c = 0; c < 2; ++c) {
            // m * v_col = sigma * u_col, columns c of v and u.
            const double mv0 = m[0] * sv.v[c] + m[1] * sv.v[2 + c];
            const double mv1 = m[2] * sv.v[c] + m[3] * sv.v[2 + c];
            CHECK(std::abs(mv0 - s[c] * sv.u[c]) < 1e-10);
            CHECK(std::abs(mv1 - s[c] * sv.u[2 + c]) < 1e-10);
        }
        // Orthogonality of the singular frames.
        CHECK(std::abs(sv.v[0] * sv.v[1] + sv.v[2] * sv.v[3]) < 1e-12);
        CHECK(std::abs(sv.u[0] * sv.u[1] + sv.u[2] * sv.u[3]) < 1e-10);
        CHECK(std::abs(sv.v[0] * sv.v[0] + sv.v[2] * sv.v[2] - 1.0) < 1e-12);
        CHECK(std::abs(sv.u[0] * sv.u[0] + sv.u[2] * sv.u[2] - 1.0) < 1e-12);
    }
}

TEST_CASE("gauss_newton") {
    // Intersection of two circles: |x - (1,0)| = 1, |x + (1,0)| = sqrt(2);
    // solutions x = (1/4, +-sqrt(7)/4).
    const auto residual = [](const std::array<double, 2>& x) {
        std::vector<double> r(2);
        r[0] = std::hypot(x[0] - 1.0, x[1]) - 1.0;
        r[1] = std::hypot(x[0] + 1.0, x[1]) - std::sqrt(2.0);
        return r;
    };
    const GaussNewtonResult res = gauss_newton(residual, {0.3, 0.8}, 1e-12, 50);
    CHECK(res.converged);
    CHECK(std::abs(res.x[0] - 0.25) < 1e-9);
    CHECK(std::abs(res.x[1] - std::sqrt(7.0) / 4.0) < 1e-9);
    CHECK(res.residual_norm < 1e-10);

    // Infeasible system: convergence flag must be false, not silent.
    const auto bad = [](const std::array<double, 2>& x) {
        std::vector<double> r(2);
        r[0] = x[0] * x[0] + x[1] * x[1] + 1.0;
        r[1] = x[0] - x[1];
        return r;
    };
    const GaussNewtonResult rb = gauss_newton(bad, {0.5, -0.2}, 1e-12, 30);
    CHECK_FALSE(rb.converged);
}

TEST_CASE("fibonacci_sphere") {
    const auto pts = fibonacci_sphere(200);
    CHECK(pts.size() == 200);
    Quat mean = Quat::zero();
    for (const Quat& p : pts) {
        CHECK(std::abs(p.w) == 0.0);
        CHECK(std::abs(p.norm() - 1.0) < 1e-12);
        mean = mean + p;
    }
    CHECK((mean / 200.0).norm() < 0.05);
}

TEST_CASE("parallel_for covers all indices") {
    std::vector<int> hits(1000, 0);
    parallel_for(hits.size(), [&](std::size_t i) { hits[i] += 1; });
    CHECK(std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; }));
}

TEST_CASE("rng determinism") {
    Rng a(42), b(42);
    for (int k = 0; k < 100; ++k) {
        CHECK(a.next() == b.next());
    }
    Rng c(43);
    for (int k = 0; k < 200; ++k) {
        CHECK(std::abs(c.unit_s3().norm() - 1.0) < 1e-12);
        const Quat q = c.unit_imag();
        CHECK(q.w == 0.0);
        CHECK(std::abs(q.norm() - 1.0) < 1e-12);
        const double u = c.uniform(2.0, 3.0);
        CHECK(u >= 2.0);
        CHECK(u < 3.0);
    }
}
