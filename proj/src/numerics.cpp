#include "gcf/numerics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <stdexcept>
#include <thread>

namespace gcf {

std::pair<Quat, double> QuadratureSpec::node(std::size_t n) const {
    const auto nt = std::size_t(n_theta), n1 = std::size_t(n_phi1), n2 = std::size_t(n_phi2);
    const std::size_t a = n / (n1 * n2);
    const std::size_t b = (n / n2) % n1;
    const std::size_t c = n % n2;
    const double dt = (std::numbers::pi / 2.0) / double(nt);
    const double d1 = 2.0 * std::numbers::pi / double(n1);
    const double d2 = 2.0 * std::numbers::pi / double(n2);
    const double theta = (double(a) + 0.5) * dt;
    const double phi1 = (double(b) + 0.5) * d1;
    const double phi2 = (double(c) + 0.5) * d2;
    const Quat p{std::cos(theta) * std::cos(phi1), std::cos(theta) * std::sin(phi1),
                 std::sin(theta) * std::cos(phi2), std::sin(theta) * std::sin(phi2)};
    // Exact integral of the density cos(theta) sin(theta) over the theta cell,
    // so the weights sum to vol(S^3) = 2 pi^2 exactly (up to roundoff).
    const double s_lo = std::sin(double(a) * dt), s_hi = std::sin(double(a + 1) * dt);
    const double w = 0.5 * (s_hi * s_hi - s_lo * s_lo) * d1 * d2;
    return {p, w};
}

double s3_quadrature(const QuadratureSpec& spec, const std::function<double(const Quat&)>& fn) {
    std::vector<double> terms(spec.node_count());
    parallel_for(terms.size(), [&](std::size_t n) {
        auto [p, w] = spec.node(n);
        terms[n] = w * fn(p);
    });
    return pairwise_sum(std::move(terms));
}

double pairwise_sum(std::vector<double> values) {
    if (values.empty()) return 0.0;
    std::size_t n = values.size();
    while (n > 1) {
        const std::size_t half = n / 2;
        for (std::size_t m = 0; m < half; ++m) values[m] = values[2 * m] + values[2 * m + 1];
        if (n % 2) values[half] = values[n - 1];
        n = half + n % 2;
    }
    return values[0];
}

Svd2 svd2(const std::array<double, 4>& m) {
    const double a = m[0], b = m[1], c = m[2], d = m[3];
    // Eigen-decomposition of M^T M (symmetric positive semidefinite).
    const double p = a * a + c * c;
    const double q = a * b + c * d;
    const double r = b * b + d * d;
    const double tr = p + r;
    const double disc = std::sqrt(std::max(0.0, (p - r) * (p - r) + 4.0 * q * q));
    const double l2 = 0.5 * (tr + disc);
    const double l1 = std::max(0.0, 0.5 * (tr - disc));

    Svd2 out;
    out.s1 = std::sqrt(l1);
    out.s2 = std::sqrt(std::max(l1, l2));

    // Right singular vector for the large eigenvalue.
    double v2x, v2y;
    if (std::abs(q) > 1e-300) {
        v2x = q;
        v2y = l2 - p;
    } else if (p >= r) {
        v2x = 1;
        v2y = 0;
    } else {
        v2x = 0;
        v2y = 1;
    }
    const double nv = std::hypot(v2x, v2y);
    v2x /= nv;
    v2y /= nv;
    const double v1x = -v2y, v1y = v2x;  // orthogonal complement

    auto left_of = [&](double vx, double vy, double sigma, double ox, double oy,
                       double& ux, double& uy) {
        ux = a * vx + b * vy;
        uy = c * vx + d * vy;
        const double nn = std::hypot(ux, uy);
        if (sigma > 1e-14 && nn > 1e-300) {
            ux /= nn;
            uy /= nn;
        } else {  // null direction: complete orthonormally
            ux = -oy;
            uy = ox;
        }
    };
    double u2x, u2y, u1x, u1y;
    left_of(v2x, v2y, out.s2, 0, 0, u2x, u2y);
    left_of(v1x, v1y, out.s1, u2x, u2y, u1x, u1y);
    if (out.s2 <= 1e-14) {  // both null: identity frames
        u2x = v2x;
        u2y = v2y;
        u1x = v1x;
        u1y = v1y;
    }
    out.v = {v1x, v2x, v1y, v2y};
    out.u = {u1x, u2x, u1y, u2y};
    return out;
}

GaussNewtonResult gauss_newton(
    const std::function<std::vector<double>(const std::array<double, 2>&)>& residual,
    std::array<double, 2> x0, double tol, int max_iter) {
    auto norm = [](const std::vector<double>& r) {
        double s = 0;
        for (double v : r) s += v * v;
        return std::sqrt(s);
    };
    GaussNewtonResult out;
    out.x = x0;
    std::vector<double> r = residual(x0);
    out.residual_norm = norm(r);

    const double jac_h = 1e-7;
    for (int it = 0; it < max_iter && out.residual_norm > tol; ++it) {
        out.iterations = it + 1;
        const std::size_t k = r.size();
        std::vector<double> j0(k), j1(k);
        for (int col = 0; col < 2; ++col) {
            auto xp = out.x, xm = out.x;
            xp[col] += jac_h;
            xm[col] -= jac_h;
            const auto rp = residual(xp), rm = residual(xm);
            auto& dst = col == 0 ? j0 : j1;
            for (std::size_t n = 0; n < k; ++n) dst[n] = (rp[n] - rm[n]) / (2.0 * jac_h);
        }
        // Normal equations J^T J dx = -J^T r.
        double g00 = 0, g01 = 0, g11 = 0, b0 = 0, b1 = 0;
        for (std::size_t n = 0; n < k; ++n) {
            g00 += j0[n] * j0[n];
            g01 += j0[n] * j1[n];
            g11 += j1[n] * j1[n];
            b0 -= j0[n] * r[n];
            b1 -= j1[n] * r[n];
        }
        const double det = g00 * g11 - g01 * g01;
        if (std::abs(det) < 1e-300) break;
        double dx0 = (g11 * b0 - g01 * b1) / det;
        double dx1 = (g00 * b1 - g01 * b0) / det;

        bool accepted = false;
        double scale = 1.0;
        for (int halving = 0; halving < 12; ++halving) {
            const std::array<double, 2> cand{out.x[0] + scale * dx0, out.x[1] + scale * dx1};
            const auto rc = residual(cand);
            const double nc = norm(rc);
            if (nc < out.residual_norm) {
                out.x = cand;
                r = rc;
                out.residual_norm = nc;
                accepted = true;
                break;
            }
            scale *= 0.5;
        }
        if (!accepted) break;
    }
    out.converged = out.residual_norm <= tol;
    return out;
}

std::vector<Quat> fibonacci_sphere(int n) {
    if (n < 1) throw std::invalid_argument("fibonacci_sphere: n must be positive");
    std::vector<Quat> pts;
    pts.reserve(std::size_t(n));
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (int m = 0; m < n; ++m) {
        const double z = 1.0 - 2.0 * (double(m) + 0.5) / double(n);
        const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
        const double phi = golden * double(m);
        pts.push_back(Quat::imag(rho * std::cos(phi), rho * std::sin(phi), z));
    }
    return pts;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
    unsigned workers = std::thread::hardware_concurrency();
    if (const char* env = std::getenv("FIBLAB_THREADS")) {
        const long cap = std::strtol(env, nullptr, 10);
        if (cap > 0) workers = std::min<unsigned>(workers, unsigned(cap));
    }
    if (workers <= 1 || n < 64) {
        for (std::size_t m = 0; m < n; ++m) fn(m);
        return;
    }
    std::vector<std::thread> pool;
    std::atomic<std::size_t> next{0};
    for (unsigned t = 0; t < workers; ++t) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t m = next.fetch_add(16);
                if (m >= n) return;
                const std::size_t hi = std::min(n, m + 16);
                for (std::size_t s = m; s < hi; ++s) fn(s);
            }
        });
    }
    for (auto& t : pool) t.join();
}

std::uint64_t Rng::next() {
    // splitmix64
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double Rng::uniform(double lo, double hi) {
    const double u = double(next() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
}

double Rng::normal() {
    double u1 = uniform(), u2 = uniform();
    while (u1 <= 1e-300) u1 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Quat Rng::unit_imag() {
    for (;;) {
        const Quat q = Quat::imag(normal(), normal(), normal());
        if (q.norm() > 1e-6) return q.normalized();
    }
}

Quat Rng::unit_s3() {
    for (;;) {
        const Quat q{normal(), normal(), normal(), normal()};
        if (q.norm() > 1e-6) return q.normalized();
    }
}

}  // namespace gcf
