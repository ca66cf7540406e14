#include <doctest.h>

#include <cmath>

#include "gcf/lambda2.hpp"
#include "gcf/numerics.hpp"

using namespace gcf;

namespace {
double bdist(const Bivector& a, const Bivector& b) { return (a - b).norm(); }
}  // namespace

TEST_CASE("wedge basics") {
    const Bivector e12 = wedge(Quat::one(), Quat::i());
    CHECK(e12.a12 == 1.0);
    CHECK(bdist(e12, Bivector{1, 0, 0, 0, 0, 0}) == 0.0);
    CHECK(bdist(wedge(Quat::i(), Quat::one()), -e12) == 0.0);
    CHECK(wedge(Quat::j(), Quat::j()).norm() == 0.0);

    Rng rng(21);
    for (int k = 0; k < 500; ++k) {
        const Quat v = rng.unit_s3() * rng.uniform(0.1, 2.0);
        const Quat w = rng.unit_s3() * rng.uniform(0.1, 2.0);
        const double lhs = wedge(v, w).norm2();
        const double rhs = v.norm2() * w.norm2() - inner(v, w) * inner(v, w);
        CHECK(std::abs(lhs - rhs) < 1e-12);
    }
}

TEST_CASE("inner2 orthonormal basis") {
    const Quat e[4] = {Quat::one(), Quat::i(), Quat::j(), Quat::k()};
    for (int a = 0; a < 4; ++a)
        for (int b = a + 1; b < 4; ++b)
            for (int c = 0; c < 4; ++c)
                for (int d = c + 1; d < 4; ++d) {
                    const double v = inner2(wedge(e[a], e[b]), wedge(e[c], e[d]));
                    CHECK(v == ((a == c && b == d) ? 1.0 : 0.0));
                }
}

TEST_CASE("hodge star") {
    CHECK(bdist(hodge(wedge(Quat::one(), Quat::i())), wedge(Quat::j(), Quat::k())) == 0.0);
    CHECK(bdist(hodge(wedge(Quat::one(), Quat::j())), -wedge(Quat::i(), Quat::k())) == 0.0);
    CHECK(bdist(hodge(wedge(Quat::one(), Quat::k())), wedge(Quat::i(), Quat::j())) == 0.0);
    Rng rng(22);
    for (int k = 0; k < 200; ++k) {
        Bivector w;
        w.a12 = rng.normal(); w.a13 = rng.normal(); w.a14 = rng.normal();
        w.a23 = rng.normal(); w.a24 = rng.normal(); w.a34 = rng.normal();
        CHECK(bdist(hodge(hodge(w)), w) < 1e-14);
        CHECK(std::abs(hodge(w).norm2() - w.norm2()) < 1e-12);
    }
}

TEST_CASE("is_simple") {
    CHECK(is_simple(wedge(Quat::one(), Quat::i())));
    const Bivector not_simple = wedge(Quat::one(), Quat::i()) + wedge(Quat::j(), Quat::k());
    CHECK_FALSE(is_simple(not_simple));
    Rng rng(23);
    for (int k = 0; k < 200; ++k) {
        CHECK(is_simple(wedge(rng.unit_s3(), rng.unit_s3())));
    }
}

TEST_CASE("split_pm") {
    const Bivector w = wedge(Quat::one(), Quat::i());
    const auto [m, p] = split_pm(w);
    // (e12 - e34)/2 and (e12 + e34)/2.
    CHECK(bdist(m, Bivector{0.5, 0, 0, 0, 0, -0.5}) < 1e-15);
    CHECK(bdist(p, Bivector{0.5, 0, 0, 0, 0, 0.5}) < 1e-15);
    CHECK(bdist(hodge(m), -m) < 1e-15);
    CHECK(bdist(hodge(p), p) < 1e-15);
    CHECK(bdist(m + p, w) < 1e-15);
    CHECK(std::abs(m.norm() - 1.0 / std::sqrt(2.0)) < 1e-14);
    CHECK(std::abs(p.norm() - 1.0 / std::sqrt(2.0)) < 1e-14);
}

TEST_CASE("grass_encode") {
    const GrassPoint g = grass_encode(Quat::one(), Quat::i());
    CHECK(bdist(g.minus, Bivector{0.5, 0, 0, 0, 0, -0.5}) < 1e-15);
    CHECK(bdist(g.plus, Bivector{0.5, 0, 0, 0, 0, 0.5}) < 1e-15);

    Rng rng(24);
    for (int k = 0; k < 200; ++k) {
        const Quat p = rng.unit_s3();
        Quat v = tangent_project(p, rng.unit_s3());
        if (v.norm() < 0.2) continue;
        v = v.normalized();
        const GrassPoint a = grass_encode(p, v);
        CHECK(std::abs(a.minus.norm() - 1.0 / std::sqrt(2.0)) < 1e-12);
        CHECK(std::abs(a.plus.norm() - 1.0 / std::sqrt(2.0)) < 1e-12);
        // Rotating the pair inside its plane leaves the encoding fixed.
        const double th = rng.uniform(0, 6.28);
        const Quat p2 = std::cos(th) * p + std::sin(th) * v;
        const Quat v2 = -std::sin(th) * p + std::cos(th) * v;
        const GrassPoint b = grass_encode(p2, v2);
        CHECK(bdist(a.minus, b.minus) < 1e-12);
        CHECK(bdist(a.plus, b.plus) < 1e-12);
        // Swapping the pair reverses orientation.
        const GrassPoint c = grass_encode(v, p);
        CHECK(bdist(c.minus, -a.minus) < 1e-12);
        CHECK(bdist(c.plus, -a.plus) < 1e-12);
    }
    CHECK_THROWS_AS(grass_encode(Quat::one(), Quat::one()), std::invalid_argument);
    CHECK_THROWS_AS(grass_encode(2.0 * Quat::one(), Quat::i()), std::invalid_argument);
}

TEST_CASE("grass_decode roundtrip") {
    Rng rng(25);
    for (int k = 0; k < 200; ++k) {
        const Quat p = rng.unit_s3();
        Quat v = tangent_project(p, rng.unit_s3());
        if (v.norm() < 0.2) continue;
        v = v.normalized();
        const GrassPoint g = grass_encode(p, v);
        const auto [w1, w2] = grass_decode(g);
        CHECK(std::abs(w1.norm() - 1.0) < 1e-10);
        CHECK(std::abs(w2.norm() - 1.0) < 1e-10);
        CHECK(std::abs(inner(w1, w2)) < 1e-10);
        const GrassPoint g2 = grass_encode(w1, w2);
        CHECK(bdist(g.minus, g2.minus) < 1e-9);
        CHECK(bdist(g.plus, g2.plus) < 1e-9);
    }
    GrassPoint bad;
    bad.minus = Bivector{1, 0, 0, 0, 0, -1};  // norm sqrt(2), not 1/sqrt(2)
    bad.plus = Bivector{0.5, 0, 0, 0, 0, 0.5};
    CHECK_THROWS_AS(grass_decode(bad), std::invalid_argument);
}

TEST_CASE("iota") {
    // (1^i - j^k)/2 -> i in E_-, (1^k + i^j)/2 -> k in E_+.
    const Bivector m{0.5, 0, 0, 0, 0, -0.5};
    CHECK((iota_coords(m, Side::Minus) - Quat::i()).norm() < 1e-15);
    const Bivector p{0, 0, 0.5, 0.5, 0, 0};
    CHECK((iota_coords(p, Side::Plus) - Quat::k()).norm() < 1e-15);

    Rng rng(26);
    for (int k = 0; k < 200; ++k) {
        const Quat q = rng.unit_imag();
        for (Side s : {Side::Minus, Side::Plus}) {
            const Bivector w = iota_point(q, s);
            CHECK(std::abs(w.norm() - 1.0 / std::sqrt(2.0)) < 1e-12);
            CHECK(bdist(hodge(w), (s == Side::Minus) ? -w : w) < 1e-12);
            CHECK((iota_coords(w, s) - q).norm() < 1e-12);
        }
    }
    CHECK_THROWS_AS(iota_coords(m, Side::Plus), std::invalid_argument);
}

TEST_CASE("e_basis spans orthogonal eigenspaces") {
    for (int a = 0; a < 3; ++a) {
        for (int b = 0; b < 3; ++b) {
            CHECK(std::abs(inner2(e_basis(Side::Minus, a), e_basis(Side::Plus, b))) < 1e-15);
            const double d = inner2(e_basis(Side::Minus, a), e_basis(Side::Minus, b));
            CHECK(std::abs(d - (a == b ? 0.5 : 0.0)) < 1e-15);
        }
        CHECK(std::abs(e_basis(Side::Plus, a).norm2() - 0.5) < 1e-15);
    }
}
