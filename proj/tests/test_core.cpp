#include <doctest.h>

#include <cmath>
#include <numbers>

#include "heis/core.hpp"
#include "heis/rng.hpp"
#include "heis/verify.hpp"

using namespace heis;

namespace {
constexpr MetricKind R = MetricKind::Riemannian;
constexpr MetricKind L = MetricKind::Lorentzian;

FrameVector fv(ModelPoint p, double a1, double a2, double a3) {
    return {p, {a1, a2, a3}};
}
} // namespace

TEST_CASE("frame to coordinate basis") {
    const CoordVector a = frame_to_coord(fv({0, 0, 0}, 1, 0, 0));
    CHECK(a.c.x == 1.0);
    CHECK(a.c.y == 0.0);
    CHECK(a.c.z == 0.0);

    // e1 at (1,2,0) dips by y/2 in the z coordinate
    const CoordVector b = frame_to_coord(fv({1, 2, 0}, 1, 0, 0));
    CHECK(b.c.x == doctest::Approx(1.0));
    CHECK(b.c.z == doctest::Approx(-1.0));

    // e3 is d/dz everywhere
    const CoordVector c = frame_to_coord(fv({-3, 7, 2}, 0, 0, 1));
    CHECK(c.c.x == 0.0);
    CHECK(c.c.y == 0.0);
    CHECK(c.c.z == 1.0);
}

TEST_CASE("coordinate to frame basis") {
    const FrameVector a = coord_to_frame({{1, 2, 0}, {1, 0, 0}});
    CHECK(a.a.x == doctest::Approx(1.0));
    CHECK(a.a.y == doctest::Approx(0.0));
    CHECK(a.a.z == doctest::Approx(1.0));

    const FrameVector b = coord_to_frame({{0, 0, 0}, {0, 1, 0}});
    CHECK(b.a.y == 1.0);
    CHECK(b.a.z == 0.0);
}

TEST_CASE("frame round trip is the identity") {
    const CounterRng rng{7};
    for (int i = 0; i < 100; ++i) {
        const std::uint64_t c = 10ull * static_cast<std::uint64_t>(i);
        const ModelPoint p{rng.range(c, -5, 5), rng.range(c + 1, -5, 5), rng.range(c + 2, -5, 5)};
        const Vec3 a{rng.range(c + 3, -3, 3), rng.range(c + 4, -3, 3), rng.range(c + 5, -3, 3)};
        const FrameVector back = coord_to_frame(frame_to_coord({p, a}));
        CHECK(std::fabs(back.a.x - a.x) < 1e-14);
        CHECK(std::fabs(back.a.y - a.y) < 1e-14);
        CHECK(std::fabs(back.a.z - a.z) < 1e-14);
    }
}

TEST_CASE("inner products in both signatures") {
    const ModelPoint p{0.3, -0.8, 2.0};
    CHECK(inner(fv(p, 0, 0, 1), fv(p, 0, 0, 1), R) == 1.0);
    CHECK(inner(fv(p, 0, 0, 1), fv(p, 0, 0, 1), L) == -1.0);
    CHECK(inner(fv(p, 1, 0, 0), fv(p, 0, 1, 0), R) == 0.0);
    CHECK(inner(fv(p, 1, 0, 0), fv(p, 0, 1, 0), L) == 0.0);

    CHECK_THROWS_AS(inner(fv({0, 0, 0}, 1, 0, 0), fv({1, 0, 0}, 1, 0, 0), R),
                    std::invalid_argument);
}

TEST_CASE("cross products") {
    const ModelPoint p{0, 0, 0};
    const FrameVector r = cross(fv(p, 1, 0, 0), fv(p, 0, 1, 0), R);
    CHECK(r.a.x == 0.0);
    CHECK(r.a.y == 0.0);
    CHECK(r.a.z == 1.0);

    const FrameVector l = cross(fv(p, 1, 0, 0), fv(p, 0, 1, 0), L);
    CHECK(l.a.z == -1.0);

    const CounterRng rng{11};
    for (int i = 0; i < 50; ++i) {
        const std::uint64_t c = 10ull * static_cast<std::uint64_t>(i);
        const Vec3 a{rng.range(c, -2, 2), rng.range(c + 1, -2, 2), rng.range(c + 2, -2, 2)};
        const Vec3 b{rng.range(c + 3, -2, 2), rng.range(c + 4, -2, 2), rng.range(c + 5, -2, 2)};
        for (MetricKind kind : {R, L}) {
            const Vec3 x = cross(a, b, kind);
            CHECK(std::fabs(inner(x, a, kind)) < 1e-12);
            CHECK(std::fabs(inner(x, b, kind)) < 1e-12);
        }
        // v x_L v = 0
        const Vec3 self = cross(a, a, L);
        CHECK(self.norm() < 1e-14);
    }

    CHECK_THROWS_AS(cross(fv({0, 0, 0}, 1, 0, 0), fv({0, 2, 0}, 1, 0, 0), R),
                    std::invalid_argument);
}

TEST_CASE("connection tables match the frame equations") {
    const ConnectionTable& riem = connection(R);
    // nabla_{e1} e2 = (1/2) e3
    CHECK(riem.gamma[0][1][0] == 0.0);
    CHECK(riem.gamma[0][1][1] == 0.0);
    CHECK(riem.gamma[0][1][2] == 0.5);

    const ConnectionTable& lor = connection(L);
    // D_{e1} e3 = (1/2) e2
    CHECK(lor.gamma[0][2][0] == 0.0);
    CHECK(lor.gamma[0][2][1] == 0.5);
    CHECK(lor.gamma[0][2][2] == 0.0);

    for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 3; ++k) {
            CHECK(riem.gamma[i][i][k] == 0.0);
            CHECK(lor.gamma[i][i][k] == 0.0);
        }

    CHECK(verify::torsion_defect(riem) == 0.0);
    CHECK(verify::torsion_defect(lor) == 0.0);
    CHECK(verify::compatibility_defect(riem, R) == 0.0);
    CHECK(verify::compatibility_defect(lor, L) == 0.0);
    CHECK(verify::table_mismatch(riem, R) == 0.0);
    CHECK(verify::table_mismatch(lor, L) == 0.0);
}

TEST_CASE("covariant derivative of a constant field along the x-axis") {
    auto e3_field = [](double s, double) {
        return FrameVector{{s, 0, 0}, {0, 0, 1}};
    };
    const FrameVector riem = covariant_derivative(e3_field, 0, 0.2, 0.0, R);
    CHECK(std::fabs(riem.a.x) < 1e-10);
    CHECK(riem.a.y == doctest::Approx(-0.5).epsilon(1e-9));
    CHECK(std::fabs(riem.a.z) < 1e-10);

    const FrameVector lor = covariant_derivative(e3_field, 0, 0.2, 0.0, L);
    CHECK(lor.a.y == doctest::Approx(0.5).epsilon(1e-9));

    CHECK_THROWS_AS(covariant_derivative(e3_field, 0, 0, 0, R, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(covariant_derivative(e3_field, 2, 0, 0, R), std::invalid_argument);
}

TEST_CASE("richardson extrapolation tightens the covariant derivative") {
    // field with genuine third-derivative content so plain central
    // differences carry visible O(step^2) error at a coarse step
    auto field = [](double s, double) {
        return FrameVector{{s, 0, 0}, {std::sin(3 * s), std::cos(2 * s), s * s}};
    };
    auto err = [&](bool rich) {
        const FrameVector d = covariant_derivative(field, 0, 0.4, 0.0,
                                                   MetricKind::Riemannian, 1e-2, rich);
        const double y = 0.4;
        const Vec3 exact =
            Vec3{3 * std::cos(3 * y), -2 * std::sin(2 * y), 2 * y} +
            Vec3{0, 0, 0.5 * std::cos(2 * y)} // Gamma(e1, a2 e2) = a2/2 e3
            + Vec3{0, -0.5 * y * y, 0};       // Gamma(e1, a3 e3) = -a3/2 e2
        return (d.a - exact).norm();
    };
    CHECK(err(true) < 1e-2 * err(false));
}

TEST_CASE("covariant acceleration of a horizontal geodesic vanishes") {
    // the x-axis traversed at unit speed is a geodesic with velocity e1
    auto vel = [](double s, double) {
        return FrameVector{{s, 0, 0}, {1, 0, 0}};
    };
    const FrameVector acc = covariant_derivative(vel, 0, 0.7, 0.0, R);
    CHECK(acc.a.norm() < 1e-10);
}

TEST_CASE("isometry action") {
    const IsometryElement quarter{0.5 * std::numbers::pi, 0, 0, 0};
    const ModelPoint q = isometry_apply(quarter, {1, 0, 0});
    CHECK(q.x == doctest::Approx(0.0));
    CHECK(q.y == doctest::Approx(1.0));
    CHECK(q.z == doctest::Approx(0.0));

    // x-axis slide: exact by design
    const double r = 1.75;
    const IsometryElement slide{0.0, r, 0.0, 0.0};
    const ModelPoint s = isometry_apply(slide, {0.3, -1.2, 0.9});
    CHECK(s.x == 0.3 + r);
    CHECK(s.y == -1.2);
    CHECK(s.z == 0.9 + 0.5 * r * (-1.2));

    const IsometryElement id{};
    const ModelPoint p{0.4, 0.5, -0.6};
    const ModelPoint pp = isometry_apply(id, p);
    CHECK(pp.x == p.x);
    CHECK(pp.y == p.y);
    CHECK(pp.z == p.z);
}

TEST_CASE("isometry differential preserves both metrics and e3") {
    const CounterRng rng{5};
    for (int i = 0; i < 40; ++i) {
        const std::uint64_t c = 20ull * static_cast<std::uint64_t>(i);
        const IsometryElement iso{rng.range(c, -3, 3), rng.range(c + 1, -2, 2),
                                  rng.range(c + 2, -2, 2), rng.range(c + 3, -2, 2)};
        const ModelPoint p{rng.range(c + 4, -2, 2), rng.range(c + 5, -2, 2),
                           rng.range(c + 6, -2, 2)};
        const FrameVector v = fv(p, rng.range(c + 7, -1, 1), rng.range(c + 8, -1, 1),
                                 rng.range(c + 9, -1, 1));
        const FrameVector w = fv(p, rng.range(c + 10, -1, 1), rng.range(c + 11, -1, 1),
                                 rng.range(c + 12, -1, 1));
        for (MetricKind kind : {R, L}) {
            const double before = inner(v, w, kind);
            const double after =
                inner(isometry_differential(iso, v), isometry_differential(iso, w), kind);
            CHECK(std::fabs(after - before) < 1e-10);
        }
        const FrameVector e3img = isometry_differential(iso, fv(p, 0, 0, 1));
        CHECK(std::fabs(e3img.a.x) < 1e-13);
        CHECK(std::fabs(e3img.a.y) < 1e-13);
        CHECK(e3img.a.z == doctest::Approx(1.0));
    }

    const FrameVector v = fv({1, 2, 3}, 0.3, -0.4, 0.5);
    const FrameVector dv = isometry_differential(IsometryElement{}, v);
    CHECK(dv.a.x == doctest::Approx(0.3));
    CHECK(dv.a.y == doctest::Approx(-0.4));
    CHECK(dv.a.z == doctest::Approx(0.5));
}

TEST_CASE("isometries form a group") {
    const CounterRng rng{13};
    for (int i = 0; i < 40; ++i) {
        const std::uint64_t c = 20ull * static_cast<std::uint64_t>(i);
        const IsometryElement f{rng.range(c, -3, 3), rng.range(c + 1, -2, 2),
                                rng.range(c + 2, -2, 2), rng.range(c + 3, -2, 2)};
        const IsometryElement g{rng.range(c + 4, -3, 3), rng.range(c + 5, -2, 2),
                                rng.range(c + 6, -2, 2), rng.range(c + 7, -2, 2)};
        const ModelPoint p{rng.range(c + 8, -2, 2), rng.range(c + 9, -2, 2),
                           rng.range(c + 10, -2, 2)};

        const ModelPoint lhs = isometry_apply(isometry_compose(f, g), p);
        const ModelPoint rhs = isometry_apply(f, isometry_apply(g, p));
        CHECK(std::fabs(lhs.x - rhs.x) < 1e-12);
        CHECK(std::fabs(lhs.y - rhs.y) < 1e-12);
        CHECK(std::fabs(lhs.z - rhs.z) < 1e-12);

        const ModelPoint back = isometry_apply(isometry_inverse(f), isometry_apply(f, p));
        CHECK(std::fabs(back.x - p.x) < 1e-12);
        CHECK(std::fabs(back.y - p.y) < 1e-12);
        CHECK(std::fabs(back.z - p.z) < 1e-12);
    }
}

TEST_CASE("plane flattening isometry") {
    const IsometryElement id = plane_flattening_isometry(0, 0, 0);
    CHECK(id.theta == 0.0);
    CHECK(id.A == 0.0);
    CHECK(id.B == 0.0);
    CHECK(id.C == 0.0);

    // x + z = 0 contains (1, 0, -1)
    const IsometryElement f = plane_flattening_isometry(1, 0, 0);
    CHECK(isometry_apply(f, {1, 0, -1}).z == doctest::Approx(0.0));

    const CounterRng rng{17};
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const std::uint64_t c = 110ull * static_cast<std::uint64_t>(i);
        const double a = rng.range(c, -2, 2), b = rng.range(c + 1, -2, 2);
        const double d = rng.range(c + 2, -2, 2);
        const IsometryElement iso = plane_flattening_isometry(a, b, d);
        for (int k = 0; k < 50; ++k) {
            const double x = rng.range(c + 3 + 2ull * k, -3, 3);
            const double y = rng.range(c + 4 + 2ull * k, -3, 3);
            worst = std::max(worst, std::fabs(isometry_apply(iso, {x, y, -a * x - b * y - d}).z));
        }
    }
    CHECK(worst < 1e-12);
}
