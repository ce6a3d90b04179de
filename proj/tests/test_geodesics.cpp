#include <doctest.h>

#include <cmath>
#include <numbers>

#include "heis/geodesics.hpp"
#include "heis/rng.hpp"

using namespace heis;

namespace {

// Closed form of the geodesic from the origin with coordinate velocity
// (u, v, J), J != 0: the horizontal part circles at rate J while z advances by
// J + r^2/(2J) per unit time minus a sinusoidal correction. Independent of the
// integrator; used as the oracle for tilted geodesics.
GeodesicState closed_form_origin(double u, double v, double J, double t) {
    const double c = std::cos(J * t), s = std::sin(J * t);
    const double r2 = u * u + v * v;
    GeodesicState g;
    g.x = (u * s + v * (c - 1.0)) / J;
    g.y = (v * s - u * (c - 1.0)) / J;
    g.z = (J + 0.5 * r2 / J) * t - 0.5 * r2 / (J * J) * s;
    g.dx = u * c - v * s;
    g.dy = u * s + v * c;
    g.dz = J + 0.5 * r2 / J - 0.5 * (r2 / J) * c;
    return g;
}

} // namespace

TEST_CASE("geodesic right-hand side") {
    // horizontal through the origin: momentum zero, no bending
    const GeodesicState a = geodesic_rhs({0, 0, 0, 1, 0, 0});
    CHECK(a.dx == 0.0);
    CHECK(a.dy == 0.0);
    CHECK(a.dz == 0.0);

    // vertical: x'' = y'' = 0
    const GeodesicState b = geodesic_rhs({0, 0, 0, 0, 0, 1});
    CHECK(b.dx == 0.0);
    CHECK(b.dy == 0.0);

    // tilted: J = 1 bends the horizontal part
    const GeodesicState c = geodesic_rhs({0, 0, 0, 1, 0, 1});
    CHECK(c.dx == 0.0);
    CHECK(c.dy == 1.0);
}

TEST_CASE("momentum") {
    CHECK(momentum({0, 0, 0, 1, 0, 0}) == 0.0);
    CHECK(momentum({0, 0, 0, 0, 0, 1}) == 1.0);
    CHECK(momentum({1, 2, 0, 1, 0, 0}) == 1.0);
}

TEST_CASE("straight geodesics through the origin") {
    const GeodesicTrace tx = integrate_geodesic({0, 0, 0}, {1, 0, 0}, 5.0, 1e-3);
    double worst = 0.0;
    for (const TraceSample& s : tx.samples) {
        worst = std::max(worst, std::fabs(s.state.x - s.t));
        worst = std::max(worst, std::fabs(s.state.y));
        worst = std::max(worst, std::fabs(s.state.z));
    }
    CHECK(worst < 1e-8);

    const GeodesicTrace tz = integrate_geodesic({0, 0, 0}, {0, 0, 1}, 5.0, 1e-3);
    worst = 0.0;
    for (const TraceSample& s : tz.samples) {
        worst = std::max(worst, std::fabs(s.state.x));
        worst = std::max(worst, std::fabs(s.state.y));
        worst = std::max(worst, std::fabs(s.state.z - s.t));
    }
    CHECK(worst < 1e-8);
}

TEST_CASE("tilted geodesic against the closed form") {
    // e1 + e3: x = sin t, y = 1 - cos t, z = (3t - sin t)/2
    const double tmax = std::numbers::pi;
    const GeodesicTrace tr = integrate_geodesic({0, 0, 0}, {1, 0, 1}, tmax, tmax / 3000.0);
    const GeodesicState& end = tr.samples.back().state;
    CHECK(std::fabs(end.x - 0.0) < 1e-6);
    CHECK(std::fabs(end.y - 2.0) < 1e-6);
    CHECK(std::fabs(end.z - 1.5 * std::numbers::pi) < 1e-6);

    // a full J-family sweep over one period
    const CounterRng rng{23};
    for (int i = 0; i < 10; ++i) {
        const std::uint64_t c = 10ull * static_cast<std::uint64_t>(i);
        const double u = rng.range(c, -1, 1), v = rng.range(c + 1, -1, 1);
        const double J = rng.uniform(c + 2) < 0.5 ? -1.0 : 1.0; // unit momentum family
        const double T = 2.0 * std::numbers::pi;
        const GeodesicTrace tr2 = integrate_geodesic({0, 0, 0}, {u, v, J}, T, T / 6400.0);
        double dev = 0.0;
        for (const TraceSample& s : tr2.samples) {
            const GeodesicState ref = closed_form_origin(u, v, J, s.t);
            dev = std::max({dev, std::fabs(s.state.x - ref.x), std::fabs(s.state.y - ref.y),
                            std::fabs(s.state.z - ref.z)});
        }
        CHECK(dev < 1e-6);
    }
}

TEST_CASE("momentum is conserved and horizontality persists") {
    const CounterRng rng{29};
    for (int i = 0; i < 20; ++i) {
        const std::uint64_t c = 10ull * static_cast<std::uint64_t>(i);
        const ModelPoint p{rng.range(c, -1, 1), rng.range(c + 1, -1, 1), rng.range(c + 2, -1, 1)};
        const Vec3 v{rng.range(c + 3, -1, 1), rng.range(c + 4, -1, 1), rng.range(c + 5, -1, 1)};
        const GeodesicTrace tr = integrate_geodesic(p, v, 10.0, 1e-3);
        const double J0 = momentum(tr.samples.front().state);
        double drift = 0.0;
        for (const TraceSample& s : tr.samples)
            drift = std::max(drift, std::fabs(momentum(s.state) - J0));
        CHECK(drift < 1e-9);
    }

    // frame a3 of velocity equals the momentum, so horizontal stays horizontal
    const GeodesicTrace tr = integrate_geodesic({0.5, -0.3, 0.2}, {0.8, 0.6, 0.0}, 10.0, 1e-3);
    double a3 = 0.0;
    for (const TraceSample& s : tr.samples) {
        const FrameVector vel = coord_to_frame(
            {{s.state.x, s.state.y, s.state.z}, {s.state.dx, s.state.dy, s.state.dz}});
        a3 = std::max(a3, std::fabs(vel.a.z));
    }
    CHECK(a3 < 1e-9);
}

TEST_CASE("integrate_geodesic rejects bad input") {
    CHECK_THROWS_AS(integrate_geodesic({0, 0, 0}, {1, 0, 0}, -1.0, 1e-3), std::invalid_argument);
    CHECK_THROWS_AS(integrate_geodesic({0, 0, 0}, {1, 0, 0}, 1.0, 0.0), std::invalid_argument);
    const double inf = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(integrate_geodesic({inf, 0, 0}, {1, 0, 0}, 1.0, 1e-3), std::invalid_argument);
}

TEST_CASE("horizontal geodesics are straight lines") {
    const Line3 a = horizontal_geodesic({0, 0, 0}, {1, 0, 0});
    CHECK(a.d.x == 1.0);
    CHECK(a.d.y == 0.0);
    CHECK(a.d.z == 0.0);

    // from (0,1,0) in the e1 direction the line dips at rate 1/2
    const Line3 b = horizontal_geodesic({0, 1, 0}, {1, 0, 0});
    CHECK(b.d.z == doctest::Approx(-0.5));

    const Line3 c = horizontal_geodesic({0, 0, 1}, {1, 0, 0});
    CHECK(c.d.z == 0.0);
    CHECK(c.p.z == 1.0);

    CHECK_THROWS_AS(horizontal_geodesic({0, 0, 0}, {1, 0, 0.5}), std::invalid_argument);
}

TEST_CASE("straight-line criterion") {
    CHECK(is_geodesic_line({{0, 0, 0}, {1, 0, 0}}));
    CHECK_FALSE(is_geodesic_line({{0, 1, 0}, {1, 0, 0}}));
    CHECK(is_geodesic_line({{0, 1, 0}, {1, 0, -0.5}}));
    CHECK(is_geodesic_line({{2, 3, -1}, {0, 0, 1}})); // fibre
    CHECK_THROWS_AS(is_geodesic_line({{0, 0, 0}, {0, 0, 0}}), std::invalid_argument);

    // criterion-true lines are traversed by the integrated geodesic
    const Line3 line{{0, 1, 0}, {1, 0, -0.5}};
    const Vec3 v0 = coord_to_frame({line.p, line.d}).a;
    const GeodesicTrace tr = integrate_geodesic(line.p, v0, 1.0, 1e-3);
    double dev = 0.0;
    for (const TraceSample& s : tr.samples) {
        dev = std::max({dev, std::fabs(s.state.x - (line.p.x + s.t * line.d.x)),
                        std::fabs(s.state.y - (line.p.y + s.t * line.d.y)),
                        std::fabs(s.state.z - (line.p.z + s.t * line.d.z))});
    }
    CHECK(dev < 1e-6);
}

TEST_CASE("isometries map geodesic traces to geodesic traces") {
    const CounterRng rng{31};
    const GeodesicTrace tr = integrate_geodesic({0.2, -0.4, 0.1}, {0.7, 0.4, 0.6}, 2.0, 1e-3);
    for (int i = 0; i < 5; ++i) {
        const std::uint64_t c = 10ull * static_cast<std::uint64_t>(i);
        const IsometryElement iso{rng.range(c, -3, 3), rng.range(c + 1, -2, 2),
                                  rng.range(c + 2, -2, 2), rng.range(c + 3, -2, 2)};
        std::vector<ModelPoint> img;
        img.reserve(tr.samples.size());
        for (const TraceSample& s : tr.samples)
            img.push_back(isometry_apply(iso, {s.state.x, s.state.y, s.state.z}));

        // re-difference and check the geodesic equation residuals
        const double h = tr.step;
        double worst = 0.0;
        for (std::size_t k = 1; k + 1 < img.size(); ++k) {
            const auto& m = img[k - 1];
            const auto& o = img[k];
            const auto& p = img[k + 1];
            const double dx = (p.x - m.x) / (2 * h), dy = (p.y - m.y) / (2 * h);
            const double dz = (p.z - m.z) / (2 * h);
            const double ddx = (p.x - 2 * o.x + m.x) / (h * h);
            const double ddy = (p.y - 2 * o.y + m.y) / (h * h);
            const double J = dz + 0.5 * (dx * o.y - o.x * dy);
            worst = std::max({worst, std::fabs(ddx + dy * J), std::fabs(ddy - dx * J)});
        }
        CHECK(worst < 1e-6);
    }
}
