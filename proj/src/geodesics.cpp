#include "heis/geodesics.hpp"

#include <cmath>
#include <string>

namespace heis {

double momentum(const GeodesicState& s) {
    return s.dz + 0.5 * (s.dx * s.y - s.x * s.dy);
}

GeodesicState geodesic_rhs(const GeodesicState& s) {
    const double J = momentum(s);
    GeodesicState d;
    d.x = s.dx;
    d.y = s.dy;
    d.z = s.dz;
    d.dx = -s.dy * J;
    d.dy = s.dx * J;
    d.dz = 0.5 * J * (s.x * s.dx + s.y * s.dy);
    return d;
}

namespace {

// Reduced state (x, y, z, dx, dy) with J frozen; dz is reconstructed as
// J - (dx*y - x*dy)/2 wherever a full state is needed.
struct Reduced {
    double v[5];
};

Reduced rhs_reduced(const Reduced& s, double J) {
    const double x = s.v[0], y = s.v[1], dx = s.v[3], dy = s.v[4];
    Reduced d;
    d.v[0] = dx;
    d.v[1] = dy;
    d.v[2] = J - 0.5 * (dx * y - x * dy);
    d.v[3] = -dy * J;
    d.v[4] = dx * J;
    return d;
}

Reduced axpy(const Reduced& a, double c, const Reduced& b) {
    Reduced r;
    for (int i = 0; i < 5; ++i) r.v[i] = a.v[i] + c * b.v[i];
    return r;
}

GeodesicState unpack(const Reduced& s, double J) {
    GeodesicState g;
    g.x = s.v[0];
    g.y = s.v[1];
    g.z = s.v[2];
    g.dx = s.v[3];
    g.dy = s.v[4];
    g.dz = J - 0.5 * (g.dx * g.y - g.x * g.dy);
    return g;
}

} // namespace

GeodesicTrace integrate_geodesic(const ModelPoint& p0, const Vec3& v0_frame,
                                 double t_max, double step) {
    if (!(step > 0.0)) throw std::invalid_argument("integrate_geodesic: step must be positive");
    if (!(t_max > 0.0)) throw std::invalid_argument("integrate_geodesic: t_max must be positive");
    if (!p0.finite() || !v0_frame.finite())
        throw std::invalid_argument("integrate_geodesic: non-finite initial data");

    const CoordVector cv = frame_to_coord({p0, v0_frame});
    const double J = v0_frame.z; // e3 frame component == momentum

    Reduced s{{p0.x, p0.y, p0.z, cv.c.x, cv.c.y}};
    const long n = static_cast<long>(std::ceil(t_max / step - 1e-12));

    GeodesicTrace trace;
    trace.step = step;
    trace.samples.reserve(static_cast<std::size_t>(n) + 1);
    trace.samples.push_back({0.0, unpack(s, J)});

    for (long i = 0; i < n; ++i) {
        const Reduced k1 = rhs_reduced(s, J);
        const Reduced k2 = rhs_reduced(axpy(s, 0.5 * step, k1), J);
        const Reduced k3 = rhs_reduced(axpy(s, 0.5 * step, k2), J);
        const Reduced k4 = rhs_reduced(axpy(s, step, k3), J);
        for (int c = 0; c < 5; ++c)
            s.v[c] += step / 6.0 * (k1.v[c] + 2.0 * k2.v[c] + 2.0 * k3.v[c] + k4.v[c]);
        const double t = static_cast<double>(i + 1) * step;
        for (double c : s.v)
            if (!std::isfinite(c))
                throw std::runtime_error("integrate_geodesic: state became non-finite at t=" +
                                         std::to_string(t));
        trace.samples.push_back({t, unpack(s, J)});
    }
    return trace;
}

Line3 horizontal_geodesic(const ModelPoint& p0, const Vec3& v0_frame) {
    if (std::fabs(v0_frame.z) > 1e-12)
        throw std::invalid_argument("horizontal_geodesic: not horizontal (frame a3 != 0)");
    const double a1 = v0_frame.x, a2 = v0_frame.y;
    return {p0, {a1, a2, -0.5 * (a1 * p0.y - p0.x * a2)}};
}

bool is_geodesic_line(const Line3& line, double tol) {
    const double n2 = line.d.x * line.d.x + line.d.y * line.d.y + line.d.z * line.d.z;
    if (n2 == 0.0) throw std::invalid_argument("is_geodesic_line: zero direction");
    // fibres are geodesics regardless of the a3 condition
    const double h2 = line.d.x * line.d.x + line.d.y * line.d.y;
    if (h2 <= 1e-24 * n2) return true;
    const double lhs = line.d.z + 0.5 * (line.d.x * line.p.y - line.d.y * line.p.x);
    return std::fabs(lhs) <= tol;
}

} // namespace heis
