#include "heis/core.hpp"

namespace heis {

namespace {

ConnectionTable make_riemannian() {
    ConnectionTable t;
    // nabla_{e1} e2 = (1/2) e3 = -nabla_{e2} e1
    t.gamma[0][1][2] = 0.5;
    t.gamma[1][0][2] = -0.5;
    // nabla_{e1} e3 = nabla_{e3} e1 = -(1/2) e2
    t.gamma[0][2][1] = -0.5;
    t.gamma[2][0][1] = -0.5;
    // nabla_{e2} e3 = nabla_{e3} e2 = (1/2) e1
    t.gamma[1][2][0] = 0.5;
    t.gamma[2][1][0] = 0.5;
    return t;
}

ConnectionTable make_lorentzian() {
    ConnectionTable t;
    // D_{e1} e2 = (1/2) e3 = -D_{e2} e1
    t.gamma[0][1][2] = 0.5;
    t.gamma[1][0][2] = -0.5;
    // D_{e1} e3 = D_{e3} e1 = (1/2) e2
    t.gamma[0][2][1] = 0.5;
    t.gamma[2][0][1] = 0.5;
    // D_{e2} e3 = D_{e3} e2 = -(1/2) e1
    t.gamma[1][2][0] = -0.5;
    t.gamma[2][1][0] = -0.5;
    return t;
}

} // namespace

const ConnectionTable& connection(MetricKind kind) {
    static const ConnectionTable riem = make_riemannian();
    static const ConnectionTable lor = make_lorentzian();
    return kind == MetricKind::Riemannian ? riem : lor;
}

// Sum_{i,j} T_i A_j gamma[i][j][.] for frame components T (direction) and A.
static Vec3 gamma_bilinear(const Vec3& T, const Vec3& A, const ConnectionTable& tab) {
    const double t[3] = {T.x, T.y, T.z};
    const double a[3] = {A.x, A.y, A.z};
    double out[3] = {0, 0, 0};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            const double c = t[i] * a[j];
            if (c == 0.0) continue;
            for (int k = 0; k < 3; ++k) out[k] += c * tab.gamma[i][j][k];
        }
    return {out[0], out[1], out[2]};
}

FrameVector covariant_derivative(const std::function<FrameVector(double, double)>& field,
                                 int direction, double s, double t,
                                 MetricKind kind, double step, bool richardson) {
    if (step <= 0.0) throw std::invalid_argument("covariant_derivative: step must be positive");
    if (direction != 0 && direction != 1)
        throw std::invalid_argument("covariant_derivative: direction must be 0 or 1");

    if (richardson) {
        const FrameVector coarse = covariant_derivative(field, direction, s, t, kind, step);
        const FrameVector fine = covariant_derivative(field, direction, s, t, kind, 0.5 * step);
        return {fine.base, (fine.a * 4.0 - coarse.a) * (1.0 / 3.0)};
    }

    const double ds = direction == 0 ? step : 0.0;
    const double dt = direction == 1 ? step : 0.0;
    const FrameVector f0 = field(s, t);
    const FrameVector fp = field(s + ds, t + dt);
    const FrameVector fm = field(s - ds, t - dt);

    const double inv2h = 1.0 / (2.0 * step);
    const Vec3 dA = (fp.a - fm.a) * inv2h;

    // tangent of the base map, as a coordinate vector at the center point
    const Vec3 base_vel{(fp.base.x - fm.base.x) * inv2h,
                        (fp.base.y - fm.base.y) * inv2h,
                        (fp.base.z - fm.base.z) * inv2h};
    const FrameVector T = coord_to_frame({f0.base, base_vel});

    const Vec3 low = gamma_bilinear(T.a, f0.a, connection(kind));
    return {f0.base, dA + low};
}

// --- isometries ---------------------------------------------------------------

ModelPoint isometry_apply(const IsometryElement& iso, const ModelPoint& p) {
    const double c = std::cos(iso.theta), s = std::sin(iso.theta);
    const double xr = c * p.x - s * p.y;
    const double yr = s * p.x + c * p.y;
    const double zr = 0.5 * (iso.A * s - iso.B * c) * p.x +
                      0.5 * (iso.A * c + iso.B * s) * p.y + p.z + iso.C;
    return {xr + iso.A, yr + iso.B, zr};
}

CoordVector isometry_push(const IsometryElement& iso, const CoordVector& v) {
    const double c = std::cos(iso.theta), s = std::sin(iso.theta);
    const Vec3 d{c * v.c.x - s * v.c.y, s * v.c.x + c * v.c.y,
                 0.5 * (iso.A * s - iso.B * c) * v.c.x +
                     0.5 * (iso.A * c + iso.B * s) * v.c.y + v.c.z};
    return {isometry_apply(iso, v.base), d};
}

FrameVector isometry_differential(const IsometryElement& iso, const FrameVector& v) {
    return coord_to_frame(isometry_push(iso, frame_to_coord(v)));
}

// Group law of SO(2) x| H3, with the translation part composed by the
// Heisenberg multiplication (x1,y1,z1)*(x2,y2,z2) =
// (x1+x2, y1+y2, z1+z2+(x1 y2 - y1 x2)/2).
IsometryElement isometry_compose(const IsometryElement& f, const IsometryElement& g) {
    const double c = std::cos(f.theta), s = std::sin(f.theta);
    const double Ag = c * g.A - s * g.B;
    const double Bg = s * g.A + c * g.B;
    IsometryElement r;
    r.theta = f.theta + g.theta;
    r.A = f.A + Ag;
    r.B = f.B + Bg;
    r.C = f.C + g.C + 0.5 * (f.A * Bg - f.B * Ag);
    return r;
}

IsometryElement isometry_inverse(const IsometryElement& iso) {
    const double c = std::cos(iso.theta), s = std::sin(iso.theta);
    IsometryElement r;
    r.theta = -iso.theta;
    // rotate the inverted translation back by -theta
    r.A = -(c * iso.A + s * iso.B);
    r.B = -(-s * iso.A + c * iso.B);
    r.C = -iso.C;
    return r;
}

IsometryElement plane_flattening_isometry(double a, double b, double d) {
    return {0.0, 2.0 * b, -2.0 * a, d};
}

} // namespace heis
