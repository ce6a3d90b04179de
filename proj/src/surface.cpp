#include "heis/surface.hpp"

#include <cmath>

namespace heis {

namespace {

Vec3 fd_partial(const Immersion& imm, double s, double t, int direction) {
    const double h = imm.fd_step;
    const double ds = direction == 0 ? h : 0.0;
    const double dt = direction == 1 ? h : 0.0;
    const ModelPoint p = imm.pos(s + ds, t + dt);
    const ModelPoint m = imm.pos(s - ds, t - dt);
    const double inv2h = 1.0 / (2.0 * h);
    return {(p.x - m.x) * inv2h, (p.y - m.y) * inv2h, (p.z - m.z) * inv2h};
}

Vec3 coord_partial(const Immersion& imm, double s, double t, int direction) {
    if (direction == 0 && imm.d_s) return imm.d_s(s, t);
    if (direction == 1 && imm.d_t) return imm.d_t(s, t);
    return fd_partial(imm, s, t, direction);
}

Vec3 gamma_bilinear(const Vec3& T, const Vec3& A, const ConnectionTable& tab) {
    const double tt[3] = {T.x, T.y, T.z};
    const double aa[3] = {A.x, A.y, A.z};
    double out[3] = {0, 0, 0};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            const double c = tt[i] * aa[j];
            if (c == 0.0) continue;
            for (int k = 0; k < 3; ++k) out[k] += c * tab.gamma[i][j][k];
        }
    return {out[0], out[1], out[2]};
}

// Covariant derivative of the tangent field X_e along X_d from analytic
// coordinate data: first partials of both fields and the coordinate second
// partial d(X_e)/d(param d).
Vec3 covariant_from_coords(const ModelPoint& p, const Vec3& Xd, const Vec3& Xe,
                           const Vec3& dXe, MetricKind kind) {
    // frame components of X_e: (u, v, w + (y u - x v)/2)
    const Vec3 A{Xe.x, Xe.y, Xe.z + 0.5 * (p.y * Xe.x - p.x * Xe.y)};
    const Vec3 T{Xd.x, Xd.y, Xd.z + 0.5 * (p.y * Xd.x - p.x * Xd.y)};
    const Vec3 dA{dXe.x, dXe.y,
                  dXe.z + 0.5 * (Xd.y * Xe.x + p.y * dXe.x - Xd.x * Xe.y - p.x * dXe.y)};
    return dA + gamma_bilinear(T, A, connection(kind));
}

} // namespace

FrameVector Immersion::tangent_s(double s, double t) const {
    const ModelPoint p = pos(s, t);
    return coord_to_frame({p, coord_partial(*this, s, t, 0)});
}

FrameVector Immersion::tangent_t(double s, double t) const {
    const ModelPoint p = pos(s, t);
    return coord_to_frame({p, coord_partial(*this, s, t, 1)});
}

FundamentalForms fundamental_forms(const Immersion& imm, double s, double t,
                                   MetricKind kind) {
    const ModelPoint p = imm.pos(s, t);
    const Vec3 Xs_c = coord_partial(imm, s, t, 0);
    const Vec3 Xt_c = coord_partial(imm, s, t, 1);
    const Vec3 Xs = coord_to_frame({p, Xs_c}).a;
    const Vec3 Xt = coord_to_frame({p, Xt_c}).a;

    FundamentalForms ff;
    ff.E = inner(Xs, Xs, kind);
    ff.F = inner(Xs, Xt, kind);
    ff.G = inner(Xt, Xt, kind);
    ff.W2 = ff.E * ff.G - ff.F * ff.F;

    const Vec3 nraw = cross(Xs, Xt, kind);
    if (nraw.norm() < 1e-12)
        throw std::domain_error("fundamental_forms: degenerate parametrization");
    const double nn = inner(nraw, nraw, kind);
    if (std::fabs(nn) < 1e-12 * (nraw.x * nraw.x + nraw.y * nraw.y + nraw.z * nraw.z))
        throw std::domain_error("fundamental_forms: lightlike point");
    const Vec3 unit = nraw * (1.0 / std::sqrt(std::fabs(nn)));

    Vec3 Dss, Dst, Dtt;
    if (imm.d_ss && imm.d_st && imm.d_tt) {
        Dss = covariant_from_coords(p, Xs_c, Xs_c, imm.d_ss(s, t), kind);
        Dst = covariant_from_coords(p, Xt_c, Xs_c, imm.d_st(s, t), kind);
        Dtt = covariant_from_coords(p, Xt_c, Xt_c, imm.d_tt(s, t), kind);
    } else {
        auto field_s = [&imm](double u, double v) { return imm.tangent_s(u, v); };
        auto field_t = [&imm](double u, double v) { return imm.tangent_t(u, v); };
        Dss = covariant_derivative(field_s, 0, s, t, kind, imm.fd_step).a;
        Dst = covariant_derivative(field_s, 1, s, t, kind, imm.fd_step).a;
        Dtt = covariant_derivative(field_t, 1, s, t, kind, imm.fd_step).a;
    }
    ff.l = inner(Dss, unit, kind);
    ff.m = inner(Dst, unit, kind);
    ff.n = inner(Dtt, unit, kind);
    return ff;
}

double mean_curvature(const Immersion& imm, double s, double t, MetricKind kind) {
    const FundamentalForms ff = fundamental_forms(imm, s, t, kind);
    if (std::fabs(ff.W2) < 1e-12)
        throw std::domain_error("mean_curvature: degenerate or lightlike point");
    return 0.5 * (ff.G * ff.l - 2.0 * ff.F * ff.m + ff.E * ff.n) / ff.W2;
}

double graph_minimal_residual(const GraphFunction& g, double x, double y) {
    const double p = g.p(x, y), q = g.q(x, y);
    return (1.0 + q * q) * g.fxx(x, y) - 2.0 * p * q * g.fxy(x, y) +
           (1.0 + p * p) * g.fyy(x, y);
}

double graph_lorentz_residual(const GraphFunction& g, double x, double y) {
    const double p = g.p(x, y), q = g.q(x, y);
    return (1.0 - q * q) * g.fxx(x, y) + 2.0 * p * q * g.fxy(x, y) +
           (1.0 - p * p) * g.fyy(x, y);
}

std::pair<double, double> doubly_zero_residuals(const GraphFunction& g, double x, double y) {
    const double p = g.p(x, y), q = g.q(x, y);
    const double diff = q * q * g.fxx(x, y) - 2.0 * p * q * g.fxy(x, y) +
                        p * p * g.fyy(x, y);
    const double sum = g.fxx(x, y) + g.fyy(x, y);
    return {diff, sum};
}

CausalType causal_type(const GraphFunction& g, double x, double y) {
    const double p = g.p(x, y), q = g.q(x, y);
    const double w2 = 1.0 - (p * p + q * q);
    if (w2 > 1e-12) return CausalType::Spacelike;
    if (w2 < -1e-12) return CausalType::Timelike;
    return CausalType::Lightlike;
}

const char* to_string(CausalType t) {
    switch (t) {
        case CausalType::Spacelike: return "spacelike";
        case CausalType::Timelike: return "timelike";
        default: return "lightlike";
    }
}

RulingField ruling_field(const GraphFunction& g, double x, double y) {
    const double p = g.p(x, y), q = g.q(x, y);
    const double fxx = g.fxx(x, y), fxy = g.fxy(x, y), fyy = g.fyy(x, y);
    const ModelPoint base{x, y, g.f(x, y)};

    const FrameVector X{base, {-q, p, 0.0}};
    const Vec3 nablaXX{q * (fxy - 0.5) - p * fyy, p * (fxy + 0.5) - q * fxx, 0.0};
    return {X, cross(X, FrameVector{base, nablaXX}, MetricKind::Riemannian)};
}

double cylinder_mean_curvature(const PlaneCurve& c, double s) {
    const double dx = c.dx(s), dy = c.dy(s);
    const double speed2 = dx * dx + dy * dy;
    if (speed2 < 1e-24)
        throw std::domain_error("cylinder_mean_curvature: singular curve point");
    return (c.ddx(s) * dy - dx * c.ddy(s)) / std::pow(speed2, 1.5);
}

Immersion graph_immersion(const GraphFunction& g) {
    Immersion imm;
    imm.pos = [g](double x, double y) { return ModelPoint{x, y, g.f(x, y)}; };
    imm.d_s = [g](double x, double y) { return Vec3{1.0, 0.0, g.fx(x, y)}; };
    imm.d_t = [g](double x, double y) { return Vec3{0.0, 1.0, g.fy(x, y)}; };
    imm.d_ss = [g](double x, double y) { return Vec3{0.0, 0.0, g.fxx(x, y)}; };
    imm.d_st = [g](double x, double y) { return Vec3{0.0, 0.0, g.fxy(x, y)}; };
    imm.d_tt = [g](double x, double y) { return Vec3{0.0, 0.0, g.fyy(x, y)}; };
    return imm;
}

Immersion vertical_cylinder_immersion(const PlaneCurve& c) {
    Immersion imm;
    imm.pos = [c](double s, double t) { return ModelPoint{c.x(s), c.y(s), t}; };
    imm.d_s = [c](double s, double) { return Vec3{c.dx(s), c.dy(s), 0.0}; };
    imm.d_t = [](double, double) { return Vec3{0.0, 0.0, 1.0}; };
    imm.d_ss = [c](double s, double) { return Vec3{c.ddx(s), c.ddy(s), 0.0}; };
    imm.d_st = [](double, double) { return Vec3{0.0, 0.0, 0.0}; };
    imm.d_tt = [](double, double) { return Vec3{0.0, 0.0, 0.0}; };
    return imm;
}

Immersion apply_isometry(const Immersion& imm, const IsometryElement& iso) {
    const double ct = std::cos(iso.theta), st = std::sin(iso.theta);
    const double wx = 0.5 * (iso.A * st - iso.B * ct);
    const double wy = 0.5 * (iso.A * ct + iso.B * st);
    auto push = [ct, st, wx, wy](const Vec3& v) {
        return Vec3{ct * v.x - st * v.y, st * v.x + ct * v.y,
                    wx * v.x + wy * v.y + v.z};
    };

    Immersion out;
    auto base = imm;
    out.fd_step = imm.fd_step;
    out.pos = [base, iso](double s, double t) { return isometry_apply(iso, base.pos(s, t)); };
    if (base.d_s) out.d_s = [base, push](double s, double t) { return push(base.d_s(s, t)); };
    if (base.d_t) out.d_t = [base, push](double s, double t) { return push(base.d_t(s, t)); };
    if (base.d_ss) out.d_ss = [base, push](double s, double t) { return push(base.d_ss(s, t)); };
    if (base.d_st) out.d_st = [base, push](double s, double t) { return push(base.d_st(s, t)); };
    if (base.d_tt) out.d_tt = [base, push](double s, double t) { return push(base.d_tt(s, t)); };
    return out;
}

} // namespace heis
