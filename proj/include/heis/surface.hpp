#ifndef HEIS_SURFACE_HPP
#define HEIS_SURFACE_HPP

#include <functional>
#include <utility>

#include "heis/core.hpp"

namespace heis {

// Parametrized surface (s,t) -> H3. Coordinate partials may be supplied
// analytically; anything missing falls back to central differences of `pos`
// with step `fd_step`. Second partials, when present, make the fundamental
// forms fully closed-form.
struct Immersion {
    std::function<ModelPoint(double, double)> pos;
    std::function<Vec3(double, double)> d_s, d_t;          // coordinate first partials
    std::function<Vec3(double, double)> d_ss, d_st, d_tt;  // coordinate second partials
    double fd_step = 1e-5;

    FrameVector tangent_s(double s, double t) const;
    FrameVector tangent_t(double s, double t) const;
};

struct FundamentalForms {
    double E{}, F{}, G{};  // first form
    double l{}, m{}, n{};  // second form against the unit normal
    double W2{};           // E G - F^2 (signed)
};

FundamentalForms fundamental_forms(const Immersion& imm, double s, double t,
                                   MetricKind kind);

// H = (G l - 2 F m + E n) / (2 (E G - F^2)).
double mean_curvature(const Immersion& imm, double s, double t, MetricKind kind);

// Graph z = f(x,y) with analytic partials; p = f_x + y/2, q = f_y - x/2.
struct GraphFunction {
    std::function<double(double, double)> f, fx, fy, fxx, fxy, fyy;

    double p(double x, double y) const { return fx(x, y) + 0.5 * y; }
    double q(double x, double y) const { return fy(x, y) - 0.5 * x; }
};

// (1+q^2) f_xx - 2 p q f_xy + (1+p^2) f_yy  (zero mean curvature, metric g)
double graph_minimal_residual(const GraphFunction& g, double x, double y);

// (1-q^2) f_xx + 2 p q f_xy + (1-p^2) f_yy  (zero mean curvature, metric g_L)
double graph_lorentz_residual(const GraphFunction& g, double x, double y);

// difference = (riemannian - lorentzian)/2 = q^2 f_xx - 2 p q f_xy + p^2 f_yy,
// sum = (riemannian + lorentzian)/2 = f_xx + f_yy.
std::pair<double, double> doubly_zero_residuals(const GraphFunction& g, double x, double y);

enum class CausalType { Spacelike, Timelike, Lightlike };

CausalType causal_type(const GraphFunction& g, double x, double y);
const char* to_string(CausalType t);

// The tangent field X = -q e1 + p e2 whose integral curves rule a doubly
// zero-mean-curvature graph, together with X x nabla_X X (whose only possibly
// nonzero component is q^2 f_xx - 2 p q f_xy + p^2 f_yy along e3).
struct RulingField {
    FrameVector X;
    FrameVector defect;
};

RulingField ruling_field(const GraphFunction& g, double x, double y);

// Plane curve s -> (x(s), y(s)) with two derivatives.
struct PlaneCurve {
    std::function<double(double)> x, y, dx, dy, ddx, ddy;
};

// Signed curvature (x'' y' - x' y'')/(x'^2 + y'^2)^{3/2} of the generating
// curve; the mean curvature of the vertical cylinder (x(s), y(s), t) is half
// of this under both metrics.
double cylinder_mean_curvature(const PlaneCurve& c, double s);

Immersion graph_immersion(const GraphFunction& g);
Immersion vertical_cylinder_immersion(const PlaneCurve& c);

// Composition with an ambient isometry; partials map through the constant
// Jacobian of the affine action.
Immersion apply_isometry(const Immersion& imm, const IsometryElement& iso);

} // namespace heis

#endif
