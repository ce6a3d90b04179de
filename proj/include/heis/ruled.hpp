#ifndef HEIS_RULED_HPP
#define HEIS_RULED_HPP

#include <array>
#include <functional>
#include <optional>

#include "heis/surface.hpp"

// Ruled surfaces X(s,t) in H3 whose t-parameter curves are geodesics, in the
// frame-component normal form
//   X_s(s,0) = (sin a(s), cos a(s), g(s)),
//   X_t(s,0) = (h(s) cos a(s), -h(s) sin a(s), 1),
// together with the horizontally ruled normal form
//   Y_s(s,0) = cos b(s) (-sin a(s), cos a(s), 0) + sin b(s) e3,
//   Y_t(s,0) = (cos a(s), sin a(s), 0),
// the minimality functional, the expansion coefficients that force h == 0,
// the classified surfaces, and the helicoid rescaling limit.

namespace heis {

// Scalar profile function with two derivatives.
struct SmoothFn {
    std::function<double(double)> f, df, ddf;

    static SmoothFn constant(double c);
    static SmoothFn linear(double v, double dv);          // v + dv s
    static SmoothFn jet2(double v, double dv, double ddv); // v + dv s + ddv s^2/2
};

struct RuledProfile {
    SmoothFn h, alpha, g;
};

struct HorizontalRuledProfile {
    SmoothFn alpha, beta;
};

struct RuledTangents {
    Vec3 Xs, Xt; // frame components
};

struct RuledSecond {
    Vec3 Xst, Xss; // frame components of the covariant derivatives
};

// Closed-form frame components of X_s, X_t at (s,t).
RuledTangents ruled_tangents(const RuledProfile& prof, double s, double t);

// Closed-form covariant second derivatives; X_{t;t} vanishes by construction.
RuledSecond ruled_second_derivatives(const RuledProfile& prof, double s, double t);

// <Xt,Xt><X_{s;s}, Xs x Xt> - 2 <Xs,Xt><X_{s;t}, Xs x Xt>; the surface is
// minimal iff this vanishes identically.
double htilde(const RuledProfile& prof, double s, double t);

// The four expansion coefficients of H~(0,t) used to force h == 0, as
// polynomials in the profile jet at s = 0 (with alpha(0) = 0).
struct Lemma25Coefficients {
    double A3{}, B1{}, B5{}, C5{};
};

Lemma25Coefficients lemma25_coefficients(double h0, double dh0, double ddh0,
                                         double dalpha0, double ddalpha0,
                                         double g0, double dg0);

// Least-squares fit of sampled H~(0,t) onto the 16-function basis
//   {1, t, t^2, t^3}  (A0..A3)
//   {cos t, t cos t, t^2 cos t, cos 2t, t cos 2t, cos 3t}  (B0..B5)
//   {sin t, t sin t, t^2 sin t, sin 2t, t sin 2t, sin 3t}  (C0..C5)
// over 64 uniform nodes on [0, 2pi). The expansion is exact, so the fit
// residual doubles as a check on the closed forms. Requires alpha(0) = 0.
struct ExpansionCoefficients {
    std::array<double, 16> c{};
    double fit_residual{}; // max |fitted - sampled| over the nodes

    double A(int i) const { return c.at(static_cast<std::size_t>(i)); }
    double B(int i) const { return c.at(static_cast<std::size_t>(4 + i)); }
    double C(int i) const { return c.at(static_cast<std::size_t>(10 + i)); }
};

ExpansionCoefficients extract_expansion_coefficients(const RuledProfile& prof);

// b'(s) + t (a'b' cos b - a'' sin b) + (t^2/2)(a'b' sin b + a'' cos b);
// a horizontally ruled surface is minimal iff this vanishes identically,
// which happens exactly when b' == 0 and a'' == 0.
double horizontal_ruled_residual(const HorizontalRuledProfile& prof, double s, double t);

// Surface swept by horizontal geodesic rulings: base curve integrated in
// coordinates from `base`, rulings attached by their straight-line closed
// form. First partials are analytic.
Immersion horizontal_ruled_surface(const HorizontalRuledProfile& prof, const ModelPoint& base);

// For the family a(s) = a s, b(s) = b (a != 0): the constructed surface lies
// on tan(lambda z) = y/x with lambda = 4a^2/(1 + cos 2b + 4a sin b), or on the
// plane z = 0 when the denominator vanishes (returns nullopt).
std::optional<double> helicoid_lambda(double a, double b);

enum class CatalogTag { HorizontalPlane, VerticalPlane, Helicoid, HyperbolicParaboloid };

struct CatalogSurface {
    CatalogTag tag{};
    double lambda{}; // Helicoid only
    Immersion param;
    std::function<double(const ModelPoint&)> implicit;
    bool has_graph{}; // all but the vertical plane
    GraphFunction graph;
};

CatalogSurface catalog_surface(CatalogTag tag, double lambda = 0.0);

// Height of the pullback of the helicoid tan(lambda z) = y/x under the
// isometry moving (sqrt(2/lambda), 0, 0) to the origin: the principal-branch
// root z of  y - (x + r) tan(lambda z + (r lambda / 2) y) = 0, r = sqrt(2/lambda),
// located by bracketed bisection to 1e-12.
double helicoid_pullback_height(double lambda, double x, double y);

// max over an n x n grid of |helicoid_pullback_height - (-x y / 2)|; decays
// like sqrt(lambda).
double limit_error(double lambda, double x0, double x1, double y0, double y1, int n);

} // namespace heis

#endif
