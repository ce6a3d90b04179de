#include "heis/ruled.hpp"

#include <cmath>
#include <numbers>

#include "heis/lsq.hpp"

namespace heis {

SmoothFn SmoothFn::constant(double c) {
    return {[c](double) { return c; }, [](double) { return 0.0; },
            [](double) { return 0.0; }};
}

SmoothFn SmoothFn::linear(double v, double dv) {
    return {[v, dv](double s) { return v + dv * s; },
            [dv](double) { return dv; }, [](double) { return 0.0; }};
}

SmoothFn SmoothFn::jet2(double v, double dv, double ddv) {
    return {[v, dv, ddv](double s) { return v + dv * s + 0.5 * ddv * s * s; },
            [dv, ddv](double s) { return dv + ddv * s; },
            [ddv](double) { return ddv; }};
}

namespace {

struct Jet {
    double h, dh, ddh;
    double al, dal, ddal;
    double g, dg;
};

Jet eval_jet(const RuledProfile& prof, double s) {
    return {prof.h.f(s),     prof.h.df(s),     prof.h.ddf(s),
            prof.alpha.f(s), prof.alpha.df(s), prof.alpha.ddf(s),
            prof.g.f(s),     prof.g.df(s)};
}

struct Trig {
    double ca, sa;   // cos a, sin a
    double cta, sta; // cos(t-a), sin(t-a)
    double ct, st;   // cos t, sin t
};

Trig eval_trig(const Jet& j, double t) {
    return {std::cos(j.al), std::sin(j.al), std::cos(t - j.al),
            std::sin(t - j.al), std::cos(t), std::sin(t)};
}

Vec3 tangent_s(const Jet& j, const Trig& r, double t) {
    return {r.sa + j.dh * r.sta + j.dh * r.sa - j.h * j.dal * r.cta + j.h * j.dal * r.ca,
            r.ca - j.dh * r.cta + j.dh * r.ca - j.h * j.dal * r.sta - j.h * j.dal * r.sa,
            j.g - j.h * r.st + t * j.h * j.dh - j.h * j.dh * r.st + j.h * j.h * j.dal -
                j.h * j.h * j.dal * r.ct};
}

Vec3 tangent_t(const Jet& j, const Trig& r) {
    return {j.h * r.cta, j.h * r.sta, 1.0};
}

Vec3 dXs_dt(const Jet& j, const Trig& r) {
    return {j.dh * r.cta + j.h * j.dal * r.sta,
            j.dh * r.sta - j.h * j.dal * r.cta,
            -j.h * r.ct + j.h * j.dh - j.h * j.dh * r.ct + j.h * j.h * j.dal * r.st};
}

Vec3 dXs_ds(const Jet& j, const Trig& r, double t) {
    const double h = j.h, dh = j.dh, ddh = j.ddh, dal = j.dal, ddal = j.ddal;
    return {dal * r.ca - 2.0 * dh * dal * r.cta + 2.0 * dh * dal * r.ca -
                h * dal * dal * r.sta - h * dal * dal * r.sa + ddh * r.sta +
                ddh * r.sa - h * ddal * r.cta + h * ddal * r.ca,
            -dal * r.sa - 2.0 * dh * dal * r.sta - 2.0 * dh * dal * r.sa +
                h * dal * dal * r.cta - h * dal * dal * r.ca - ddh * r.cta +
                ddh * r.ca - h * ddal * r.sta - h * ddal * r.sa,
            j.dg - dh * r.st + (dh * dh + h * ddh) * (t - r.st) +
                (2.0 * h * dh * dal + h * h * ddal) * (1.0 - r.ct)};
}

} // namespace

RuledTangents ruled_tangents(const RuledProfile& prof, double s, double t) {
    const Jet j = eval_jet(prof, s);
    const Trig r = eval_trig(j, t);
    return {tangent_s(j, r, t), tangent_t(j, r)};
}

RuledSecond ruled_second_derivatives(const RuledProfile& prof, double s, double t) {
    const Jet j = eval_jet(prof, s);
    const Trig r = eval_trig(j, t);
    const Vec3 Xs = tangent_s(j, r, t);
    const Vec3 Xt = tangent_t(j, r);
    const Vec3 pt = dXs_dt(j, r);
    const Vec3 ps = dXs_ds(j, r, t);

    const Vec3 Xst{pt.x + 0.5 * (Xt.y * Xs.z + Xt.z * Xs.y),
                   pt.y - 0.5 * (Xt.x * Xs.z + Xt.z * Xs.x),
                   pt.z + 0.5 * (Xt.x * Xs.y - Xt.y * Xs.x)};
    const Vec3 Xss{ps.x + Xs.y * Xs.z, ps.y - Xs.x * Xs.z, ps.z};
    return {Xst, Xss};
}

double htilde(const RuledProfile& prof, double s, double t) {
    const RuledTangents tg = ruled_tangents(prof, s, t);
    const RuledSecond sd = ruled_second_derivatives(prof, s, t);
    const Vec3 C = cross(tg.Xs, tg.Xt, MetricKind::Riemannian);
    const MetricKind R = MetricKind::Riemannian;
    return inner(tg.Xt, tg.Xt, R) * inner(sd.Xss, C, R) -
           2.0 * inner(tg.Xs, tg.Xt, R) * inner(sd.Xst, C, R);
}

Lemma25Coefficients lemma25_coefficients(double h0, double dh0, double ddh0,
                                         double dalpha0, double ddalpha0,
                                         double g0, double dg0) {
    (void)ddalpha0;
    (void)dg0;
    const double h2 = h0 * h0, h3 = h2 * h0, h4 = h3 * h0, h5 = h4 * h0;
    const double h6 = h5 * h0, h7 = h6 * h0, h8 = h7 * h0;
    const double a = dalpha0, a2 = a * a, a3 = a2 * a;
    const double d = dh0, d2 = d * d, d3 = d2 * d;

    Lemma25Coefficients out;
    out.A3 = h5 * d3;
    out.B1 = -3.0 * h0 * d2 - h3 * d2 - 3.0 * h0 * d3 - h3 * d3 -
             2.0 * h3 * g0 * d * a - 6.0 * g0 * h5 * d * a - 3.0 * h3 * d * a2 -
             9.0 * d * h5 * a2 - 6.0 * h7 * d * a2 - h4 * ddh0 - h2 * ddh0;
    out.B5 = 0.25 * (3.0 * h4 * a + 3.0 * h6 * a + 6.0 * h4 * d * a + 6.0 * h6 * d * a +
                     3.0 * h4 * d2 * a + 3.0 * d2 * a * h6 - h6 * a3 - h8 * a3);
    out.C5 = 0.25 * (h3 + h5 + 3.0 * h3 * d + 3.0 * h5 * d + 3.0 * h3 * d2 +
                     3.0 * h5 * d2 + h3 * d3 + h5 * d3 - 3.0 * h5 * a2 - 3.0 * h7 * a2 -
                     3.0 * h5 * d * a2 - 3.0 * d * h7 * a2);
    return out;
}

ExpansionCoefficients extract_expansion_coefficients(const RuledProfile& prof) {
    if (std::fabs(prof.alpha.f(0.0)) > 1e-12)
        throw std::invalid_argument(
            "extract_expansion_coefficients: profile must have alpha(0) = 0");

    constexpr std::size_t nodes = 64, dim = 16;
    const double two_pi = 2.0 * std::numbers::pi;

    std::vector<double> A(nodes * dim);
    std::vector<double> y(nodes);
    std::vector<double> ts(nodes);
    for (std::size_t k = 0; k < nodes; ++k) {
        const double t = two_pi * static_cast<double>(k) / static_cast<double>(nodes);
        ts[k] = t;
        y[k] = htilde(prof, 0.0, t);
        double* row = &A[k * dim];
        row[0] = 1.0;
        row[1] = t;
        row[2] = t * t;
        row[3] = t * t * t;
        row[4] = std::cos(t);
        row[5] = t * std::cos(t);
        row[6] = t * t * std::cos(t);
        row[7] = std::cos(2.0 * t);
        row[8] = t * std::cos(2.0 * t);
        row[9] = std::cos(3.0 * t);
        row[10] = std::sin(t);
        row[11] = t * std::sin(t);
        row[12] = t * t * std::sin(t);
        row[13] = std::sin(2.0 * t);
        row[14] = t * std::sin(2.0 * t);
        row[15] = std::sin(3.0 * t);
    }

    const std::vector<double> coeff = lsq_solve(A, y, nodes, dim);

    ExpansionCoefficients out;
    for (std::size_t i = 0; i < dim; ++i) out.c[i] = coeff[i];
    double worst = 0.0;
    for (std::size_t k = 0; k < nodes; ++k) {
        double fit = 0.0;
        for (std::size_t i = 0; i < dim; ++i) fit += A[k * dim + i] * coeff[i];
        worst = std::max(worst, std::fabs(fit - y[k]));
    }
    out.fit_residual = worst;
    return out;
}

double horizontal_ruled_residual(const HorizontalRuledProfile& prof, double s, double t) {
    const double da = prof.alpha.df(s), dda = prof.alpha.ddf(s);
    const double b = prof.beta.f(s), db = prof.beta.df(s);
    const double cb = std::cos(b), sb = std::sin(b);
    return db + t * (da * db * cb - dda * sb) + 0.5 * t * t * (da * db * sb + dda * cb);
}

namespace {

// Coordinate velocity of the base curve of a horizontally ruled surface:
// Y_s(s,0) = cos b (-sin a e1 + cos a e2) + sin b e3, expressed at (x,y,z).
Vec3 base_velocity(const HorizontalRuledProfile& prof, double s, double x, double y) {
    const double a = prof.alpha.f(s), b = prof.beta.f(s);
    const double cb = std::cos(b), sb = std::sin(b);
    const double u = -cb * std::sin(a), v = cb * std::cos(a);
    return {u, v, sb - 0.5 * u * y + 0.5 * v * x};
}

ModelPoint integrate_base(const HorizontalRuledProfile& prof, const ModelPoint& start,
                          double s_end) {
    if (s_end == 0.0) return start;
    const long n = std::max(64L, static_cast<long>(std::ceil(std::fabs(s_end) / 1e-3)));
    const double h = s_end / static_cast<double>(n);
    double x = start.x, y = start.y, z = start.z, s = 0.0;
    for (long i = 0; i < n; ++i) {
        const Vec3 k1 = base_velocity(prof, s, x, y);
        const Vec3 k2 = base_velocity(prof, s + 0.5 * h, x + 0.5 * h * k1.x, y + 0.5 * h * k1.y);
        const Vec3 k3 = base_velocity(prof, s + 0.5 * h, x + 0.5 * h * k2.x, y + 0.5 * h * k2.y);
        const Vec3 k4 = base_velocity(prof, s + h, x + h * k3.x, y + h * k3.y);
        x += h / 6.0 * (k1.x + 2.0 * k2.x + 2.0 * k3.x + k4.x);
        y += h / 6.0 * (k1.y + 2.0 * k2.y + 2.0 * k3.y + k4.y);
        z += h / 6.0 * (k1.z + 2.0 * k2.z + 2.0 * k3.z + k4.z);
        s += h;
    }
    return {x, y, z};
}

} // namespace

Immersion horizontal_ruled_surface(const HorizontalRuledProfile& prof, const ModelPoint& base) {
    Immersion imm;
    imm.pos = [prof, base](double s, double t) {
        const ModelPoint b = integrate_base(prof, base, s);
        const double a = prof.alpha.f(s);
        const double ca = std::cos(a), sa = std::sin(a);
        // ruling is the straight line with constant z slope (x0 sin a - y0 cos a)/2
        return ModelPoint{b.x + t * ca, b.y + t * sa,
                          b.z + 0.5 * (b.x * sa - b.y * ca) * t};
    };
    imm.d_t = [prof, imm](double s, double t) {
        const ModelPoint p = imm.pos(s, t);
        const double a = prof.alpha.f(s);
        const double ca = std::cos(a), sa = std::sin(a);
        return frame_to_coord({p, {ca, sa, 0.0}}).c;
    };
    imm.d_s = [prof, imm](double s, double t) {
        const ModelPoint p = imm.pos(s, t);
        const double a = prof.alpha.f(s), da = prof.alpha.df(s), b = prof.beta.f(s);
        const double ca = std::cos(a), sa = std::sin(a);
        const double cb = std::cos(b), sb = std::sin(b);
        const Vec3 Ys{-cb * sa - t * da * sa, cb * ca + t * da * ca,
                      sb - t * cb - 0.5 * t * t * da};
        return frame_to_coord({p, Ys}).c;
    };
    return imm;
}

std::optional<double> helicoid_lambda(double a, double b) {
    if (a == 0.0)
        throw std::invalid_argument("helicoid_lambda: requires a != 0");
    const double den = 1.0 + std::cos(2.0 * b) + 4.0 * a * std::sin(b);
    if (std::fabs(den) < 1e-12) return std::nullopt; // plane z = 0
    return 4.0 * a * a / den;
}

CatalogSurface catalog_surface(CatalogTag tag, double lambda) {
    CatalogSurface cs;
    cs.tag = tag;
    switch (tag) {
        case CatalogTag::HorizontalPlane: {
            cs.has_graph = true;
            auto zero = [](double, double) { return 0.0; };
            cs.graph = {zero, zero, zero, zero, zero, zero};
            cs.param = graph_immersion(cs.graph);
            cs.implicit = [](const ModelPoint& p) { return p.z; };
            break;
        }
        case CatalogTag::VerticalPlane: {
            cs.has_graph = false;
            cs.param.pos = [](double s, double t) { return ModelPoint{s, 0.0, t}; };
            cs.param.d_s = [](double, double) { return Vec3{1.0, 0.0, 0.0}; };
            cs.param.d_t = [](double, double) { return Vec3{0.0, 0.0, 1.0}; };
            auto zv = [](double, double) { return Vec3{0.0, 0.0, 0.0}; };
            cs.param.d_ss = zv;
            cs.param.d_st = zv;
            cs.param.d_tt = zv;
            cs.implicit = [](const ModelPoint& p) { return p.y; };
            break;
        }
        case CatalogTag::Helicoid: {
            if (lambda == 0.0)
                throw std::invalid_argument("catalog_surface: helicoid requires lambda != 0");
            cs.lambda = lambda;
            const double lam = lambda;
            cs.has_graph = true; // branch z = atan2(y,x)/lambda on x > 0
            cs.graph = {
                [lam](double x, double y) { return std::atan2(y, x) / lam; },
                [lam](double x, double y) { return -y / (lam * (x * x + y * y)); },
                [lam](double x, double y) { return x / (lam * (x * x + y * y)); },
                [lam](double x, double y) {
                    const double r2 = x * x + y * y;
                    return 2.0 * x * y / (lam * r2 * r2);
                },
                [lam](double x, double y) {
                    const double r2 = x * x + y * y;
                    return (y * y - x * x) / (lam * r2 * r2);
                },
                [lam](double x, double y) {
                    const double r2 = x * x + y * y;
                    return -2.0 * x * y / (lam * r2 * r2);
                }};
            cs.param.pos = [lam](double s, double t) {
                return ModelPoint{t * std::cos(s), t * std::sin(s), s / lam};
            };
            cs.param.d_s = [lam](double s, double t) {
                return Vec3{-t * std::sin(s), t * std::cos(s), 1.0 / lam};
            };
            cs.param.d_t = [](double s, double) {
                return Vec3{std::cos(s), std::sin(s), 0.0};
            };
            cs.param.d_ss = [](double s, double t) {
                return Vec3{-t * std::cos(s), -t * std::sin(s), 0.0};
            };
            cs.param.d_st = [](double s, double) {
                return Vec3{-std::sin(s), std::cos(s), 0.0};
            };
            cs.param.d_tt = [](double, double) { return Vec3{0.0, 0.0, 0.0}; };
            cs.implicit = [lam](const ModelPoint& p) {
                return p.x * std::sin(lam * p.z) - p.y * std::cos(lam * p.z);
            };
            break;
        }
        case CatalogTag::HyperbolicParaboloid: {
            cs.has_graph = true;
            cs.graph = {[](double x, double y) { return -0.5 * x * y; },
                        [](double, double y) { return -0.5 * y; },
                        [](double x, double) { return -0.5 * x; },
                        [](double, double) { return 0.0; },
                        [](double, double) { return -0.5; },
                        [](double, double) { return 0.0; }};
            cs.param = graph_immersion(cs.graph);
            cs.implicit = [](const ModelPoint& p) { return p.z + 0.5 * p.x * p.y; };
            break;
        }
    }
    return cs;
}

double helicoid_pullback_height(double lambda, double x, double y) {
    if (!(lambda > 0.0))
        throw std::invalid_argument("helicoid_pullback_height: lambda must be positive");
    const double r = std::sqrt(2.0 / lambda);
    const double shift = 0.5 * r * lambda * y;
    auto F = [&](double z) { return y - (x + r) * std::tan(lambda * z + shift); };

    double lo = (-0.5 * std::numbers::pi - shift) / lambda;
    double hi = (0.5 * std::numbers::pi - shift) / lambda;
    double flo = F(lo), fhi = F(hi);
    if (!std::isfinite(flo) || !std::isfinite(fhi) || flo == 0.0 || fhi == 0.0) {
        // nudge off the branch ends where tan may overflow
        const double eps = 1e-9 * (hi - lo);
        lo += eps;
        hi -= eps;
        flo = F(lo);
        fhi = F(hi);
    }
    if (!(flo * fhi < 0.0))
        throw std::domain_error("helicoid_pullback_height: outside chart");

    for (int i = 0; i < 256 && hi - lo > 1e-12; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double fm = F(mid);
        if (fm == 0.0) return mid;
        if (flo * fm < 0.0) {
            hi = mid;
        } else {
            lo = mid;
            flo = fm;
        }
    }
    return 0.5 * (lo + hi);
}

double limit_error(double lambda, double x0, double x1, double y0, double y1, int n) {
    if (n < 2) throw std::invalid_argument("limit_error: grid size must be >= 2");
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = x0 + (x1 - x0) * static_cast<double>(i) / (n - 1);
        for (int j = 0; j < n; ++j) {
            const double y = y0 + (y1 - y0) * static_cast<double>(j) / (n - 1);
            const double z = helicoid_pullback_height(lambda, x, y);
            worst = std::max(worst, std::fabs(z + 0.5 * x * y));
        }
    }
    return worst;
}

} // namespace heis
