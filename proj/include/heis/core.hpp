#ifndef HEIS_CORE_HPP
#define HEIS_CORE_HPP

#include <cmath>
#include <functional>
#include <stdexcept>

// Frame calculus on the 3-dimensional Heisenberg group H3 in model
// coordinates (x,y,z), with the left-invariant orthonormal frame
//   e1 = d/dx - (y/2) d/dz,  e2 = d/dy + (x/2) d/dz,  e3 = d/dz
// and the two left-invariant metrics: the Riemannian one (+,+,+) and the
// Lorentzian one (+,+,-) in this frame.

namespace heis {

struct Vec3 {
    double x{}, y{}, z{};

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double c) const { return {c * x, c * y, c * z}; }
    Vec3 operator-() const { return {-x, -y, -z}; }
    double norm() const { return std::sqrt(x * x + y * y + z * z); }
    bool finite() const {
        return std::isfinite(x) && std::isfinite(y) && std::isfinite(z);
    }
};

inline Vec3 operator*(double c, const Vec3& v) { return v * c; }

struct ModelPoint {
    double x{}, y{}, z{};

    bool finite() const {
        return std::isfinite(x) && std::isfinite(y) && std::isfinite(z);
    }
};

// Tangent vector in the coordinate basis d/dx, d/dy, d/dz.
struct CoordVector {
    ModelPoint base;
    Vec3 c; // (u, v, w) components
};

// Tangent vector in the left-invariant frame e1, e2, e3.
struct FrameVector {
    ModelPoint base;
    Vec3 a; // (a1, a2, a3) components
};

enum class MetricKind { Riemannian, Lorentzian };

// gamma[i][j][k]: coefficient of e_k in the covariant derivative of e_j
// along e_i (all indices 0-based).
struct ConnectionTable {
    double gamma[3][3][3]{};
};

// --- frame <-> coordinate conversions -------------------------------------

inline CoordVector frame_to_coord(const FrameVector& v) {
    const double x = v.base.x, y = v.base.y;
    return {v.base,
            {v.a.x, v.a.y, v.a.z - 0.5 * v.a.x * y + 0.5 * v.a.y * x}};
}

inline FrameVector coord_to_frame(const CoordVector& v) {
    const double x = v.base.x, y = v.base.y;
    return {v.base,
            {v.c.x, v.c.y, v.c.z + 0.5 * (y * v.c.x - x * v.c.y)}};
}

// --- metrics ----------------------------------------------------------------

namespace detail {
inline void require_same_base(const FrameVector& v, const FrameVector& w) {
    const double scale =
        1.0 + std::fabs(v.base.x) + std::fabs(v.base.y) + std::fabs(v.base.z);
    if (std::fabs(v.base.x - w.base.x) > 1e-12 * scale ||
        std::fabs(v.base.y - w.base.y) > 1e-12 * scale ||
        std::fabs(v.base.z - w.base.z) > 1e-12 * scale)
        throw std::invalid_argument("frame vectors based at different points");
}
} // namespace detail

inline double inner(const Vec3& a, const Vec3& b, MetricKind kind) {
    const double s = (kind == MetricKind::Riemannian) ? 1.0 : -1.0;
    return a.x * b.x + a.y * b.y + s * a.z * b.z;
}

inline double inner(const FrameVector& v, const FrameVector& w, MetricKind kind) {
    detail::require_same_base(v, w);
    return inner(v.a, w.a, kind);
}

// Riemannian frame cross product; Lorentzian exterior product for the
// (+,+,-) signature. Both are orthogonal (in kind) to their arguments.
inline Vec3 cross(const Vec3& a, const Vec3& b, MetricKind kind) {
    const Vec3 r{a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z,
                 a.x * b.y - a.y * b.x};
    if (kind == MetricKind::Riemannian) return r;
    return {r.x, r.y, -r.z};
}

inline FrameVector cross(const FrameVector& v, const FrameVector& w, MetricKind kind) {
    detail::require_same_base(v, w);
    return {v.base, cross(v.a, w.a, kind)};
}

// --- connection tables -------------------------------------------------------

const ConnectionTable& connection(MetricKind kind);

// Covariant derivative of a frame-vector field along a parametrized map:
// central differences of the frame components plus the constant-Gamma
// bilinear term. `direction` selects the parameter (0 = first, 1 = second);
// the tangent of the underlying map is recovered by central differences of
// the field's base points. With `richardson` the step-halved estimate is
// extrapolated to O(step^4).
FrameVector covariant_derivative(const std::function<FrameVector(double, double)>& field,
                                 int direction, double s, double t,
                                 MetricKind kind, double step = 1e-5,
                                 bool richardson = false);

// --- identity-component isometry group SO(2) x| R^3 --------------------------

// Represents p |-> L_(A,B,C) (rot_theta p): first rotate (x,y) about the
// z-axis by theta, then left-translate by (A,B,C).
struct IsometryElement {
    double theta{}, A{}, B{}, C{};
};

ModelPoint isometry_apply(const IsometryElement& iso, const ModelPoint& p);
CoordVector isometry_push(const IsometryElement& iso, const CoordVector& v);
FrameVector isometry_differential(const IsometryElement& iso, const FrameVector& v);

IsometryElement isometry_compose(const IsometryElement& f, const IsometryElement& g);
IsometryElement isometry_inverse(const IsometryElement& iso);

// Element with theta = 0, (A,B,C) = (2b, -2a, d); it carries the nonvertical
// plane a x + b y + z + d = 0 onto z = 0.
IsometryElement plane_flattening_isometry(double a, double b, double d);

} // namespace heis

#endif
