#ifndef HEIS_GEODESICS_HPP
#define HEIS_GEODESICS_HPP

#include <vector>

#include "heis/core.hpp"

// The geodesic equation of H3 in model coordinates,
//   x'' = -y' J,   y'' = x' J,   (z' + (x'y - xy')/2)' = 0,
// where J = z' + (x'y - xy')/2 is the conserved momentum (the e3 frame
// component of velocity).

namespace heis {

struct GeodesicState {
    double x{}, y{}, z{};    // position
    double dx{}, dy{}, dz{}; // coordinate velocity
};

// Conserved momentum J = dz + (dx*y - x*dy)/2.
double momentum(const GeodesicState& s);

// Time derivative of the full first-order state. The z'' entry is written so
// that J' = 0 holds identically:  z'' = J (x dx + y dy) / 2.
GeodesicState geodesic_rhs(const GeodesicState& s);

struct TraceSample {
    double t{};
    GeodesicState state;
};

struct GeodesicTrace {
    double step{};
    std::vector<TraceSample> samples;
};

// Classical fixed-step 4th order integration; `v0` holds frame components of
// the initial velocity at p0. The second-order system is reduced to first
// order with J held as an invariant of the reduction, so the recorded dz is
// always J - (dx*y - x*dy)/2.
GeodesicTrace integrate_geodesic(const ModelPoint& p0, const Vec3& v0_frame,
                                 double t_max, double step);

// Straight line p + t d with Euclidean direction d (coordinates).
struct Line3 {
    ModelPoint p;
    Vec3 d;
};

// Closed form of the horizontal geodesic through p0 with frame velocity
// (a1, a2, 0): a Euclidean straight line with z slope -(a1 y0 - x0 a2)/2.
Line3 horizontal_geodesic(const ModelPoint& p0, const Vec3& v0_frame);

// A straight line is a geodesic iff a3 = -(a1 b2 - a2 b1)/2 for direction
// (a1,a2,a3) and any base point (b1,b2,b3), or the line is vertical.
bool is_geodesic_line(const Line3& line, double tol = 1e-10);

} // namespace heis

#endif
