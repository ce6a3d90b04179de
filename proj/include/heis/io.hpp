#ifndef HEIS_IO_HPP
#define HEIS_IO_HPP

#include <ostream>
#include <string>

#include "heis/geodesics.hpp"
#include "heis/surface.hpp"

namespace heis {

// 17 significant digits: round-trips a double exactly.
std::string fmt17(double v);
// 9 significant digits, used by the mesh writer.
std::string fmt9(double v);

// Header: t,x,y,z,dx,dy,dz,J (17 significant digits). `cfg` is echoed as a
// leading comment line for provenance.
void write_trace_csv(std::ostream& os, const GeodesicTrace& trace, const std::string& cfg);

struct ResidualRow {
    double x{}, y{};
    double riem{}, lorentz{}, diff_eq7{}, laplacian{};
    CausalType causal{};
};

// Header: x,y,riem_residual,lorentz_residual,diff_eq7,laplacian,causal.
void write_residual_csv(std::ostream& os, const std::vector<ResidualRow>& rows,
                        const std::string& cfg);

struct ConvergenceRow {
    double lambda{}, sup_error{};
    bool has_ratio{};
    double ratio_to_prev{};
};

// Header: lambda,sup_error,ratio_to_prev (ratio empty on the first row).
void write_convergence_csv(std::ostream& os, const std::vector<ConvergenceRow>& rows,
                           const std::string& cfg);

// Plaintext triangle mesh: `v x y z` records for an n x n row-major vertex
// grid over [s0,s1] x [t0,t1], then `f a b c` records (1-based) triangulating
// every grid cell.
void write_mesh_obj(std::ostream& os, const Immersion& imm, double s0, double s1,
                    double t0, double t1, int n, const std::string& comment);

} // namespace heis

#endif
