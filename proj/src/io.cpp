#include "heis/io.hpp"

#include <cstdio>

namespace heis {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt9(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

void write_trace_csv(std::ostream& os, const GeodesicTrace& trace, const std::string& cfg) {
    os << "# " << cfg << "\n";
    os << "t,x,y,z,dx,dy,dz,J\n";
    for (const TraceSample& s : trace.samples) {
        const GeodesicState& g = s.state;
        os << fmt17(s.t) << ',' << fmt17(g.x) << ',' << fmt17(g.y) << ','
           << fmt17(g.z) << ',' << fmt17(g.dx) << ',' << fmt17(g.dy) << ','
           << fmt17(g.dz) << ',' << fmt17(momentum(g)) << '\n';
    }
}

void write_residual_csv(std::ostream& os, const std::vector<ResidualRow>& rows,
                        const std::string& cfg) {
    os << "# " << cfg << "\n";
    os << "x,y,riem_residual,lorentz_residual,diff_eq7,laplacian,causal\n";
    for (const ResidualRow& r : rows) {
        os << fmt17(r.x) << ',' << fmt17(r.y) << ',' << fmt17(r.riem) << ','
           << fmt17(r.lorentz) << ',' << fmt17(r.diff_eq7) << ','
           << fmt17(r.laplacian) << ',' << to_string(r.causal) << '\n';
    }
}

void write_convergence_csv(std::ostream& os, const std::vector<ConvergenceRow>& rows,
                           const std::string& cfg) {
    os << "# " << cfg << "\n";
    os << "lambda,sup_error,ratio_to_prev\n";
    for (const ConvergenceRow& r : rows) {
        os << fmt17(r.lambda) << ',' << fmt17(r.sup_error) << ',';
        if (r.has_ratio) os << fmt17(r.ratio_to_prev);
        os << '\n';
    }
}

void write_mesh_obj(std::ostream& os, const Immersion& imm, double s0, double s1,
                    double t0, double t1, int n, const std::string& comment) {
    os << "# " << comment << "\n";
    for (int i = 0; i < n; ++i) {
        const double s = s0 + (s1 - s0) * static_cast<double>(i) / (n - 1);
        for (int j = 0; j < n; ++j) {
            const double t = t0 + (t1 - t0) * static_cast<double>(j) / (n - 1);
            const ModelPoint p = imm.pos(s, t);
            os << "v " << fmt9(p.x) << ' ' << fmt9(p.y) << ' ' << fmt9(p.z) << '\n';
        }
    }
    auto idx = [n](int i, int j) { return i * n + j + 1; };
    for (int i = 0; i + 1 < n; ++i)
        for (int j = 0; j + 1 < n; ++j) {
            os << "f " << idx(i, j) << ' ' << idx(i, j + 1) << ' ' << idx(i + 1, j + 1) << '\n';
            os << "f " << idx(i, j) << ' ' << idx(i + 1, j + 1) << ' ' << idx(i + 1, j) << '\n';
        }
}

} // namespace heis
