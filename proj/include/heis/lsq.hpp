#ifndef HEIS_LSQ_HPP
#define HEIS_LSQ_HPP

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace heis {

// Dense least squares min ||A x - b|| via Householder QR with column
// equilibration and one step of iterative refinement. A is row-major m x n,
// m >= n. Throws if a pivot collapses (rank deficiency).
inline std::vector<double> lsq_solve(std::vector<double> A, const std::vector<double>& b,
                                     std::size_t m, std::size_t n) {
    if (A.size() != m * n || b.size() != m || m < n)
        throw std::invalid_argument("lsq_solve: bad dimensions");

    auto at = [&A, n](std::size_t i, std::size_t j) -> double& { return A[i * n + j]; };

    // equilibrate columns; polynomial-times-trig bases span several orders
    std::vector<double> scale(n, 1.0);
    for (std::size_t j = 0; j < n; ++j) {
        double norm = 0.0;
        for (std::size_t i = 0; i < m; ++i) norm += at(i, j) * at(i, j);
        norm = std::sqrt(norm);
        if (norm > 0.0) {
            scale[j] = norm;
            for (std::size_t i = 0; i < m; ++i) at(i, j) /= norm;
        }
    }
    const std::vector<double> A0 = A; // scaled copy for residual evaluation

    std::vector<std::vector<double>> reflectors(n);
    for (std::size_t k = 0; k < n; ++k) {
        double norm = 0.0;
        for (std::size_t i = k; i < m; ++i) norm += at(i, k) * at(i, k);
        norm = std::sqrt(norm);
        if (norm < 1e-13)
            throw std::runtime_error("lsq_solve: ill-conditioned sample matrix");
        const double alpha = at(k, k) >= 0.0 ? -norm : norm;

        std::vector<double>& v = reflectors[k];
        v.resize(m - k);
        v[0] = at(k, k) - alpha;
        for (std::size_t i = k + 1; i < m; ++i) v[i - k] = at(i, k);
        double beta = 0.0;
        for (double vi : v) beta += vi * vi;

        if (beta > 0.0)
            for (std::size_t j = k; j < n; ++j) {
                double dot = 0.0;
                for (std::size_t i = k; i < m; ++i) dot += v[i - k] * at(i, j);
                const double c = 2.0 * dot / beta;
                for (std::size_t i = k; i < m; ++i) at(i, j) -= c * v[i - k];
            }
    }

    auto solve = [&](std::vector<double> rhs) {
        for (std::size_t k = 0; k < n; ++k) {
            const std::vector<double>& v = reflectors[k];
            double beta = 0.0;
            for (double vi : v) beta += vi * vi;
            if (beta == 0.0) continue;
            double dot = 0.0;
            for (std::size_t i = k; i < m; ++i) dot += v[i - k] * rhs[i];
            const double c = 2.0 * dot / beta;
            for (std::size_t i = k; i < m; ++i) rhs[i] -= c * v[i - k];
        }
        std::vector<double> x(n);
        for (std::size_t k = n; k-- > 0;) {
            double acc = rhs[k];
            for (std::size_t j = k + 1; j < n; ++j) acc -= at(k, j) * x[j];
            x[k] = acc / at(k, k);
        }
        return x;
    };

    std::vector<double> x = solve(b);
    // one refinement pass against the equilibrated system
    std::vector<double> resid(m);
    for (std::size_t i = 0; i < m; ++i) {
        double acc = b[i];
        for (std::size_t j = 0; j < n; ++j) acc -= A0[i * n + j] * x[j];
        resid[i] = acc;
    }
    const std::vector<double> dx = solve(resid);
    for (std::size_t j = 0; j < n; ++j) x[j] = (x[j] + dx[j]) / scale[j];
    return x;
}

} // namespace heis

#endif
