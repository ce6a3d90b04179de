#ifndef HEIS_VERIFY_HPP
#define HEIS_VERIFY_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "heis/geodesics.hpp"
#include "heis/ruled.hpp"

// The nine verification suites behind `heis3 verify-all` and the acceptance
// test binary. Every tolerance is fixed here; suites are deterministic given
// the seed.

namespace heis::verify {

// Central tolerance table: every acceptance threshold is pinned here.
namespace tol {
inline constexpr double connection_exact = 1e-15;
inline constexpr double momentum_drift = 1e-9;
inline constexpr double horizontal_line = 1e-8;
inline constexpr double line_condition = 1e-10;
inline constexpr double line_trace = 1e-6;
inline constexpr double catalog_mean_curvature = 1e-8;
inline constexpr double catalog_implicit = 1e-10;
inline constexpr double graph_residual = 1e-10;
inline constexpr double coefficient_agreement = 1e-6;
inline constexpr double fit_residual = 1e-8;
inline constexpr double witness_amplitude = 0.1;
inline constexpr double ruling_residual_zero = 1e-12;
inline constexpr double constructed_implicit = 1e-9;
inline constexpr double limit_ratio_halfband = 0.15;
inline constexpr double limit_small_lambda_error = 1e-2;
inline constexpr double metric_invariance = 1e-10;
inline constexpr double plane_flattening = 1e-12;
inline constexpr double fd_agreement = 1e-6;
inline constexpr double fd_ratio_halfband = 0.5;
} // namespace tol

struct CheckResult {
    std::string name;
    double measured{};
    double threshold{};
    std::string relation; // "<=" or ">"
    bool pass{};
};

CheckResult check_le(std::string name, double measured, double threshold);
CheckResult check_gt(std::string name, double measured, double threshold);

struct VerificationReport {
    std::string suite;
    std::vector<CheckResult> checks;
    double runtime_s{};

    bool passed() const;
    const CheckResult* first_failure() const;
};

struct Options {
    std::uint64_t seed = 42;
    bool tamper_connection = false; // fault-injection hook for the exit-code contract
};

// 1. connection tables: torsion-free, metric-compatible, entry-for-entry match
VerificationReport connection_suite(const Options& opts = {});
// 2. momentum conservation + horizontal straight lines, 100 random starts
VerificationReport geodesic_conservation_suite(const Options& opts = {});
// 3. straight-line criterion vs integrated traces, 1000 lines
VerificationReport straight_line_suite(const Options& opts = {});
// 4. the four classified surfaces are zero-mean-curvature under both metrics
VerificationReport catalog_minimality_suite(const Options& opts = {});
// 5. expansion coefficients: printed closed forms vs least-squares extraction
VerificationReport lemma25_suite(const Options& opts = {});
// 6. horizontally ruled classification and constructed-surface identities
VerificationReport lemma26_suite(const Options& opts = {});
// 7. helicoid rescaling limit: sup-norm error decays like sqrt(lambda)
VerificationReport helicoid_limit_suite(const Options& opts = {});
// 8. isometry group action: metric invariance, plane flattening, x-axis slide
VerificationReport isometry_suite(const Options& opts = {});
// 9. closed-form tangents/second derivatives vs finite-difference pipeline
VerificationReport crossform_suite(const Options& opts = {});

std::vector<VerificationReport> run_all(const Options& opts = {});

// Independent construction of the ruled surface from its defining data: the
// base curve is integrated from the frame velocity (sin a, cos a, g) and each
// ruling is an integrated geodesic with initial velocity (h cos a, -h sin a, 1).
// Positions only; used as the numeric oracle against the closed forms.
Immersion ruled_surface_numeric(const RuledProfile& prof);

// Connection-table defect measures (exact zero for the shipped tables).
double torsion_defect(const ConnectionTable& tab);
double compatibility_defect(const ConnectionTable& tab, MetricKind kind);
double table_mismatch(const ConnectionTable& tab, MetricKind kind);

} // namespace heis::verify

#endif
