#pragma once

#include <string>
#include <vector>

#include "sector_heat/domain.hpp"
#include "sector_heat/nonlinear_solver.hpp"
#include "sector_heat/profile.hpp"
#include "sector_heat/report.hpp"
#include "sector_heat/trajectory.hpp"

namespace sector_heat {

enum class Regime { Critical, Supercritical, Subcritical };

struct RegimeInfo {
    Regime regime = Regime::Critical;
    /// 2 / (gamma + m).
    double critical_alpha = 0.0;
};

/// alpha against 2/(gamma+m), with a relative tie tolerance of 1e-12.
RegimeInfo classify_regime(const DomainSpec& spec);
std::string regime_name(Regime r);

/// The box [0, upper]^m x [-upper, upper]^(N-m) with spacing h, boundary included.
GridPtr default_window(const DomainSpec& spec, double h, double upper = 3.0);

/// x -> t^(sigma/2) u(t, x sqrt(t)) on the window.
Field rescaled_snapshot(const Trajectory& traj, double t, double sigma, const GridPtr& window);

/// Shared inputs of the ladder experiments. The solver grid must cover the
/// window after every rescaling used.
struct LadderSetup {
    GridPtr grid;
    GridPtr window;
    SolverConfig cfg;
};

/// e^{t Delta} D_lambda^sigma p = D_lambda^sigma e^{lambda^2 t Delta} p on the window,
/// through the closed-form route. Violation is the sup difference.
VerificationReport dilation_commutation_check(const ProfileSpec& p, double lambda, double sigma,
                                              double t, const DomainSpec& spec, const GridPtr& window,
                                              double tolerance = 1e-2);

/// S(t) D_lambda^{2/alpha} u0 = Gamma_lambda^{2/alpha} S(.) u0 at time t, both from solver runs.
VerificationReport solver_covariance_check(const ProfileSpec& u0, double lambda, double t,
                                           const DomainSpec& spec, const LadderSetup& setup,
                                           double tolerance = 1e-2);

struct SelfSimilarResult {
    std::vector<double> lambdas;
    /// sup over the window of |Gamma_lambda^{2/alpha} u(1) - u(1)|.
    std::vector<double> residuals;
    VerificationReport report;
};

/// Critical regime only. Log-periodic data is reported with an infinite tolerance.
SelfSimilarResult critical_selfsimilar_check(const ProfileSpec& u0, const std::vector<double>& lambdas,
                                             const DomainSpec& spec, const LadderSetup& setup,
                                             double tolerance = 5e-3);

struct OmegaLimitResult {
    std::vector<double> lambdas;
    /// distance[i][j] = sup |S(1) D_{lambda_i} u0 - Gamma_{lambda_j} S(.) u0 (1)|; empty when
    /// the rescaled family is skipped.
    std::vector<std::vector<double>> distance;
    std::vector<double> data_family_sup;
    std::vector<double> solution_family_sup;
    std::vector<Field> data_family;
    VerificationReport report;
};

struct OmegaLimitOptions {
    /// Skip the Gamma family, whose runs reach t = lambda^2.
    bool data_family_only = false;
    double diagonal_tolerance = 1e-2;
    /// Limit value for data whose omega-limit set is {0}.
    double zero_tolerance = 1e-2;
};

OmegaLimitResult omega_limit_probe(const ProfileSpec& u0, const std::vector<double>& lambdas,
                                   const DomainSpec& spec, const LadderSetup& setup,
                                   const OmegaLimitOptions& opt = {});

struct DeviationCurve {
    std::vector<double> times;
    std::vector<double> deviations;
    double slope = 0.0;
    VerificationReport report;
};

/// sup over the window of t^{(gamma+m)/2} |u(t, x sqrt t) - e^{t Delta} u0 (x sqrt t)|, the
/// linear part from the closed-form route. Supercritical regime only.
DeviationCurve supercritical_deviation(const ProfileSpec& u0, const std::vector<double>& times,
                                       const DomainSpec& spec, const LadderSetup& setup,
                                       double max_slope = -0.1);

/// Least-squares slope of log y against log x over the last `last` points.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y, std::size_t last = 3);

struct ProfileEstimate {
    /// g = V(1) from the largest A on the window.
    Field g;
    std::vector<double> ladder;
    /// sup |g_{A_{k+1}} - g_{A_k}|.
    std::vector<double> residuals;
    /// Most negative value of g_{A_{k+1}} - g_{A_k} (0 when monotone).
    double monotonicity_defect = 0.0;
    /// min of g - alpha^{-1/alpha} I_m(1, x).
    double lower_margin = 0.0;
    /// min of (alpha eps)^{-1/alpha} I_m(1 - eps, x) - g for eps = 1/2 and eps = 1/4.
    double upper_margin_half = 0.0;
    double upper_margin_quarter = 0.0;
    std::vector<VerificationReport> reports;
};

/// Monotone construction from the constants A of the ladder, each run to t = 1.
/// Subcritical regime, or the m = 0 validation mode.
ProfileEstimate subcritical_profile(const DomainSpec& spec, const std::vector<double>& ladder,
                                    const LadderSetup& setup, double tolerance = 1e-3);

struct ConvergenceCurve {
    std::vector<double> times;
    std::vector<double> residuals;
    VerificationReport report;
};

/// sup over the window of |t^{1/alpha} u(t, x sqrt t) - g(x)| decreasing along the times.
ConvergenceCurve subcritical_convergence_check(const ProfileSpec& u0, const Field& g,
                                               const std::vector<double>& times,
                                               const DomainSpec& spec, const LadderSetup& setup);

}  // namespace sector_heat
