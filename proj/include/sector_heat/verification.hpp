#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "sector_heat/domain.hpp"
#include "sector_heat/heat_kernel.hpp"
#include "sector_heat/nonlinear_solver.hpp"
#include "sector_heat/report.hpp"
#include "sector_heat/trajectory.hpp"

namespace sector_heat {

/// Nodes at least one spacing away from every Dirichlet wall.
bool interior_node(const SectorGrid& g, std::size_t flat, const DomainSpec& spec);

/// Nodes whose kernel window cutoff*sqrt(t) stays inside the truncated grid.
bool far_from_edge(const SectorGrid& g, std::size_t flat, double reach);

/// Grid semigroup applied to y_1..y_m against x_1..x_m, relative error on nodes
/// away from the outer edge.
VerificationReport kernel_identity_check(const DomainSpec& spec, const GridPtr& grid, double t,
                                         SemigroupOptions opt = {}, double tolerance = 1e-6);

/// Adaptive quadrature of the factorized kernel mass against erf_product on the
/// window nodes with x_i > 0; relative error.
VerificationReport kernel_mass_check(const DomainSpec& spec, const GridPtr& window, double t,
                                     double tolerance = 1e-6);

/// apply_semigroup(AntisymConstant{1}, t) against erf_product nodewise; relative error.
VerificationReport constant_closed_form_check(const DomainSpec& spec, const GridPtr& grid, double t,
                                              SemigroupOptions opt = {}, double tolerance = 1e-6);

/// max |u(t)| <= (alpha t)^(-1/alpha); violation is relative to the bound.
VerificationReport check_universal_bound(const Trajectory& traj, double tolerance = 1e-12);

/// u(t) <= e^{t Delta} u0 / (1 + alpha t (e^{t Delta} u0)^alpha)^(1/alpha) nodewise: the
/// trajectory's absorption flow applied to the linear part, which comes from the profile
/// route on the trajectory grid. The `equality_gap` metric is max |u - bound|
/// over nodes far from the truncation edge.
VerificationReport check_upper_estimate(const Trajectory& traj, double tolerance = 1e-4);

/// f for the bound F^{-1}(F(s) + t), F(s) = int_s^inf 1/f.
struct Nonlinearity {
    std::function<double(double)> f;
    std::string name;
    /// Smallest admissible argument of F (0 for powers, -inf for the exponential).
    double lower = 0.0;

    static Nonlinearity power(double alpha);
    static Nonlinearity exponential();
};

/// F and F^{-1} by quadrature and bisection.
class GeneralizedBound {
public:
    explicit GeneralizedBound(Nonlinearity nl);

    double F(double s) const;
    double F_inverse(double y, double hint) const;
    double bound(double s, double t) const;
    /// Throws DomainError unless f is positive, increasing and convex on [lo, hi]
    /// and F is finite there.
    void validate_on(double lo, double hi) const;

private:
    Nonlinearity nl_;
};

/// Nodewise F^{-1}(F(lin) + t).
Field generalized_bound_field(const Field& linear, double t, const GeneralizedBound& gb);

/// u <= F^{-1}(F(e^{t Delta} u0) + t) at every snapshot.
VerificationReport generalized_upper_bound(const Trajectory& traj, const Nonlinearity& nl,
                                           double tolerance = 1e-4);

/// |u(t) - v(t)| <= e^{t Delta}|u0 - v0| at each requested time.
VerificationReport check_kato_comparison(const ProfileSpec& u0, const ProfileSpec& v0,
                                         const std::vector<double>& times, const GridPtr& grid,
                                         const DomainSpec& spec, SolverConfig cfg,
                                         double tolerance = 1e-4);

/// u0 <= v0 nodewise implies u(t) <= v(t): violation is max (u - v) over interior nodes.
VerificationReport check_ordering(const ProfileSpec& u0, const ProfileSpec& v0,
                                  const std::vector<double>& times, const GridPtr& grid,
                                  const DomainSpec& spec, SolverConfig cfg, double tolerance = 1e-4);

/// Measured C = max_t ||u(t)||_X / ||u0||_X over the snapshots. The constant is not explicit,
/// so the check only fails when C exceeds `ceiling` or is not finite. Metrics: C and the
/// per-snapshot ratios.
VerificationReport check_xnorm_stability(const Trajectory& traj, double ceiling = 4.0);

struct LowerBoundResult {
    /// 5th percentile of u(t0) / (x_1..x_m min(1, |x|^-(gamma+2m))).
    double c_prime = 0.0;
    double raw_min = 0.0;
    VerificationReport report;
};

LowerBoundResult lower_bound_probe(const ProfileSpec& u0, double t0, const GridPtr& grid,
                                   const DomainSpec& spec, SolverConfig cfg);

/// Observed time order of the splitting: fixed steps dt, dt/2, dt/4 to time T on smooth
/// bounded data, order = log2(|u_dt - u_dt/2| / |u_dt/2 - u_dt/4|).
VerificationReport splitting_order_check(const Field& u0, const DomainSpec& spec, SolverConfig cfg,
                                         double dt, double T, double min_order = 1.8);

struct EllipticOptions {
    /// 2 or 4.
    int stencil_order = 2;
    double r_inner = 0.5;
    double r_outer = 2.0;
    /// Spacing of the sample lattice; 0 means h.
    double sample_spacing = 0.0;
};

/// Finite-difference Laplacian of psi0 against -(gamma+2m)(N-2-gamma) psi0 / |x|^2 on
/// an annulus. Metrics: rel_error (normalized by the largest exact value),
/// max_residual, max_psi0.
VerificationReport elliptic_residual(const DomainSpec& spec, double h,
                                     const EllipticOptions& opt = {}, double tolerance = 1e-3);

/// rel_error at h and h/2 plus the observed order log2(e_h / e_{h/2}).
VerificationReport elliptic_convergence(const DomainSpec& spec, double h,
                                        const EllipticOptions& opt = {}, double min_order = 1.8);

}  // namespace sector_heat
