#pragma once

#include <cstddef>

#include "sector_heat/domain.hpp"
#include "sector_heat/report.hpp"

namespace sector_heat {

/// How the curved boundary |x| = 1 enters the five-point Laplacian.
enum class BallBoundary {
    /// Linear ghost through the crossing point; keeps the matrix symmetric.
    Ghost,
    /// Neighbors outside the ball are dropped (first order).
    Mask,
};

struct EigenOptions {
    BallBoundary boundary = BallBoundary::Ghost;
    double tolerance = 1e-10;
    int max_iterations = 500;
};

struct EigenResult {
    double lambda = 0.0;
    /// Ground state on the staggered grid, zero outside the ball, max value 1.
    Field field;
    double h = 0.0;
    int iterations = 0;
    std::size_t unknowns = 0;
};

/// Lowest Dirichlet eigenvalue of -Laplace on the unit sector-ball by inverse iteration
/// with a sparse Cholesky factorization.
EigenResult sector_ball_eigen(const DomainSpec& spec, double h, const EigenOptions& opt = {});

/// J_nu(x) for x >= 0: ascending series up to 20, Hankel expansion above.
double bessel_j(double nu, double x);

/// First positive zero of J_nu, nu >= -1/2.
double bessel_first_zero(double nu);

/// (first zero of J_nu)^2 with nu = d/2 - 1: the ground eigenvalue of the unit ball in R^d.
double bessel_oracle(int d);

struct SeparableCheckOptions {
    double amplitude = 1.0;
    double r_inner = 0.3;
    double r_outer = 0.9;
    /// Spacing of the sample lattice; 0 means h.
    double sample_spacing = 0.0;
};

/// H = x_1..x_m r^-nu J_nu(j r) against the second-order Laplacian: max |Delta_h H + j^2 H|
/// relative to max |j^2 H| on the annulus.
VerificationReport separable_eigen_check(const DomainSpec& spec, double h,
                                         const SeparableCheckOptions& opt = {},
                                         double tolerance = 1e-3);

/// Relative eigenvalue error against the oracle at h and h/2, and the observed order.
VerificationReport eigen_refinement(const DomainSpec& spec, double h, double min_order = 1.5,
                                    const EigenOptions& opt = {});

}  // namespace sector_heat
