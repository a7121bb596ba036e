#pragma once

#include <span>
#include <vector>

#include "sector_heat/domain.hpp"
#include "sector_heat/heat_kernel.hpp"
#include "sector_heat/profile.hpp"
#include "sector_heat/trajectory.hpp"

namespace sector_heat {

/// Pointwise u / (1 + alpha tau |u|^alpha)^(1/alpha).
Field absorption_flow(const Field& f, double tau, double alpha);
void absorption_flow(std::span<double> values, double tau, const Absorption& absorption);

/// Step sizes of the geometric schedule, landing exactly on every snapshot time.
std::vector<double> step_sizes(const SolverConfig& cfg);

/// Splitting with exact substeps. The first diffusion substep of symbolic data
/// is taken from the profile route of apply_semigroup.
Trajectory solve(const ProfileSpec& u0, const GridPtr& grid, const DomainSpec& spec,
                 const SolverConfig& cfg, const Absorption& absorption);
Trajectory solve(const ProfileSpec& u0, const GridPtr& grid, const DomainSpec& spec,
                 const SolverConfig& cfg);
/// Builds the uniform grid of cfg.h and cfg.radius.
Trajectory solve(const ProfileSpec& u0, const DomainSpec& spec, const SolverConfig& cfg);
Trajectory solve(const Field& u0, const DomainSpec& spec, const SolverConfig& cfg,
                 const Absorption& absorption);

/// Odd continuation of a sector field across the Dirichlet axes onto the
/// mirrored grid of R^N.
Field extend_antisymmetric(const Field& f, const DomainSpec& spec);

/// Solves on the sector and returns the antisymmetric extension of each snapshot.
Trajectory solve_rn(const ProfileSpec& v0, const DomainSpec& spec, const SolverConfig& cfg);

}  // namespace sector_heat
