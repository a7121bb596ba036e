#pragma once

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "sector_heat/domain.hpp"
#include "sector_heat/profile.hpp"

namespace sector_heat {

/// The reaction part u' = -f(u) and its exact flow.
struct Absorption {
    enum class Kind { Power, Exponential };
    Kind kind = Kind::Power;
    double alpha = 1.0;

    /// f(u) = |u|^alpha u.
    static Absorption power(double alpha) { return {Kind::Power, alpha}; }
    /// f(u) = e^u.
    static Absorption exponential() { return {Kind::Exponential, 0.0}; }

    double f(double u) const;
    /// Exact solution at time tau of u' = -f(u) started from u.
    double flow(double u, double tau) const;
};

enum class Splitting { Lie, Strang };

struct SolverConfig {
    Splitting order = Splitting::Strang;
    /// First full step; the initial half-step dt0/2 is taken from the exact profile route.
    double dt0 = 0.02;
    double growth = 1.2;
    double dt_max = 0.5;
    /// Optional cap dt <= max(dt0, dt_rel * t), which keeps the schedule close to scale invariant.
    double dt_rel = std::numeric_limits<double>::infinity();
    std::vector<double> snapshots{1.0};

    /// Grid used when solve() builds its own.
    double h = 0.1;
    double radius = 20.0;

    /// Kernel support in units of sqrt(tau).
    double kernel_cutoff = 8.0;
    int jobs = 1;

    /// Throws ConfigError on dt <= 0, growth < 1, unsorted snapshots.
    void validate() const;
    std::string describe() const;
};

/// Snapshots of one solver run.
struct Trajectory {
    DomainSpec spec;
    SolverConfig config;
    std::optional<ProfileSpec> initial;
    Absorption absorption;
    std::vector<Field> snapshots;
    /// Sum over steps of sup |u_k - 2 u_{k-1} + u_{k-2}| / 12: a time-variation indicator,
    /// not an error bound. The splitting order itself is measured by dt halving.
    double splitting_error = 0.0;
    /// Most negative value met for nonnegative data (undershoot is reported, never clamped).
    double min_value = 0.0;
    std::size_t steps = 0;

    const SectorGrid& grid() const { return snapshots.front().grid(); }
    double first_time() const { return snapshots.front().time(); }
    double last_time() const { return snapshots.back().time(); }
    /// Snapshot at time t, linear in time between stored snapshots.
    Field at(double t) const;
};

}  // namespace sector_heat
