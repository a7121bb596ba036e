#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sector_heat/domain.hpp"
#include "sector_heat/eigen.hpp"
#include "sector_heat/profile.hpp"
#include "sector_heat/trajectory.hpp"

namespace sector_heat {

/// Everything one CLI run needs. Text form: one `key = value` per line, `#` starts a
/// comment, lists are comma separated, reals are written with 17 significant digits.
struct RunConfig {
    DomainSpec spec{2, 1, 1.0, 1.0};
    SolverConfig solver;
    /// power | exponential
    std::string absorption = "power";

    /// psi0 | truncated | log_periodic | constant | gamma_prime_tail
    std::string profile = "psi0";
    double scale = 1.0;
    double rho = 1.0;
    std::string keep = "outer";
    double amplitude = 0.5;
    double omega = 1.0;
    double phase = 0.0;
    double A = 1.0;
    double gamma_prime = 1.5;
    double tail_cutoff = 1.0;

    /// verify: kernel, bounds, generalized, kato, lower, elliptic, splitting.
    /// asymptotics: regime, covariance.
    std::vector<std::string> suites{"kernel"};
    std::vector<double> times{0.25, 1.0, 4.0};
    std::vector<double> ladder{2.0, 4.0, 8.0};
    std::vector<double> covariance_lambdas{0.5, 2.0};
    double window = 3.0;
    double window_h = 0.1;
    double kato_scale = 0.5;
    std::size_t samples = 2000;

    /// Grid and schedule of the constant-data runs behind the subcritical profile.
    double profile_h = 0.01;
    double profile_radius = 20.0;
    double profile_dt0 = 2e-4;
    std::vector<double> profile_ladder{1e2, 1e4, 1e6, 1e8, 1e10};

    double eigen_h = 0.005;
    /// ghost | mask
    std::string eigen_boundary = "ghost";

    double elliptic_h = 0.0025;
    int elliptic_order = 2;
    double elliptic_spacing = 0.0;

    std::uint64_t seed = 1;
    std::string out_dir = "out";

    /// Throws ConfigError on any inconsistent value.
    void validate() const;
    ProfileSpec initial_data() const;
    BallBoundary ball_boundary() const;
    std::string serialize() const;
    static RunConfig parse(const std::string& text);
    static RunConfig load(const std::string& path);
    /// Fingerprint of the serialized form with output.dir left out.
    std::string fingerprint() const;
};

}  // namespace sector_heat
