#include <doctest.h>

#include <cmath>
#include <vector>

#include "sector_heat/errors.hpp"
#include "sector_heat/nonlinear_solver.hpp"
#include "sector_heat/profile.hpp"

using namespace sector_heat;

TEST_CASE("absorption flow closed forms") {
    const DomainSpec spec{1, 1, 0.5, 1.0};
    const GridPtr g = make_grid(SectorGrid::uniform(spec, 0.5, 2.0));
    Field f(g, 1.0);
    CHECK(absorption_flow(f, 1.0, 1.0)[0] == doctest::Approx(0.5));
    Field two(g, 2.0);
    CHECK(absorption_flow(two, 1.0, 2.0)[0] == doctest::Approx(0.6666667).epsilon(1e-7));
    Field mixed(g, 0.0);
    mixed[1] = -3.0;
    mixed[2] = 3.0;
    const Field out = absorption_flow(mixed, 0.7, 1.5);
    CHECK(out[0] == 0.0);
    CHECK(out[1] == doctest::Approx(-out[2]));
    const Absorption e = Absorption::exponential();
    // u' = -e^u: u(t) = -ln(e^-u0 + t).
    CHECK(e.flow(0.3, 0.5) == doctest::Approx(-std::log(std::exp(-0.3) + 0.5)));
}

TEST_CASE("step schedule lands on snapshots") {
    SolverConfig cfg;
    cfg.dt0 = 0.01;
    cfg.growth = 1.3;
    cfg.dt_max = 0.2;
    cfg.snapshots = {0.5, 1.0, 3.0};
    const auto steps = step_sizes(cfg);
    double t = 0.0;
    std::vector<double> hits;
    for (double dt : steps) {
        CHECK(dt > 0.0);
        CHECK(dt <= cfg.dt_max * (1 + 1e-12));
        t += dt;
        for (double s : cfg.snapshots)
            if (std::abs(t - s) < 1e-12) hits.push_back(s);
    }
    CHECK(hits == cfg.snapshots);
    cfg.dt_rel = 0.1;
    for (double dt : step_sizes(cfg)) CHECK(dt <= std::max(cfg.dt0, 0.1 * 3.0) * (1 + 1e-12));
}

TEST_CASE("solver config validation") {
    SolverConfig cfg;
    cfg.snapshots = {1.0, 0.5};
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg.snapshots = {1.0};
    cfg.growth = 0.5;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
}

TEST_CASE("m = 0 constant data follows the ODE") {
    const DomainSpec spec{1, 0, 0.5, 1.0};
    SolverConfig cfg;
    cfg.h = 0.25;
    cfg.radius = 16.0;
    cfg.dt0 = 0.125;
    // Tail mass erfc(cutoff / 2) must stay below the equality tolerance.
    cfg.kernel_cutoff = 10.0;
    cfg.snapshots = {0.5, 1.0};
    const Trajectory tr = solve(ProfileSpec::constant(2.0), spec, cfg);
    const auto& u = tr.snapshots.back();
    const std::size_t mid = u.size() / 2;
    CHECK(u[mid] == doctest::Approx(2.0 / (1.0 + 2.0 * 1.0)).epsilon(1e-10));
}

TEST_CASE("solution stays antisymmetric and under the universal bound") {
    const DomainSpec spec{2, 1, 1.0, 1.0};
    SolverConfig cfg;
    cfg.h = 0.25;
    cfg.radius = 10.0;
    cfg.dt0 = 0.125;
    cfg.snapshots = {0.5, 1.0};
    const Trajectory tr = solve(ProfileSpec::psi0(), spec, cfg);
    REQUIRE(tr.snapshots.size() == 2);
    for (const auto& s : tr.snapshots) CHECK(s.max_abs() <= 1.0 / (spec.alpha * s.time()) + 1e-12);
    const Trajectory rn = solve_rn(ProfileSpec::psi0(), spec, cfg);
    const Field& e = rn.snapshots.back();
    const auto& ax = e.grid().axis(0);
    const std::size_t n0 = ax.n, stride = e.grid().stride(0);
    for (std::size_t k = 0; k < n0 / 2; k += 3)
        for (std::size_t q = 0; q < stride; q += 5)
            CHECK(e[k * stride + q] == doctest::Approx(-e[(n0 - 1 - k) * stride + q]));
}
