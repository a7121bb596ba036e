#include <doctest.h>

#include <cmath>
#include <vector>

#include "sector_heat/errors.hpp"
#include "sector_heat/nonlinear_solver.hpp"
#include "sector_heat/report.hpp"
#include "sector_heat/verification.hpp"

using namespace sector_heat;

TEST_CASE("report text round trip") {
    auto r = VerificationReport::make("upper_estimate", -1.25e-9, 1e-4, "abc");
    r.add("t=1", 0.1 + 0.2);
    r.note = "two words";
    auto s = VerificationReport::make("other", 2.0, 1.0);
    const auto back = parse_reports(serialize_reports({r, s}));
    REQUIRE(back.size() == 2);
    CHECK(back[0].name == "upper_estimate");
    CHECK(back[0].violation == r.violation);
    CHECK(back[0].pass);
    CHECK(back[0].metric("t=1") == 0.1 + 0.2);
    CHECK(back[0].note == "two words");
    CHECK_FALSE(back[1].pass);
    CHECK(format_double(0.1) == "0.10000000000000001");
    CHECK(fingerprint("a") != fingerprint("b"));
    CHECK(fingerprint("a").size() == 16);
}

TEST_CASE("generalized bound reduces to the power formula") {
    const double alpha = 1.5;
    const GeneralizedBound gb(Nonlinearity::power(alpha));
    for (double s : {0.01, 0.5, 3.0, 40.0}) {
        CHECK(gb.F(s) == doctest::Approx(std::pow(s, -alpha) / alpha).epsilon(1e-12));
        for (double t : {0.1, 1.0, 5.0}) {
            const double closed = s / std::pow(1.0 + alpha * t * std::pow(s, alpha), 1.0 / alpha);
            CHECK(gb.bound(s, t) == doctest::Approx(closed).epsilon(1e-10));
        }
        CHECK(gb.bound(s, 0.0) == doctest::Approx(s).epsilon(1e-12));
    }
}

TEST_CASE("generalized bound for the exponential") {
    const GeneralizedBound gb(Nonlinearity::exponential());
    for (double s : {-2.0, 0.0, 1.5}) {
        CHECK(gb.F(s) == doctest::Approx(std::exp(-s)).epsilon(1e-12));
        CHECK(gb.bound(s, 0.7) == doctest::Approx(-std::log(std::exp(-s) + 0.7)).epsilon(1e-10));
    }
    CHECK_NOTHROW(gb.validate_on(-2.0, 3.0));
}

TEST_CASE("kernel identity and closed form on a small grid") {
    const DomainSpec spec{1, 1, 0.5, 1.0};
    const GridPtr g = make_grid(SectorGrid::uniform(spec, 0.05, 12.0));
    CHECK(kernel_identity_check(spec, g, 0.25).pass);
    CHECK(constant_closed_form_check(spec, g, 0.25).pass);
    const GridPtr w = make_grid(SectorGrid::box(spec, 0.1, 3.0));
    CHECK(kernel_mass_check(spec, w, 1.0).pass);
}

TEST_CASE("upper estimate is attained for m = 0 constants") {
    const DomainSpec spec{1, 0, 0.5, 1.0};
    SolverConfig cfg;
    cfg.h = 0.25;
    cfg.radius = 16.0;
    cfg.dt0 = 0.125;
    // Tail mass erfc(cutoff / 2) must stay below the equality tolerance.
    cfg.kernel_cutoff = 10.0;
    cfg.snapshots = {0.5, 1.0};
    const Trajectory tr = solve(ProfileSpec::constant(2.0), spec, cfg);
    const auto r = check_upper_estimate(tr);
    CHECK(r.pass);
    CHECK(std::abs(r.metric("equality_gap")) <= 1e-10);
    CHECK(check_universal_bound(tr).pass);
}

TEST_CASE("Kato comparison of equal data is trivial") {
    const DomainSpec spec{1, 1, 0.5, 1.0};
    const GridPtr g = make_grid(SectorGrid::uniform(spec, 0.1, 16.0));
    SolverConfig cfg;
    cfg.dt0 = 0.02;
    const auto r = check_kato_comparison(ProfileSpec::psi0(), ProfileSpec::psi0(), {0.5}, g, spec, cfg);
    CHECK(r.pass);
    CHECK(r.violation <= 0.0);
}

TEST_CASE("elliptic identity coefficients") {
    EllipticOptions opt;
    const auto r = elliptic_residual(DomainSpec{2, 1, 1.0, 1.0}, 0.01, opt, 1e-2);
    CHECK(r.pass);
    opt.stencil_order = 4;
    opt.sample_spacing = 0.1;
    const auto h = elliptic_residual(DomainSpec{3, 1, 1.0, 1.0}, 0.01, opt, 1e-4);
    CHECK(h.pass);
    const auto c = elliptic_convergence(DomainSpec{2, 1, 1.0, 1.0}, 0.02);
    CHECK(c.pass);
}

TEST_CASE("Strang splitting is second order on smooth data") {
    const DomainSpec spec{1, 1, 0.5, 1.0};
    const GridPtr g = make_grid(SectorGrid::uniform(spec, 0.1, 8.0));
    const Field u0 = Field::sample(g, [](std::span<const double> x) { return 2.0 * x[0] * std::exp(-x[0] * x[0]); });
    SolverConfig cfg;
    CHECK(splitting_order_check(u0, spec, cfg, 0.1, 1.0).pass);
    cfg.order = Splitting::Lie;
    const auto lie = splitting_order_check(u0, spec, cfg, 0.1, 1.0, 0.9);
    CHECK(lie.pass);
    CHECK(lie.metric("order") < 1.5);
}

TEST_CASE("ordering and X-norm stability for psi0") {
    const DomainSpec spec{1, 1, 0.5, 1.0};
    const GridPtr g = make_grid(SectorGrid::uniform(spec, 0.1, 16.0));
    SolverConfig cfg;
    cfg.dt0 = 0.02;
    cfg.snapshots = {0.5, 1.0};
    CHECK(check_ordering(ProfileSpec::truncated(1.0, Keep::Outer), ProfileSpec::psi0(), {0.5, 1.0}, g, spec, cfg).pass);
    const auto bad = check_ordering(ProfileSpec::psi0(), ProfileSpec::psi0(0.5), {0.5}, g, spec, cfg);
    CHECK_FALSE(bad.pass);
    const Trajectory tr = solve(ProfileSpec::psi0(), g, spec, cfg);
    const auto st = check_xnorm_stability(tr);
    CHECK(st.pass);
    CHECK(st.metric("C") > 0.5);
    CHECK(st.metric("C") < 4.0);
}
