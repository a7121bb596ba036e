// One PASS/FAIL line per acceptance criterion. Arguments select criteria by number.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "sector_heat/asymptotics.hpp"
#include "sector_heat/eigen.hpp"
#include "sector_heat/heat_kernel.hpp"
#include "sector_heat/nonlinear_solver.hpp"
#include "sector_heat/report.hpp"
#include "sector_heat/verification.hpp"

using namespace sector_heat;

namespace {

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail << " [failed: " << what << "]";
        }
    }
    void require(const VerificationReport& r) {
        char buf[160];
        std::snprintf(buf, sizeof buf, " %s=%.3g", r.name.c_str(), r.violation);
        detail << buf;
        if (!r.pass) {
            pass = false;
            detail << "(tol " << r.tolerance << ")";
        }
    }
    void note(const char* fmt, double v) {
        char buf[160];
        std::snprintf(buf, sizeof buf, fmt, v);
        detail << " " << buf;
    }
};

SolverConfig scaled_schedule(double dt0) {
    SolverConfig c;
    c.dt0 = dt0;
    c.dt_rel = 0.1;
    c.dt_max = 4.0;
    return c;
}

LadderSetup ladder(const DomainSpec& spec, double h, double radius, double dt0, double window_h = 0.1) {
    return {make_grid(SectorGrid::uniform(spec, h, radius)), default_window(spec, window_h, 3.0),
            scaled_schedule(dt0)};
}

const std::vector<DomainSpec> kKernelSpecs{{1, 1, 0.5, 1.0}, {2, 1, 0.5, 1.0}, {2, 2, 0.5, 1.0}};
const std::vector<double> kKernelTimes{0.25, 1.0, 4.0};

void kernel_identities(Outcome& o) {
    for (const auto& spec : kKernelSpecs) {
        const GridPtr g = make_grid(SectorGrid::uniform(spec, 0.1, 20.0));
        const GridPtr w = default_window(spec, 0.25, 3.0);
        double worst_id = 0.0, worst_mass = 0.0;
        for (double t : kKernelTimes) {
            const auto id = kernel_identity_check(spec, g, t);
            const auto mass = kernel_mass_check(spec, w, t);
            o.require(id.pass, id.name + " " + spec.describe());
            o.require(mass.pass, mass.name + " " + spec.describe());
            worst_id = std::max(worst_id, id.violation);
            worst_mass = std::max(worst_mass, mass.violation);
        }
        o.detail << " N=" << spec.N << ",m=" << spec.m;
        o.note("identity %.2e", worst_id);
        o.note("mass %.2e", worst_mass);
    }
}

void closed_form(Outcome& o) {
    for (const auto& spec : kKernelSpecs) {
        const GridPtr g = make_grid(SectorGrid::uniform(spec, 0.1, 20.0));
        double worst = 0.0;
        for (double t : kKernelTimes) {
            const auto r = constant_closed_form_check(spec, g, t);
            o.require(r.pass, r.name + " " + spec.describe());
            worst = std::max(worst, r.violation);
        }
        o.detail << " N=" << spec.N << ",m=" << spec.m;
        o.note("%.2e", worst);
    }
}

void covariance(Outcome& o) {
    const std::vector<DomainSpec> regimes{{2, 1, 1.0, 1.0}, {2, 1, 1.0, 2.0}, {2, 1, 1.0, 0.5}};
    // Truncated data is not homogeneous, so the commutation is not an identity of the data.
    const ProfileSpec trunc = ProfileSpec::truncated(1.0, Keep::Outer);
    for (const auto& spec : regimes) {
        // Covariance error is first order in h^2; the finer grid keeps it well inside 1e-2.
        const LadderSetup setup = ladder(spec, 0.125 / std::sqrt(2.0), 32.0, 0.016);
        double worst_d = 0.0, worst_c = 0.0;
        for (double l : {0.5, 2.0}) {
            const auto d = dilation_commutation_check(trunc, l, 2.0 / spec.alpha, 1.0, spec, setup.window);
            const auto c = solver_covariance_check(ProfileSpec::psi0(), l, 1.0, spec, setup);
            o.require(d.pass, "dilation " + spec.describe());
            o.require(c.pass, "covariance " + spec.describe());
            worst_d = std::max(worst_d, d.violation);
            worst_c = std::max(worst_c, c.violation);
        }
        o.detail << " " << regime_name(classify_regime(spec).regime) << ":";
        o.note("dilation %.2e", worst_d);
        o.note("covariance %.2e", worst_c);
    }
}

void universal_bound(Outcome& o) {
    const DomainSpec spec{2, 1, 1.0, 1.0};
    SolverConfig c = scaled_schedule(0.03);
    c.snapshots = {0.25, 1.0, 4.0};
    const Trajectory tr = solve(ProfileSpec::psi0(), make_grid(SectorGrid::uniform(spec, 0.125, 32.0)), spec, c);
    o.require(check_universal_bound(tr));
    o.require(check_upper_estimate(tr));

    const DomainSpec flat{1, 0, 0.5, 1.0};
    SolverConfig c0 = c;
    c0.kernel_cutoff = 10.0;
    const Trajectory t0 = solve(ProfileSpec::constant(2.0), make_grid(SectorGrid::uniform(flat, 0.1, 40.0)), flat, c0);
    const auto eq = check_upper_estimate(t0);
    o.require(eq);
    o.note("m0_equality_gap=%.2e", eq.metric("equality_gap"));
    o.require(eq.metric("equality_gap") <= 1e-10, "m=0 equality within 1e-10");
}

void kato(Outcome& o) {
    const DomainSpec spec{1, 1, 0.5, 1.0};
    const GridPtr g = make_grid(SectorGrid::uniform(spec, 0.05, 40.0));
    o.require(check_kato_comparison(ProfileSpec::psi0(), ProfileSpec::psi0(0.5), {0.5, 2.0}, g, spec,
                                    scaled_schedule(0.005)));
}

void critical(Outcome& o) {
    const DomainSpec spec{2, 1, 1.0, 1.0};
    const LadderSetup setup = ladder(spec, 0.125, 64.0, 0.03);
    const auto ss = critical_selfsimilar_check(ProfileSpec::psi0(), {2.0, 4.0, 8.0}, spec, setup);
    o.require(ss.report);

    const double omega = 2.0 * std::numbers::pi / std::log(2.0);
    const auto lp = omega_limit_probe(ProfileSpec::log_periodic(0.5, omega), {2.0, 4.0, 8.0}, spec, setup);
    o.require(lp.report);

    OmegaLimitOptions data_only;
    data_only.data_family_only = true;
    const auto gp = omega_limit_probe(ProfileSpec::gamma_prime_tail(1.9), {4.0, 16.0, 64.0, 256.0}, spec,
                                      setup, data_only);
    o.require(gp.report);
    for (std::size_t k = 1; k < gp.data_family_sup.size(); ++k)
        o.require(gp.data_family_sup[k] < gp.data_family_sup[k - 1], "tail family decreasing");
    o.note("tail_last=%.2e", gp.data_family_sup.back());
}

void supercritical(Outcome& o) {
    const DomainSpec spec{2, 1, 1.0, 2.0};
    const auto dc = supercritical_deviation(ProfileSpec::psi0(), {4.0, 16.0, 64.0}, spec,
                                            ladder(spec, 0.125, 64.0, 0.03));
    o.require(dc.report);
    for (std::size_t k = 1; k < dc.deviations.size(); ++k)
        o.require(dc.deviations[k] < dc.deviations[k - 1], "deviation strictly decreasing");
    o.note("slope=%.3f", dc.slope);
}

void subcritical(Outcome& o) {
    const DomainSpec spec{1, 1, 0.5, 1.0};
    LadderSetup fine = ladder(spec, 0.01, 20.0, 2e-4, 0.05);
    const std::vector<double> amps{1e2, 1e4, 1e6, 1e8, 1e10};
    const ProfileEstimate est = subcritical_profile(spec, amps, fine);
    for (const auto& r : est.reports) o.require(r);

    const auto conv = subcritical_convergence_check(ProfileSpec::truncated(1.0, Keep::Outer), est.g,
                                                    {16.0, 64.0, 256.0}, spec,
                                                    ladder(spec, 0.05, 200.0, 0.005, 0.05));
    o.require(conv.report);

    const DomainSpec flat{1, 0, 0.5, 1.0};
    LadderSetup f0 = ladder(flat, 0.1, 20.0, 0.03);
    f0.cfg.kernel_cutoff = 10.0;
    const ProfileEstimate e0 = subcritical_profile(flat, amps, f0);
    bool seen = false;
    for (const auto& r : e0.reports)
        if (r.name == "profile_m0_constant") {
            seen = true;
            o.require(r);
        }
    o.require(seen, "m=0 constant report");
}

void lower_bound(Outcome& o) {
    const DomainSpec spec{1, 1, 0.5, 1.0};
    const GridPtr g = make_grid(SectorGrid::uniform(spec, 0.05, 40.0));
    for (double t0 : {1.0, 4.0}) {
        const auto lb = lower_bound_probe(ProfileSpec::truncated(1.0, Keep::Outer), t0, g, spec,
                                          scaled_schedule(0.005));
        o.require(lb.report.pass && lb.c_prime > 0.0, "c' > 0");
        o.detail << " t0=" << t0;
        o.note("c'=%.3e", lb.c_prime);
    }
}

void eigenvalue(Outcome& o) {
    for (const auto& spec : kKernelSpecs) {
        const EigenResult r = sector_ball_eigen(spec, 1.0 / 200.0);
        const double oracle = bessel_oracle(spec.shifted_dimension());
        const double rel = std::abs(r.lambda - oracle) / oracle;
        o.require(rel <= 1e-2, "oracle within 1% " + spec.describe());
        o.detail << " N=" << spec.N << ",m=" << spec.m;
        o.note("rel %.2e", rel);
        if (spec.N == 1) {
            const double pi2 = std::numbers::pi * std::numbers::pi;
            o.require(std::abs(r.lambda - pi2) / pi2 <= 5e-3, "pi^2 within 0.5%");
        }
    }
}

void elliptic(Outcome& o) {
    const DomainSpec spec{2, 1, 1.0, 1.0};
    o.require(elliptic_residual(spec, 1.0 / 400.0));
    const auto conv = elliptic_convergence(spec, 1.0 / 200.0);
    o.require(conv);
    o.note("order=%.2f", conv.metric("order"));
    EllipticOptions e4;
    e4.stencil_order = 4;
    e4.sample_spacing = 1.0 / 40.0;
    o.require(elliptic_residual(DomainSpec{3, 1, 1.0, 1.0}, 1.0 / 400.0, e4, 1e-6));
}

void generalized(Outcome& o) {
    const DomainSpec spec{2, 1, 1.0, 1.0};
    SolverConfig c = scaled_schedule(0.03);
    c.snapshots = {0.25, 1.0, 4.0};
    const GridPtr g = make_grid(SectorGrid::uniform(spec, 0.125, 16.0));
    const Trajectory tr = solve(ProfileSpec::psi0(), g, spec, c);
    o.require(generalized_upper_bound(tr, Nonlinearity::power(spec.alpha)));
    const GeneralizedBound gb(Nonlinearity::power(spec.alpha));
    double worst = 0.0;
    for (const Field& s : tr.snapshots) {
        const Field lin = apply_semigroup(ProfileSpec::psi0(), s.time(), g, spec);
        for (std::size_t i = 0; i < s.size(); ++i) {
            const double closed = tr.absorption.flow(lin[i], s.time());
            if (closed > 0.0) worst = std::max(worst, std::abs(gb.bound(lin[i], s.time()) - closed) / closed);
        }
    }
    o.require(VerificationReport::make("power_reduction", worst, 1e-10));

    // Bounded positive data in the free-space mode, steps of at least 2 h^2.
    const DomainSpec flat{2, 0, 1.0, 1.0};
    const GridPtr g0 = make_grid(SectorGrid::uniform(flat, 0.125, 12.0));
    const Field u0 = Field::sample(g0, [](std::span<const double> x) { return 2.0 + std::exp(-norm2(x) * norm2(x)); });
    SolverConfig ce;
    ce.dt0 = 0.05;
    ce.dt_max = 0.05;
    ce.growth = 1.0;
    ce.snapshots = {0.1, 0.25, 0.5};
    o.require(generalized_upper_bound(solve(u0, flat, ce, Absorption::exponential()), Nonlinearity::exponential()));
}

void splitting(Outcome& o) {
    const DomainSpec spec{2, 1, 1.0, 1.0};
    const GridPtr g = make_grid(SectorGrid::uniform(spec, 0.1, 8.0));
    const Field u0 = Field::sample(g, [](std::span<const double> x) { return 2.0 * x[0] * std::exp(-norm2(x) * norm2(x)); });
    const auto r = splitting_order_check(u0, spec, SolverConfig{}, 0.1, 1.0);
    o.require(r);
    o.note("order=%.3f", r.metric("order"));
}

}  // namespace

int main(int argc, char** argv) {
    const std::vector<std::pair<const char*, std::function<void(Outcome&)>>> criteria{
        {"kernel mass and identity", kernel_identities},
        {"antisymmetric constant closed form", closed_form},
        {"dilation commutation and solver covariance", covariance},
        {"universal bound and sharp upper estimate", universal_bound},
        {"Kato comparison", kato},
        {"critical regime", critical},
        {"supercritical regime", supercritical},
        {"subcritical regime", subcritical},
        {"lower-bound propagation", lower_bound},
        {"eigenvalue identity", eigenvalue},
        {"elliptic identity", elliptic},
        {"generalized bound", generalized},
        {"splitting order", splitting},
    };
    std::vector<int> selected;
    for (int i = 1; i < argc; ++i) selected.push_back(std::atoi(argv[i]));
    if (selected.empty())
        for (int i = 1; i <= static_cast<int>(criteria.size()); ++i) selected.push_back(i);

    int failed = 0;
    for (int k : selected) {
        if (k < 1 || k > static_cast<int>(criteria.size())) {
            std::fprintf(stderr, "no criterion %d\n", k);
            return 2;
        }
        Outcome o;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            criteria[k - 1].second(o);
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail << " [exception: " << e.what() << "]";
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("%s criterion %d (%s):%s [%.1fs]\n", o.pass ? "PASS" : "FAIL", k, criteria[k - 1].first,
                    o.detail.str().c_str(), secs);
        std::fflush(stdout);
        failed += !o.pass;
    }
    return failed == 0 ? 0 : 1;
}
