#include "sector_heat/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "sector_heat/asymptotics.hpp"
#include "sector_heat/eigen.hpp"
#include "sector_heat/errors.hpp"
#include "sector_heat/heat_kernel.hpp"
#include "sector_heat/nonlinear_solver.hpp"
#include "sector_heat/parallel.hpp"
#include "sector_heat/verification.hpp"
#include "sector_heat/weighted_space.hpp"

namespace sector_heat {

namespace fs = std::filesystem;

namespace {

std::ofstream open_out(const fs::path& path) {
    std::ofstream out(path);
    if (!out) throw NumericalError("cannot write " + path.string());
    return out;
}

bool has_suite(const RunConfig& c, const std::string& s) {
    return std::find(c.suites.begin(), c.suites.end(), s) != c.suites.end();
}

GridPtr solver_grid(const RunConfig& c) {
    return make_grid(SectorGrid::uniform(c.spec, c.solver.h, c.solver.radius));
}

Absorption absorption_of(const RunConfig& c) {
    return c.absorption == "exponential" ? Absorption::exponential() : Absorption::power(c.spec.alpha);
}

void log_report(std::ostream& log, const VerificationReport& r) {
    log << (r.pass ? "PASS " : "FAIL ") << r.name << " violation=" << format_double(r.violation)
        << " tolerance=" << format_double(r.tolerance) << "\n";
}

// Smooth bounded data for the splitting-order check.
Field smooth_bump(const GridPtr& g, const DomainSpec& spec) {
    return Field::sample(g, [&](std::span<const double> x) {
        double p = 2.0, r2 = 0.0;
        for (int i = 0; i < spec.N; ++i) {
            if (i < spec.m) p *= x[i];
            r2 += x[i] * x[i];
        }
        return p * std::exp(-r2);
    });
}

}  // namespace

void write_field_table(const Field& f, const fs::path& path, const std::string& fp) {
    auto out = open_out(path);
    const SectorGrid& g = f.grid();
    out << "# fingerprint=" << fp << "\n";
    for (std::size_t a = 0; a < g.dims(); ++a) out << "x" << a + 1 << ",";
    out << "value,time\n";
    std::vector<double> x(g.dims());
    const std::string t = format_double(f.time());
    for (std::size_t i = 0; i < f.size(); ++i) {
        g.point(i, x);
        for (double c : x) out << format_double(c) << ",";
        out << format_double(f[i]) << "," << t << "\n";
    }
}

void write_summary_table(const std::vector<VerificationReport>& reports, const fs::path& path,
                         const std::string& fp) {
    auto out = open_out(path);
    out << "# fingerprint=" << fp << "\n";
    out << "name,violation,tolerance,pass\n";
    for (const auto& r : reports)
        out << r.name << "," << format_double(r.violation) << "," << format_double(r.tolerance) << ","
            << (r.pass ? 1 : 0) << "\n";
}

std::vector<VerificationReport> run_solve(const RunConfig& cfg, const fs::path& out, std::ostream& log) {
    const GridPtr grid = solver_grid(cfg);
    const ProfileSpec u0 = cfg.initial_data();
    const Trajectory traj = solve(u0, grid, cfg.spec, cfg.solver, absorption_of(cfg));
    const std::string fp = cfg.fingerprint();
    auto table = open_out(out / "solve_snapshots.csv");
    table << "# fingerprint=" << fp << "\n"
          << "time,max_abs,min,xnorm,file\n";
    for (std::size_t k = 0; k < traj.snapshots.size(); ++k) {
        const Field& s = traj.snapshots[k];
        char name[64];
        std::snprintf(name, sizeof name, "field_%03zu.csv", k);
        write_field_table(s, out / name, fp);
        double mn = 0.0;
        for (double v : s.values()) mn = std::min(mn, v);
        const double xn = cfg.spec.validation_mode() ? NAN : xnorm(s, cfg.spec).norm;
        table << format_double(s.time()) << "," << format_double(s.max_abs()) << "," << format_double(mn)
              << "," << format_double(xn) << "," << name << "\n";
    }
    log << "solve: " << traj.snapshots.size() << " snapshots, " << traj.steps
        << " steps, time-variation indicator " << format_double(traj.splitting_error) << "\n";

    std::vector<VerificationReport> reports;
    if (traj.absorption.kind == Absorption::Kind::Power) {
        reports.push_back(check_universal_bound(traj));
        if (u0.nonnegative()) reports.push_back(check_upper_estimate(traj));
    } else if (u0.nonnegative()) {
        reports.push_back(generalized_upper_bound(traj, Nonlinearity::exponential()));
    }
    return reports;
}

std::vector<VerificationReport> run_verify(const RunConfig& cfg, const fs::path& out, std::ostream& log) {
    std::vector<VerificationReport> reports;
    const DomainSpec& spec = cfg.spec;
    const GridPtr grid = solver_grid(cfg);
    const GridPtr window = default_window(spec, cfg.window_h, cfg.window);
    const SemigroupOptions opt{cfg.solver.kernel_cutoff, cfg.solver.jobs};
    const ProfileSpec u0 = cfg.initial_data();
    auto add = [&](VerificationReport r) {
        log_report(log, r);
        reports.push_back(std::move(r));
    };

    if (has_suite(cfg, "kernel")) {
        for (double t : cfg.times) {
            add(kernel_identity_check(spec, grid, t, opt));
            if (spec.m > 0) add(kernel_mass_check(spec, window, t));
            add(constant_closed_form_check(spec, grid, t, opt));
        }
        if (spec.m > 0) add(kernel_domination_check(spec, cfg.samples, cfg.seed));
    }

    SolverConfig sc = cfg.solver;
    sc.snapshots = cfg.times;
    std::optional<Trajectory> traj;
    auto trajectory = [&]() -> const Trajectory& {
        if (!traj) traj = solve(u0, grid, spec, sc, absorption_of(cfg));
        return *traj;
    };

    if (has_suite(cfg, "bounds")) {
        if (absorption_of(cfg).kind == Absorption::Kind::Power) add(check_universal_bound(trajectory()));
        if (u0.nonnegative()) {
            add(check_upper_estimate(trajectory()));
            ProfileSpec half = u0;
            half.scale *= 0.5;
            add(check_ordering(half, u0, cfg.times, grid, spec, cfg.solver));
        }
        if (!spec.validation_mode() && !u0.bounded_only()) add(check_xnorm_stability(trajectory()));
    }
    if (has_suite(cfg, "generalized")) {
        const Trajectory& tr = trajectory();
        if (tr.absorption.kind == Absorption::Kind::Power) {
            const Nonlinearity nl = Nonlinearity::power(spec.alpha);
            add(generalized_upper_bound(tr, nl));
            // The power reduction against the closed form on every snapshot.
            const GeneralizedBound gb(nl);
            double worst = 0.0;
            for (const Field& s : tr.snapshots) {
                const Field lin = apply_semigroup(u0, s.time(), grid, spec, opt);
                for (std::size_t i = 0; i < lin.size(); i += 7) {
                    const double closed = tr.absorption.flow(lin[i], s.time());
                    if (closed > 0.0)
                        worst = std::max(worst, std::abs(gb.bound(lin[i], s.time()) - closed) / closed);
                }
            }
            add(VerificationReport::make("generalized_power_reduction", worst, 1e-10, cfg.fingerprint()));
        } else {
            add(generalized_upper_bound(tr, Nonlinearity::exponential()));
        }
    }
    if (has_suite(cfg, "kato")) {
        ProfileSpec v0 = u0;
        v0.scale *= cfg.kato_scale;
        add(check_kato_comparison(u0, v0, cfg.times, grid, spec, cfg.solver));
    }
    if (has_suite(cfg, "lower")) {
        for (double t : cfg.times) {
            const LowerBoundResult lb = lower_bound_probe(u0, t, grid, spec, cfg.solver);
            add(lb.report);
        }
    }
    if (has_suite(cfg, "elliptic")) {
        EllipticOptions eo;
        eo.stencil_order = cfg.elliptic_order;
        eo.sample_spacing = cfg.elliptic_spacing;
        const bool harmonic = spec.N - 2.0 - spec.gamma == 0.0;
        add(elliptic_residual(spec, cfg.elliptic_h, eo, harmonic ? 1e-6 : 1e-3));
        if (!harmonic) add(elliptic_convergence(spec, cfg.elliptic_h, eo, eo.stencil_order == 4 ? 3.6 : 1.8));
    }
    if (has_suite(cfg, "splitting")) {
        const GridPtr g = make_grid(SectorGrid::uniform(spec, cfg.solver.h, std::min(cfg.solver.radius, 8.0)));
        add(splitting_order_check(smooth_bump(g, spec), spec, cfg.solver, cfg.solver.dt0, cfg.times.front(),
                                  cfg.solver.order == Splitting::Strang ? 1.8 : 0.9));
    }
    if (traj) {
        const std::string fp = cfg.fingerprint();
        for (std::size_t k = 0; k < traj->snapshots.size(); ++k) {
            char name[64];
            std::snprintf(name, sizeof name, "verify_field_%03zu.csv", k);
            write_field_table(traj->snapshots[k], out / name, fp);
        }
    }
    return reports;
}

std::vector<VerificationReport> run_asymptotics(const RunConfig& cfg, const fs::path& out,
                                                std::ostream& log) {
    std::vector<VerificationReport> reports;
    const DomainSpec& spec = cfg.spec;
    LadderSetup setup{solver_grid(cfg), default_window(spec, cfg.window_h, cfg.window), cfg.solver};
    const ProfileSpec u0 = cfg.initial_data();
    const std::string fp = cfg.fingerprint();
    auto add = [&](VerificationReport r) {
        log_report(log, r);
        reports.push_back(std::move(r));
    };
    auto curves = open_out(out / "asymptotics_curves.csv");
    curves << "# fingerprint=" << fp << "\n"
           << "check,point,value\n";
    auto curve = [&](const std::string& name, const std::vector<double>& pts, const std::vector<double>& vals) {
        for (std::size_t k = 0; k < pts.size(); ++k)
            curves << name << "," << format_double(pts[k]) << "," << format_double(vals[k]) << "\n";
    };

    const RegimeInfo info = classify_regime(spec);
    log << "regime: " << regime_name(info.regime) << " (alpha=" << format_double(spec.alpha)
        << ", 2/(gamma+m)=" << format_double(info.critical_alpha) << ")\n";

    if (has_suite(cfg, "regime")) {
        switch (info.regime) {
            case Regime::Critical: {
                const bool tail = std::holds_alternative<GammaPrimeTail>(u0.shape);
                if (!tail) {
                    const SelfSimilarResult ss = critical_selfsimilar_check(u0, cfg.ladder, spec, setup);
                    curve("selfsimilar_residual", ss.lambdas, ss.residuals);
                    add(ss.report);
                }
                OmegaLimitOptions oo;
                oo.data_family_only = tail;
                const OmegaLimitResult om = omega_limit_probe(u0, cfg.ladder, spec, setup, oo);
                curve("data_family_sup", om.lambdas, om.data_family_sup);
                if (!om.solution_family_sup.empty())
                    curve("solution_family_sup", om.lambdas, om.solution_family_sup);
                add(om.report);
                break;
            }
            case Regime::Supercritical: {
                const DeviationCurve dc = supercritical_deviation(u0, cfg.times, spec, setup);
                curve("deviation", dc.times, dc.deviations);
                add(dc.report);
                break;
            }
            case Regime::Subcritical: {
                LadderSetup ps = setup;
                ps.grid = make_grid(SectorGrid::uniform(spec, cfg.profile_h, cfg.profile_radius));
                ps.cfg.dt0 = cfg.profile_dt0;
                const ProfileEstimate est = subcritical_profile(spec, cfg.profile_ladder, ps);
                std::vector<double> pts(cfg.profile_ladder.begin() + 1, cfg.profile_ladder.end());
                curve("profile_cauchy", pts, est.residuals);
                write_field_table(est.g, out / "profile_g.csv", fp);
                for (const auto& r : est.reports) add(r);
                if (!spec.validation_mode()) {
                    const ConvergenceCurve cc = subcritical_convergence_check(u0, est.g, cfg.times, spec, setup);
                    curve("convergence_residual", cc.times, cc.residuals);
                    add(cc.report);
                }
                break;
            }
        }
    }
    if (has_suite(cfg, "covariance")) {
        for (double l : cfg.covariance_lambdas) {
            add(dilation_commutation_check(u0, l, 2.0 / spec.alpha, 1.0, spec, setup.window));
            add(solver_covariance_check(u0, l, 1.0, spec, setup));
        }
    }
    return reports;
}

std::vector<VerificationReport> run_eigen(const RunConfig& cfg, const fs::path& out, std::ostream& log) {
    const DomainSpec& spec = cfg.spec;
    EigenOptions eo;
    eo.boundary = cfg.ball_boundary();
    const EigenResult res = sector_ball_eigen(spec, cfg.eigen_h, eo);
    const double oracle = bessel_oracle(spec.shifted_dimension());
    const double rel = std::abs(res.lambda - oracle) / oracle;
    const std::string fp = cfg.fingerprint();
    auto table = open_out(out / "eigen_table.csv");
    table << "# fingerprint=" << fp << "\n"
          << "N,m,h,lambda,oracle,rel_error,iterations,unknowns\n"
          << spec.N << "," << spec.m << "," << format_double(cfg.eigen_h) << "," << format_double(res.lambda)
          << "," << format_double(oracle) << "," << format_double(rel) << "," << res.iterations << ","
          << res.unknowns << "\n";
    write_field_table(res.field, out / "eigen_field.csv", fp);
    log << "eigen: lambda=" << format_double(res.lambda) << " oracle=" << format_double(oracle)
        << " rel_error=" << format_double(rel) << "\n";

    std::vector<VerificationReport> reports;
    auto r = VerificationReport::make("eigen_identity", rel, 1e-2, fp);
    r.add("lambda", res.lambda);
    r.add("oracle", oracle);
    reports.push_back(r);
    reports.push_back(separable_eigen_check(spec, cfg.eigen_h));
    for (const auto& x : reports) log_report(log, x);
    return reports;
}

std::vector<VerificationReport> run_report(const fs::path& out, std::ostream& log) {
    std::vector<VerificationReport> all;
    std::vector<std::string> sources;
    if (!fs::is_directory(out)) throw ConfigError("no output directory " + out.string());
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(out)) {
        const std::string name = e.path().filename().string();
        if (name.size() > 12 && name.ends_with("_reports.txt")) files.push_back(e.path());
    }
    std::sort(files.begin(), files.end());
    if (files.empty()) throw ConfigError("no *_reports.txt in " + out.string());
    for (const auto& f : files) {
        std::ifstream in(f);
        std::stringstream ss;
        ss << in.rdbuf();
        for (auto& r : parse_reports(ss.str())) {
            sources.push_back(f.filename().string());
            all.push_back(std::move(r));
        }
    }
    auto table = open_out(out / "report_summary.csv");
    table << "source,name,violation,tolerance,pass,fingerprint\n";
    std::size_t failed = 0;
    for (std::size_t i = 0; i < all.size(); ++i) {
        const auto& r = all[i];
        table << sources[i] << "," << r.name << "," << format_double(r.violation) << ","
              << format_double(r.tolerance) << "," << (r.pass ? 1 : 0) << "," << r.fingerprint << "\n";
        log_report(log, r);
        failed += !r.pass;
    }
    log << "report: " << all.size() << " checks, " << failed << " failed\n";
    return all;
}

int run_cli(const std::string& subcommand, const std::string& config_path, const std::string& out_dir,
            int jobs, std::ostream& log, std::ostream& err) {
    static const std::vector<std::string> known = {"solve", "verify", "asymptotics", "eigen", "report"};
    if (std::find(known.begin(), known.end(), subcommand) == known.end()) {
        err << "unknown subcommand '" << subcommand << "'\n";
        return kExitConfig;
    }
    RunConfig cfg;
    try {
        if (!config_path.empty()) {
            cfg = RunConfig::load(config_path);
        } else if (subcommand != "report") {
            throw ConfigError("--config is required");
        }
        if (!out_dir.empty()) cfg.out_dir = out_dir;
        cfg.solver.jobs = jobs > 0 ? jobs : default_jobs();
        cfg.validate();
    } catch (const std::exception& e) {
        err << "config error: " << e.what() << "\n";
        return kExitConfig;
    }

    const fs::path out(cfg.out_dir);
    try {
        std::vector<VerificationReport> reports;
        if (subcommand == "report") {
            reports = run_report(out, log);
        } else {
            fs::create_directories(out);
            if (subcommand == "solve")
                reports = run_solve(cfg, out, log);
            else if (subcommand == "verify")
                reports = run_verify(cfg, out, log);
            else if (subcommand == "asymptotics")
                reports = run_asymptotics(cfg, out, log);
            else
                reports = run_eigen(cfg, out, log);
            if (subcommand == "solve")
                for (const auto& r : reports) log_report(log, r);
            {
                auto f = open_out(out / (subcommand + "_reports.txt"));
                f << serialize_reports(reports);
            }
            write_summary_table(reports, out / (subcommand + "_summary.csv"), cfg.fingerprint());
            auto c = open_out(out / (subcommand + "_config.txt"));
            c << cfg.serialize();
        }
        const bool ok = std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.pass; });
        return ok ? kExitOk : kExitFailedChecks;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const DomainError& e) {
        err << "domain error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        err << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    }
}

}  // namespace sector_heat
