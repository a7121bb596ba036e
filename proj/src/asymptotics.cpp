#include "sector_heat/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sector_heat/errors.hpp"
#include "sector_heat/heat_kernel.hpp"
#include "sector_heat/parallel.hpp"
#include "sector_heat/weighted_space.hpp"

namespace sector_heat {

RegimeInfo classify_regime(const DomainSpec& spec) {
    spec.validate();
    const double ac = spec.critical_alpha();
    RegimeInfo info{Regime::Critical, ac};
    if (std::abs(spec.alpha - ac) <= 1e-12 * ac)
        info.regime = Regime::Critical;
    else if (spec.alpha > ac)
        info.regime = Regime::Supercritical;
    else
        info.regime = Regime::Subcritical;
    return info;
}

std::string regime_name(Regime r) {
    switch (r) {
        case Regime::Critical: return "critical";
        case Regime::Supercritical: return "supercritical";
        case Regime::Subcritical: return "subcritical";
    }
    return "unknown";
}

GridPtr default_window(const DomainSpec& spec, double h, double upper) {
    return make_grid(SectorGrid::box(spec, h, upper));
}

Field rescaled_snapshot(const Trajectory& traj, double t, double sigma, const GridPtr& window) {
    if (!(t > 0.0)) throw DomainError("rescaled snapshot needs t > 0");
    return resample_dilated(traj.at(t), window, std::sqrt(t), sigma, t);
}

namespace {

void require_regime(const DomainSpec& spec, Regime want, const char* what) {
    const RegimeInfo info = classify_regime(spec);
    if (info.regime != want)
        throw DomainError(std::string(what) + " needs the " + regime_name(want) + " regime, got " +
                          regime_name(info.regime) + " (alpha=" + format_double(spec.alpha) +
                          ", 2/(gamma+m)=" + format_double(info.critical_alpha) + ")");
}

double sup_diff(const Field& a, const Field& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

Field on_window(const Field& f, const GridPtr& window, double lambda = 1.0, double sigma = 0.0) {
    return resample_dilated(f, window, lambda, sigma, f.time());
}

SolverConfig with_snapshots(SolverConfig cfg, std::vector<double> times) {
    std::sort(times.begin(), times.end());
    times.erase(std::unique(times.begin(), times.end()), times.end());
    cfg.snapshots = std::move(times);
    return cfg;
}

std::string setup_fingerprint(const DomainSpec& spec, const LadderSetup& s, const std::string& extra) {
    return fingerprint(spec.describe() + "|" + s.cfg.describe() + "|" + s.grid->describe() + "|" +
                       s.window->describe() + "|" + extra);
}

std::string join(const std::vector<double>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + format_double(v[i]);
    return s;
}

// Independent runs of a ladder. Each run gets jobs / n threads for its own convolutions.
template <class Fn>
void for_each_run(std::size_t n, int jobs, Fn&& fn) {
    const int inner = std::max(1, jobs / static_cast<int>(std::max<std::size_t>(n, 1)));
    parallel_for(n, jobs, [&](std::size_t b, std::size_t e) {
        for (std::size_t k = b; k < e; ++k) fn(k, inner);
    });
}

}  // namespace

VerificationReport dilation_commutation_check(const ProfileSpec& p, double lambda, double sigma,
                                              double t, const DomainSpec& spec, const GridPtr& window,
                                              double tolerance) {
    const ProfileSpec dp = dilate(p, lambda, sigma, spec);
    const double factor = std::pow(lambda, sigma);
    const SectorGrid& w = *window;
    std::vector<double> x(w.dims()), y(w.dims());
    double worst = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        w.point(i, x);
        for (std::size_t a = 0; a < x.size(); ++a) y[a] = lambda * x[a];
        const double lhs = semigroup_at(dp, t, x, spec);
        const double rhs = factor * semigroup_at(p, lambda * lambda * t, y, spec);
        worst = std::max(worst, std::abs(lhs - rhs));
    }
    auto r = VerificationReport::make(
        "dilation_commutation", worst, tolerance,
        fingerprint(spec.describe() + "|" + p.describe() + "|" + w.describe() + "|lambda=" +
                    format_double(lambda) + "|t=" + format_double(t)));
    r.add("lambda", lambda);
    r.add("sigma", sigma);
    r.add("t", t);
    return r;
}

VerificationReport solver_covariance_check(const ProfileSpec& u0, double lambda, double t,
                                           const DomainSpec& spec, const LadderSetup& setup,
                                           double tolerance) {
    const double sigma = 2.0 / spec.alpha;
    const ProfileSpec d0 = dilate(u0, lambda, sigma, spec);
    const Trajectory a = solve(d0, setup.grid, spec, with_snapshots(setup.cfg, {t}));
    const Trajectory b = solve(u0, setup.grid, spec, with_snapshots(setup.cfg, {lambda * lambda * t}));
    const Field fa = on_window(a.snapshots.back(), setup.window);
    const Field fb = on_window(b.snapshots.back(), setup.window, lambda, sigma);
    auto r = VerificationReport::make(
        "solver_covariance", sup_diff(fa, fb), tolerance,
        setup_fingerprint(spec, setup, u0.describe() + "|lambda=" + format_double(lambda)));
    r.add("lambda", lambda);
    r.add("t", t);
    r.add("sup_u", fb.max_abs());
    return r;
}

SelfSimilarResult critical_selfsimilar_check(const ProfileSpec& u0, const std::vector<double>& lambdas,
                                             const DomainSpec& spec, const LadderSetup& setup,
                                             double tolerance) {
    require_regime(spec, Regime::Critical, "critical_selfsimilar_check");
    const double sigma = 2.0 / spec.alpha;
    std::vector<double> times{1.0};
    for (double l : lambdas) times.push_back(l * l);
    const Trajectory traj = solve(u0, setup.grid, spec, with_snapshots(setup.cfg, times));
    const Field base = on_window(traj.at(1.0), setup.window);

    SelfSimilarResult res;
    res.lambdas = lambdas;
    double worst = 0.0;
    for (double l : lambdas) {
        const Field g = on_window(traj.at(l * l), setup.window, l, sigma);
        res.residuals.push_back(sup_diff(g, base));
        worst = std::max(worst, res.residuals.back());
    }
    const bool log_periodic = std::holds_alternative<LogPeriodicPsi0>(u0.shape);
    res.report = VerificationReport::make(
        log_periodic ? "critical_selfsimilar_logperiodic" : "critical_selfsimilar", worst,
        log_periodic ? std::numeric_limits<double>::infinity() : tolerance,
        setup_fingerprint(spec, setup, u0.describe() + "|lambdas=" + join(lambdas)));
    for (std::size_t k = 0; k < lambdas.size(); ++k)
        res.report.add("residual_lambda=" + format_double(lambdas[k]), res.residuals[k]);
    res.report.add("sup_u1", base.max_abs());
    if (log_periodic) res.report.note = "log-periodic data: residuals reported, not asserted";
    return res;
}

OmegaLimitResult omega_limit_probe(const ProfileSpec& u0, const std::vector<double>& lambdas,
                                   const DomainSpec& spec, const LadderSetup& setup,
                                   const OmegaLimitOptions& opt) {
    require_regime(spec, Regime::Critical, "omega_limit_probe");
    if (lambdas.empty()) throw DomainError("empty ladder");
    const double sigma = spec.homogeneity();
    OmegaLimitResult res;
    res.lambdas = lambdas;
    const std::size_t n = lambdas.size();

    res.data_family.resize(n);
    for_each_run(n, setup.cfg.jobs, [&](std::size_t k, int inner) {
        SolverConfig cfg = with_snapshots(setup.cfg, {1.0});
        cfg.jobs = inner;
        const Trajectory t = solve(dilate(u0, lambdas[k], sigma, spec), setup.grid, spec, cfg);
        res.data_family[k] = on_window(t.snapshots.back(), setup.window);
    });
    for (const Field& f : res.data_family) res.data_family_sup.push_back(f.max_abs());

    const std::string fp = setup_fingerprint(spec, setup, u0.describe() + "|lambdas=" + join(lambdas));
    if (opt.data_family_only) {
        // Data whose dilations vanish: the family must decay monotonically to zero.
        double rise = -INFINITY;
        for (std::size_t k = 1; k < n; ++k)
            rise = std::max(rise, res.data_family_sup[k] - res.data_family_sup[k - 1]);
        const double last = res.data_family_sup.back() - opt.zero_tolerance;
        res.report = VerificationReport::make("omega_limit_zero", std::max(rise, last), 0.0, fp);
        for (std::size_t k = 0; k < n; ++k)
            res.report.add("sup_lambda=" + format_double(lambdas[k]), res.data_family_sup[k]);
        return res;
    }

    std::vector<double> times;
    for (double l : lambdas) times.push_back(l * l);
    const Trajectory traj = solve(u0, setup.grid, spec, with_snapshots(setup.cfg, times));
    std::vector<Field> sol;
    for (double l : lambdas) sol.push_back(on_window(traj.at(l * l), setup.window, l, sigma));
    for (const Field& f : sol) res.solution_family_sup.push_back(f.max_abs());

    res.distance.assign(n, std::vector<double>(n));
    double diag = 0.0, spread = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) res.distance[i][j] = sup_diff(res.data_family[i], sol[j]);
        diag = std::max(diag, res.distance[i][i]);
        spread = std::max(spread, sup_diff(res.data_family[i], res.data_family[0]));
    }
    res.report = VerificationReport::make("omega_limit_diagonal", diag, opt.diagonal_tolerance, fp);
    for (std::size_t k = 0; k < n; ++k)
        res.report.add("diagonal_lambda=" + format_double(lambdas[k]), res.distance[k][k]);
    res.report.add("data_family_spread", spread);
    return res;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y, std::size_t last) {
    if (x.size() != y.size() || x.size() < 2) throw DomainError("slope fit needs two or more points");
    const std::size_t k0 = x.size() > last ? x.size() - last : 0;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(x.size() - k0);
    for (std::size_t k = k0; k < x.size(); ++k) {
        if (!(x[k] > 0.0) || !(y[k] > 0.0)) throw DomainError("slope fit needs positive values");
        const double lx = std::log(x[k]), ly = std::log(y[k]);
        sx += lx, sy += ly, sxx += lx * lx, sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

DeviationCurve supercritical_deviation(const ProfileSpec& u0, const std::vector<double>& times,
                                       const DomainSpec& spec, const LadderSetup& setup,
                                       double max_slope) {
    require_regime(spec, Regime::Supercritical, "supercritical_deviation");
    const Trajectory traj = solve(u0, setup.grid, spec, with_snapshots(setup.cfg, times));
    const double sigma = spec.homogeneity();
    const SectorGrid& w = *setup.window;
    DeviationCurve res;
    res.times = traj.config.snapshots;
    for (double t : res.times) {
        const Field u = rescaled_snapshot(traj, t, sigma, setup.window);
        const double st = std::sqrt(t), factor = std::pow(t, 0.5 * sigma);
        std::vector<double> x(w.dims());
        std::vector<double> lin(w.size());
        parallel_for(w.size(), setup.cfg.jobs, [&](std::size_t b, std::size_t e) {
            std::vector<double> y(w.dims());
            for (std::size_t i = b; i < e; ++i) {
                w.point(i, y);
                for (double& c : y) c *= st;
                lin[i] = factor * semigroup_at(u0, t, y, spec);
            }
        });
        double dev = 0.0;
        for (std::size_t i = 0; i < w.size(); ++i) dev = std::max(dev, std::abs(u[i] - lin[i]));
        res.deviations.push_back(dev);
    }
    res.slope = loglog_slope(res.times, res.deviations);
    double rise = -INFINITY;
    for (std::size_t k = 1; k < res.deviations.size(); ++k)
        rise = std::max(rise, res.deviations[k] - res.deviations[k - 1]);
    res.report = VerificationReport::make(
        "supercritical_deviation", std::max(rise, res.slope - max_slope), 0.0,
        setup_fingerprint(spec, setup, u0.describe() + "|times=" + join(res.times)));
    for (std::size_t k = 0; k < res.times.size(); ++k)
        res.report.add("deviation_t=" + format_double(res.times[k]), res.deviations[k]);
    res.report.add("slope", res.slope);
    return res;
}

ProfileEstimate subcritical_profile(const DomainSpec& spec, const std::vector<double>& ladder,
                                    const LadderSetup& setup, double tolerance) {
    require_regime(spec, Regime::Subcritical, "subcritical_profile");
    if (ladder.size() < 3) throw DomainError("ladder too short to certify monotonicity");
    for (std::size_t k = 1; k < ladder.size(); ++k)
        if (!(ladder[k] > ladder[k - 1])) throw DomainError("ladder must be increasing");
    const std::size_t n = ladder.size();
    std::vector<Field> gs(n);
    for_each_run(n, setup.cfg.jobs, [&](std::size_t k, int inner) {
        SolverConfig cfg = with_snapshots(setup.cfg, {1.0});
        cfg.jobs = inner;
        const Trajectory t = solve(ProfileSpec::constant(ladder[k]), setup.grid, spec, cfg);
        gs[k] = on_window(t.snapshots.back(), setup.window);
    });

    ProfileEstimate est;
    est.ladder = ladder;
    est.g = gs.back();
    double rise = -INFINITY;
    for (std::size_t k = 1; k < n; ++k) {
        double res = 0.0;
        for (std::size_t i = 0; i < gs[k].size(); ++i) {
            const double d = gs[k][i] - gs[k - 1][i];
            est.monotonicity_defect = std::min(est.monotonicity_defect, d);
            res = std::max(res, std::abs(d));
        }
        if (!est.residuals.empty()) rise = std::max(rise, res - est.residuals.back());
        est.residuals.push_back(res);
    }

    const double a = spec.alpha;
    const double low = std::pow(a, -1.0 / a);
    const SectorGrid& w = *setup.window;
    std::vector<double> x(w.dims());
    est.lower_margin = est.upper_margin_half = est.upper_margin_quarter = INFINITY;
    double flat = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        w.point(i, x);
        const double g = est.g[i];
        est.lower_margin = std::min(est.lower_margin, g - low * erf_product(1.0, x, spec));
        est.upper_margin_half =
            std::min(est.upper_margin_half, std::pow(0.5 * a, -1.0 / a) * erf_product(0.5, x, spec) - g);
        est.upper_margin_quarter = std::min(
            est.upper_margin_quarter, std::pow(0.25 * a, -1.0 / a) * erf_product(0.75, x, spec) - g);
        flat = std::max(flat, std::abs(g - low));
    }

    const std::string fp = setup_fingerprint(spec, setup, "ladder=" + join(ladder));
    auto mono = VerificationReport::make("profile_ladder_monotone", -est.monotonicity_defect, 1e-12, fp);
    for (std::size_t k = 0; k < est.residuals.size(); ++k)
        mono.add("cauchy_A=" + format_double(ladder[k + 1]), est.residuals[k]);
    mono.add("cauchy_rise", rise);
    est.reports.push_back(std::move(mono));

    auto lower = VerificationReport::make("profile_sandwich_lower", -est.lower_margin, tolerance, fp);
    est.reports.push_back(std::move(lower));
    auto upper = VerificationReport::make("profile_sandwich_upper", -est.upper_margin_half, tolerance, fp);
    upper.add("margin_eps=0.25", est.upper_margin_quarter);
    est.reports.push_back(std::move(upper));

    if (spec.validation_mode()) {
        auto c = VerificationReport::make("profile_m0_constant", flat, 1e-8, fp);
        c.add("target", low);
        est.reports.push_back(std::move(c));
    }
    return est;
}

ConvergenceCurve subcritical_convergence_check(const ProfileSpec& u0, const Field& g,
                                               const std::vector<double>& times,
                                               const DomainSpec& spec, const LadderSetup& setup) {
    require_regime(spec, Regime::Subcritical, "subcritical_convergence_check");
    if (!g.grid().same_layout(*setup.window)) throw DomainError("profile is not on the window");
    const Trajectory traj = solve(u0, setup.grid, spec, with_snapshots(setup.cfg, times));
    ConvergenceCurve res;
    res.times = traj.config.snapshots;
    for (double t : res.times)
        res.residuals.push_back(sup_diff(rescaled_snapshot(traj, t, 2.0 / spec.alpha, setup.window), g));
    double rise = -INFINITY;
    for (std::size_t k = 1; k < res.residuals.size(); ++k)
        rise = std::max(rise, res.residuals[k] - res.residuals[k - 1]);
    res.report = VerificationReport::make(
        "subcritical_convergence", rise, 0.0,
        setup_fingerprint(spec, setup, u0.describe() + "|times=" + join(res.times)));
    for (std::size_t k = 0; k < res.times.size(); ++k)
        res.report.add("residual_t=" + format_double(res.times[k]), res.residuals[k]);
    return res;
}

}  // namespace sector_heat
