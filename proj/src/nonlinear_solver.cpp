#include "sector_heat/nonlinear_solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sector_heat/errors.hpp"
#include "sector_heat/parallel.hpp"
#include "sector_heat/report.hpp"

namespace sector_heat {

void SolverConfig::validate() const {
    if (!(dt0 > 0.0) || !std::isfinite(dt0)) throw ConfigError("solver.dt0 must be positive");
    if (!(growth >= 1.0)) throw ConfigError("solver.growth must be >= 1");
    if (!(dt_max >= dt0)) throw ConfigError("solver.dt_max must be >= solver.dt0");
    if (!(dt_rel > 0.0)) throw ConfigError("solver.dt_rel must be positive");
    if (snapshots.empty()) throw ConfigError("solver.snapshots is empty");
    for (std::size_t i = 0; i < snapshots.size(); ++i) {
        if (!(snapshots[i] > 0.0) || !std::isfinite(snapshots[i]))
            throw ConfigError("snapshot times must be positive");
        if (i && !(snapshots[i] > snapshots[i - 1]))
            throw ConfigError("snapshot times must be strictly increasing");
    }
    if (!(h > 0.0) || !(radius > h)) throw ConfigError("grid needs 0 < h < radius");
    if (!(kernel_cutoff > 0.0)) throw ConfigError("kernel cutoff must be positive");
    if (jobs < 1) throw ConfigError("jobs must be >= 1");
}

std::string SolverConfig::describe() const {
    std::ostringstream os;
    os << "order=" << (order == Splitting::Strang ? "strang" : "lie") << " dt0=" << format_double(dt0)
       << " growth=" << format_double(growth) << " dt_max=" << format_double(dt_max)
       << " dt_rel=" << format_double(dt_rel) << " h=" << format_double(h)
       << " radius=" << format_double(radius) << " cutoff=" << format_double(kernel_cutoff)
       << " snapshots=";
    for (std::size_t i = 0; i < snapshots.size(); ++i)
        os << (i ? "," : "") << format_double(snapshots[i]);
    return os.str();
}

Field Trajectory::at(double t) const {
    if (snapshots.empty()) throw DomainError("empty trajectory");
    const double tol = 1e-12 * std::max(1.0, t);
    for (const Field& s : snapshots)
        if (std::abs(s.time() - t) <= tol) return s;
    if (t < first_time() || t > last_time())
        throw DomainError("time " + format_double(t) + " outside the stored trajectory");
    std::size_t k = 1;
    while (snapshots[k].time() < t) ++k;
    const Field& a = snapshots[k - 1];
    const Field& b = snapshots[k];
    const double w = (t - a.time()) / (b.time() - a.time());
    std::vector<double> v(a.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = (1.0 - w) * a[i] + w * b[i];
    return Field(a.grid_ptr(), std::move(v), t);
}

double Absorption::f(double u) const {
    if (kind == Kind::Exponential) return std::exp(u);
    return std::pow(std::abs(u), alpha) * u;
}

double Absorption::flow(double u, double tau) const {
    if (kind == Kind::Exponential) {
        if (u < 0.0) return u - std::log1p(tau * std::exp(u));
        return -std::log(std::exp(-u) + tau);
    }
    if (u == 0.0) return 0.0;
    if (alpha == 1.0) return u / (1.0 + tau * std::abs(u));
    return u / std::pow(1.0 + alpha * tau * std::pow(std::abs(u), alpha), 1.0 / alpha);
}

void absorption_flow(std::span<double> values, double tau, const Absorption& absorption) {
    if (tau < 0.0) throw DomainError("absorption time must be nonnegative");
    if (tau == 0.0) return;
    for (double& v : values) v = absorption.flow(v, tau);
}

Field absorption_flow(const Field& f, double tau, double alpha) {
    if (!(alpha > 0.0)) throw DomainError("alpha must be positive");
    Field out = f;
    absorption_flow(out.values(), tau, Absorption::power(alpha));
    return out;
}

std::vector<double> step_sizes(const SolverConfig& cfg) {
    cfg.validate();
    std::vector<double> dts;
    double t = 0.0;
    double nominal = cfg.dt0;
    for (double target : cfg.snapshots) {
        while (t < target) {
            double dt = nominal;
            dt = std::min(dt, std::max(cfg.dt0, cfg.dt_rel * t));
            dt = std::min(dt, cfg.dt_max);
            const double rem = target - t;
            if (rem <= 1.5 * dt)
                dt = rem;
            else if (rem < 2.0 * dt)
                dt = 0.5 * rem;
            dts.push_back(dt);
            t = rem == dt ? target : t + dt;
            nominal = std::min(cfg.growth * nominal, cfg.dt_max);
        }
    }
    return dts;
}

namespace {

double sup_diff2(const std::vector<double>& a, const std::vector<double>& b,
                 const std::vector<double>& c) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - 2.0 * b[i] + c[i]));
    return m;
}

double min_of(std::span<const double> v) {
    double m = 0.0;
    for (double x : v) m = std::min(m, x);
    return m;
}

// Shared time loop. `first` is the state after the initial diffusion substep
// (dt_1 / 2 for Strang, dt_1 for Lie).
Trajectory march(Field first, const HeatSemigroup& heat, const DomainSpec& spec,
                 const SolverConfig& cfg, const Absorption& absorption,
                 const std::vector<double>& dts) {
    Trajectory traj;
    traj.spec = spec;
    traj.absorption = absorption;
    traj.config = cfg;
    std::vector<double> v(first.values().begin(), first.values().end());
    const GridPtr grid = first.grid_ptr();
    std::vector<double> prev1, prev2;
    const bool strang = cfg.order == Splitting::Strang;

    double t = 0.0;
    std::size_t snap = 0;
    for (std::size_t k = 0; k < dts.size(); ++k) {
        const double dt = dts[k];
        absorption_flow(std::span<double>(v), dt, absorption);
        t = (snap < cfg.snapshots.size() && std::abs(t + dt - cfg.snapshots[snap]) <=
                                                1e-12 * cfg.snapshots[snap])
                ? cfg.snapshots[snap]
                : t + dt;
        ++traj.steps;

        if (!prev1.empty() && !prev2.empty()) traj.splitting_error += sup_diff2(v, prev1, prev2) / 12.0;
        prev2.swap(prev1);
        prev1 = v;

        if (snap < cfg.snapshots.size() && t == cfg.snapshots[snap]) {
            std::vector<double> s = v;
            if (strang) heat.apply(s, 0.5 * dt);
            Field f(grid, std::move(s), t);
            f.check_finite("solver snapshot");
            traj.min_value = std::min(traj.min_value, min_of(f.values()));
            traj.snapshots.push_back(std::move(f));
            ++snap;
        }
        if (k + 1 < dts.size()) heat.apply(v, strang ? 0.5 * (dt + dts[k + 1]) : dts[k + 1]);
        for (double x : v)
            if (!std::isfinite(x)) throw NumericalError("non-finite value during time stepping");
    }
    return traj;
}

}  // namespace

Trajectory solve(const ProfileSpec& u0, const GridPtr& grid, const DomainSpec& spec,
                 const SolverConfig& cfg, const Absorption& absorption) {
    spec.validate();
    cfg.validate();
    u0.validate(spec);
    const std::vector<double> dts = step_sizes(cfg);
    const HeatSemigroup heat(grid, {cfg.kernel_cutoff, cfg.jobs});
    const double first_tau = cfg.order == Splitting::Strang ? 0.5 * dts.front() : dts.front();
    Field first = apply_semigroup(u0, first_tau, grid, spec, {cfg.kernel_cutoff, cfg.jobs});
    Trajectory traj = march(std::move(first), heat, spec, cfg, absorption, dts);
    traj.initial = u0;
    if (!u0.nonnegative()) traj.min_value = 0.0;
    return traj;
}

Trajectory solve(const ProfileSpec& u0, const GridPtr& grid, const DomainSpec& spec,
                 const SolverConfig& cfg) {
    return solve(u0, grid, spec, cfg, Absorption::power(spec.alpha));
}

Trajectory solve(const ProfileSpec& u0, const DomainSpec& spec, const SolverConfig& cfg) {
    cfg.validate();
    return solve(u0, make_grid(SectorGrid::uniform(spec, cfg.h, cfg.radius)), spec, cfg);
}

Trajectory solve(const Field& u0, const DomainSpec& spec, const SolverConfig& cfg,
                 const Absorption& absorption) {
    spec.validate();
    cfg.validate();
    u0.check_finite("initial data");
    const std::vector<double> dts = step_sizes(cfg);
    const HeatSemigroup heat(u0.grid_ptr(), {cfg.kernel_cutoff, cfg.jobs});
    const double first_tau = cfg.order == Splitting::Strang ? 0.5 * dts.front() : dts.front();
    Field first = heat.apply(u0, first_tau);
    Trajectory traj = march(std::move(first), heat, spec, cfg, absorption, dts);
    traj.initial = ProfileSpec::sampled(u0);
    bool nonneg = true;
    for (double x : u0.values()) nonneg = nonneg && x >= 0.0;
    if (!nonneg) traj.min_value = 0.0;
    return traj;
}

Field extend_antisymmetric(const Field& f, const DomainSpec& spec) {
    const SectorGrid& g = f.grid();
    std::vector<Axis> axes = g.axes();
    for (int a = 0; a < spec.m; ++a) {
        Axis& ax = axes[a];
        ax.kind = AxisKind::Free;
        ax.origin = -(static_cast<double>(ax.n) - 0.5) * ax.h;
        ax.n *= 2;
    }
    const GridPtr full = make_grid(SectorGrid(axes));
    std::vector<double> v(full->size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        std::size_t src = 0;
        double sign = 1.0;
        for (std::size_t a = 0; a < g.dims(); ++a) {
            std::size_t k = full->index_along(i, a);
            if (static_cast<int>(a) < spec.m) {
                const std::size_t n = g.axis(a).n;
                if (k < n) {
                    k = n - 1 - k;
                    sign = -sign;
                } else {
                    k -= n;
                }
            }
            src += k * g.stride(a);
        }
        v[i] = sign * f[src];
    }
    return Field(full, std::move(v), f.time());
}

Trajectory solve_rn(const ProfileSpec& v0, const DomainSpec& spec, const SolverConfig& cfg) {
    Trajectory traj = solve(v0, spec, cfg);
    for (Field& s : traj.snapshots) s = extend_antisymmetric(s, spec);
    return traj;
}

}  // namespace sector_heat
