#include "sector_heat/weighted_space.hpp"

#include <cmath>
#include <numbers>

#include "sector_heat/errors.hpp"
#include "sector_heat/interpolation.hpp"

namespace sector_heat {

namespace {

double node_weight(std::span<const double> x, const DomainSpec& spec) {
    double prod = 1.0;
    for (int i = 0; i < spec.m; ++i) prod *= x[i];
    if (prod <= 0.0) return 0.0;
    return std::pow(norm2(x), spec.gamma + 2.0 * spec.m) / prod;
}

bool on_outer_shell(const SectorGrid& g, std::size_t flat) {
    for (std::size_t a = 0; a < g.dims(); ++a) {
        const std::size_t k = g.index_along(flat, a);
        if (k + 1 == g.axis(a).n) return true;
        if (g.axis(a).kind == AxisKind::Free && k == 0) return true;
    }
    return false;
}

}  // namespace

XNormReport xnorm(const Field& f, const DomainSpec& spec) {
    const SectorGrid& g = f.grid();
    if (static_cast<int>(g.dims()) != spec.N) throw DomainError("field dimension does not match spec");
    XNormReport rep;
    std::vector<double> x(g.dims());
    std::size_t best = 0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (!std::isfinite(f[i])) throw NumericalError("non-finite value in xnorm");
        g.point(i, x);
        const double w = node_weight(x, spec) * std::abs(f[i]);
        if (w > rep.norm) {
            rep.norm = w;
            best = i;
        }
        if (on_outer_shell(g, i)) rep.tail_bound = std::max(rep.tail_bound, w);
    }
    rep.argmax = g.point(best);
    return rep;
}

XNormReport xnorm(const ProfileSpec& p, const DomainSpec& spec) {
    p.validate(spec);
    XNormReport rep;
    const double c = psi0_constant(spec.m, spec.gamma) * std::abs(p.scale);
    if (std::holds_alternative<Psi0>(p.shape) || std::holds_alternative<TruncatedPsi0>(p.shape)) {
        rep.norm = c;
    } else if (const auto* lp = std::get_if<LogPeriodicPsi0>(&p.shape)) {
        rep.norm = c * (1.0 + lp->amplitude);
    } else if (const auto* gp = std::get_if<GammaPrimeTail>(&p.shape)) {
        rep.norm = std::abs(p.scale) * std::pow(gp->cutoff, spec.gamma - gp->gamma_prime);
    } else if (std::holds_alternative<AntisymConstant>(p.shape)) {
        rep.norm = std::numeric_limits<double>::infinity();
        rep.bounded_only = true;
    } else {
        const auto& s = std::get<Sampled>(p.shape);
        rep = xnorm(*s.field, spec);
        rep.norm *= std::abs(p.scale);
        rep.tail_bound *= std::abs(p.scale);
    }
    return rep;
}

ProfileSpec dilate(const ProfileSpec& p, double lambda, double sigma, const DomainSpec& spec) {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) throw DomainError("dilation needs lambda > 0");
    ProfileSpec out = p;
    if (auto* s = std::get_if<Sampled>(&out.shape)) {
        s->field = std::make_shared<const Field>(dilate(*s->field, lambda, sigma));
        return out;
    }
    out.scale *= std::pow(lambda, sigma - homogeneity_degree(p, spec));
    if (auto* t = std::get_if<TruncatedPsi0>(&out.shape)) t->rho /= lambda;
    if (auto* g = std::get_if<GammaPrimeTail>(&out.shape)) g->cutoff /= lambda;
    if (auto* lp = std::get_if<LogPeriodicPsi0>(&out.shape))
        lp->phase = std::remainder(lp->phase + lp->omega * std::log(lambda), 2.0 * std::numbers::pi);
    return out;
}

Field dilate(const Field& f, double lambda, double sigma) {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) throw DomainError("dilation needs lambda > 0");
    if (lambda == 1.0) return f;
    const SectorGrid& g = f.grid();
    const FieldInterpolator interp(f);
    const double factor = std::pow(lambda, sigma);
    std::vector<double> v(f.size(), 0.0);
    std::vector<double> x(g.dims());
    std::size_t inside = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        g.point(i, x);
        for (double& c : x) c *= lambda;
        if (auto val = interp(x)) {
            v[i] = factor * *val;
            ++inside;
        }
    }
    if (inside == 0) throw DomainError("dilation maps every node outside the grid");
    return Field(f.grid_ptr(), std::move(v), f.time());
}

Field resample_dilated(const Field& src, const GridPtr& target, double lambda, double sigma,
                       double time) {
    const FieldInterpolator interp(src);
    const double factor = std::pow(lambda, sigma);
    std::vector<double> v(target->size());
    std::vector<double> x(target->dims());
    for (std::size_t i = 0; i < v.size(); ++i) {
        target->point(i, x);
        for (double& c : x) c *= lambda;
        const auto val = interp(x);
        if (!val) throw DomainError("comparison window not covered by the grid after rescaling");
        v[i] = factor * *val;
    }
    return Field(target, std::move(v), time);
}

Field spacetime_rescale(const Trajectory& traj, double lambda, double sigma, double t) {
    if (!(lambda > 0.0) || !(t > 0.0)) throw DomainError("rescaling needs lambda > 0 and t > 0");
    Field snap = traj.at(lambda * lambda * t);
    Field out = dilate(snap, lambda, sigma);
    out.set_time(t);
    return out;
}

}  // namespace sector_heat
