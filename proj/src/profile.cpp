#include "sector_heat/profile.hpp"

#include <cmath>
#include <sstream>

#include "sector_heat/errors.hpp"
#include "sector_heat/interpolation.hpp"

namespace sector_heat {

double psi0_constant(int m, double gamma) {
    double c = 1.0;
    for (int k = 0; k < m; ++k) c *= gamma + 2.0 * k;
    return c;
}

namespace {

double sector_product(std::span<const double> x, int m) {
    double p = 1.0;
    for (int i = 0; i < m; ++i) p *= x[i];
    return p;
}

void require_sector_point(std::span<const double> x, const DomainSpec& spec) {
    if (static_cast<int>(x.size()) != spec.N) throw DomainError("point has wrong dimension");
    if (!in_open_sector(x, spec)) throw DomainError("point outside the open sector");
}

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

double psi0(std::span<const double> x, const DomainSpec& spec) {
    require_sector_point(x, spec);
    const double r = norm2(x);
    if (r == 0.0) throw DomainError("psi0 is singular at the origin");
    return psi0_constant(spec.m, spec.gamma) * sector_product(x, spec.m) *
           std::pow(r, -spec.gamma - 2.0 * spec.m);
}

double weight(std::span<const double> x, const DomainSpec& spec) {
    require_sector_point(x, spec);
    return std::pow(norm2(x), spec.gamma + 2.0 * spec.m) / sector_product(x, spec.m);
}

void ProfileSpec::validate(const DomainSpec& spec) const {
    if (!std::isfinite(scale)) throw DomainError("profile scale must be finite");
    std::visit(overloaded{
                   [](const Psi0&) {},
                   [](const TruncatedPsi0& v) {
                       if (!(v.rho > 0.0)) throw DomainError("truncation radius must be positive");
                   },
                   [](const LogPeriodicPsi0& v) {
                       if (!(v.amplitude >= 0.0 && v.amplitude < 1.0))
                           throw DomainError("log-periodic amplitude must lie in [0,1)");
                       if (!(v.omega > 0.0)) throw DomainError("log-periodic omega must be positive");
                   },
                   [](const AntisymConstant& v) {
                       if (!(v.A > 0.0)) throw DomainError("constant A must be positive");
                   },
                   [&](const GammaPrimeTail& v) {
                       if (!(v.gamma_prime > spec.gamma && v.gamma_prime < spec.N))
                           throw DomainError("gamma' must lie in (gamma, N)");
                       if (!(v.cutoff > 0.0)) throw DomainError("tail cutoff must be positive");
                   },
                   [](const Sampled& v) {
                       if (!v.field) throw DomainError("sampled profile without field");
                   },
               },
               shape);
}

bool ProfileSpec::nonnegative() const {
    if (scale < 0.0) return false;
    if (const auto* s = std::get_if<Sampled>(&shape)) {
        for (double v : s->field->values())
            if (v < 0.0) return false;
    }
    return true;
}

std::string ProfileSpec::describe() const {
    std::ostringstream os;
    os.precision(17);
    std::visit(overloaded{
                   [&](const Psi0&) { os << "psi0"; },
                   [&](const TruncatedPsi0& v) {
                       os << "truncated_psi0(rho=" << v.rho
                          << ",keep=" << (v.keep == Keep::Outer ? "outer" : "inner") << ")";
                   },
                   [&](const LogPeriodicPsi0& v) {
                       os << "log_periodic_psi0(a=" << v.amplitude << ",omega=" << v.omega
                          << ",phase=" << v.phase << ")";
                   },
                   [&](const AntisymConstant& v) { os << "antisym_constant(A=" << v.A << ")"; },
                   [&](const GammaPrimeTail& v) {
                       os << "gamma_prime_tail(gamma'=" << v.gamma_prime << ",cutoff=" << v.cutoff
                          << ")";
                   },
                   [&](const Sampled& v) { os << "sampled(" << v.field->grid().describe() << ")"; },
               },
               shape);
    if (scale != 1.0) os << "*" << scale;
    return os.str();
}

std::optional<RadialForm> radial_form(const ProfileSpec& p, const DomainSpec& spec) {
    const double c = psi0_constant(spec.m, spec.gamma) * p.scale;
    const double power = spec.gamma + 2.0 * spec.m;
    const double origin_power = spec.N - 1.0 - spec.gamma;
    return std::visit(
        overloaded{
            [&](const Psi0&) -> std::optional<RadialForm> {
                return RadialForm{[=](double s) { return c * std::pow(s, -power); }, 0.0,
                                  std::numeric_limits<double>::infinity(), origin_power};
            },
            [&](const TruncatedPsi0& v) -> std::optional<RadialForm> {
                RadialForm f{[=](double s) { return c * std::pow(s, -power); }, 0.0,
                             std::numeric_limits<double>::infinity(), origin_power};
                if (v.keep == Keep::Outer)
                    f.inner = v.rho;
                else
                    f.outer = v.rho;
                return f;
            },
            [&](const LogPeriodicPsi0& v) -> std::optional<RadialForm> {
                const double a = v.amplitude, w = v.omega, ph = v.phase;
                return RadialForm{[=](double s) {
                                      return c * std::pow(s, -power) *
                                             (1.0 + a * std::sin(w * std::log(s) + ph));
                                  },
                                  0.0, std::numeric_limits<double>::infinity(), origin_power};
            },
            [&](const GammaPrimeTail& v) -> std::optional<RadialForm> {
                const double gp = v.gamma_prime + 2.0 * spec.m;
                const double sc = p.scale;
                return RadialForm{[=](double s) { return sc * std::pow(s, -gp); }, v.cutoff,
                                  std::numeric_limits<double>::infinity(),
                                  spec.N - 1.0 - v.gamma_prime};
            },
            [](const AntisymConstant&) -> std::optional<RadialForm> { return std::nullopt; },
            [](const Sampled&) -> std::optional<RadialForm> { return std::nullopt; },
        },
        p.shape);
}

double evaluate(const ProfileSpec& p, std::span<const double> x, const DomainSpec& spec) {
    if (static_cast<int>(x.size()) != spec.N) throw DomainError("point has wrong dimension");
    if (const auto* s = std::get_if<Sampled>(&p.shape))
        return p.scale * FieldInterpolator(*s->field).value_or(x, 0.0);
    for (int i = 0; i < spec.m; ++i) {
        if (x[i] < 0.0) throw DomainError("point outside the sector");
        if (x[i] == 0.0) return 0.0;
    }
    if (const auto* k = std::get_if<AntisymConstant>(&p.shape)) return p.scale * k->A;
    const auto form = radial_form(p, spec);
    const double r = norm2(x);
    if (r < form->inner || r >= form->outer) return 0.0;
    if (r == 0.0) throw DomainError("profile is singular at the origin");
    return sector_product(x, spec.m) * form->q(r);
}

PointFn as_point_fn(const ProfileSpec& p, const DomainSpec& spec) {
    return [p, spec](std::span<const double> x) { return evaluate(p, x, spec); };
}

Field sample(const ProfileSpec& p, const GridPtr& grid, const DomainSpec& spec) {
    p.validate(spec);
    if (const auto* s = std::get_if<Sampled>(&p.shape)) {
        if (s->field->grid().same_layout(*grid)) {
            std::vector<double> v(s->field->values().begin(), s->field->values().end());
            for (double& x : v) x *= p.scale;
            return Field(grid, std::move(v), 0.0);
        }
    }
    return Field::sample(grid, as_point_fn(p, spec));
}

double homogeneity_degree(const ProfileSpec& p, const DomainSpec& spec) {
    return std::visit(overloaded{
                          [&](const GammaPrimeTail& v) { return v.gamma_prime + spec.m; },
                          [](const AntisymConstant&) { return 0.0; },
                          [](const Sampled&) { return 0.0; },
                          [&](const auto&) { return spec.gamma + spec.m; },
                      },
                      p.shape);
}

}  // namespace sector_heat
