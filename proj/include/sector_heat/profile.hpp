#pragma once

#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>

#include "sector_heat/domain.hpp"

namespace sector_heat {

/// c_{m,gamma} = gamma (gamma + 2) ... (gamma + 2m - 2); 1 for m = 0.
double psi0_constant(int m, double gamma);

/// The canonical singular profile c x_1...x_m |x|^(-gamma-2m).
/// Throws DomainError outside the open sector or at the origin.
double psi0(std::span<const double> x, const DomainSpec& spec);

/// rho_m(x) = |x|^(gamma+2m) / (x_1...x_m); weight(x) * psi0(x) = c_{m,gamma}.
double weight(std::span<const double> x, const DomainSpec& spec);

enum class Keep { Inner, Outer };

struct Psi0 {};
/// psi0 restricted to |x| >= rho (Outer) or |x| < rho (Inner).
struct TruncatedPsi0 {
    double rho = 1.0;
    Keep keep = Keep::Outer;
};
/// psi0 * (1 + a sin(omega ln|x| + phase)).
struct LogPeriodicPsi0 {
    double amplitude = 0.5;
    double omega = 1.0;
    double phase = 0.0;
};
/// The constant A on the open sector; bounded but not in the weighted space.
struct AntisymConstant {
    double A = 1.0;
};
/// x_1...x_m |x|^(-gamma'-2m) on |x| > cutoff.
struct GammaPrimeTail {
    double gamma_prime = 1.0;
    double cutoff = 1.0;
};
/// Grid data, evaluated by clamped cubic interpolation.
struct Sampled {
    std::shared_ptr<const Field> field;
};

using ProfileShape =
    std::variant<Psi0, TruncatedPsi0, LogPeriodicPsi0, AntisymConstant, GammaPrimeTail, Sampled>;

/// Pointwise-evaluable initial-data descriptor: scale * shape.
struct ProfileSpec {
    ProfileShape shape = Psi0{};
    double scale = 1.0;

    static ProfileSpec psi0(double scale = 1.0) { return {Psi0{}, scale}; }
    static ProfileSpec truncated(double rho, Keep keep, double scale = 1.0) {
        return {TruncatedPsi0{rho, keep}, scale};
    }
    static ProfileSpec log_periodic(double amplitude, double omega, double phase = 0.0) {
        return {LogPeriodicPsi0{amplitude, omega, phase}, 1.0};
    }
    static ProfileSpec constant(double A) { return {AntisymConstant{A}, 1.0}; }
    static ProfileSpec gamma_prime_tail(double gamma_prime, double cutoff = 1.0) {
        return {GammaPrimeTail{gamma_prime, cutoff}, 1.0};
    }
    static ProfileSpec sampled(Field f) {
        return {Sampled{std::make_shared<const Field>(std::move(f))}, 1.0};
    }

    /// Throws DomainError on parameters outside the variant's admissible range.
    void validate(const DomainSpec& spec) const;
    /// AntisymConstant has no finite weighted norm.
    bool bounded_only() const { return std::holds_alternative<AntisymConstant>(shape); }
    bool nonnegative() const;
    std::string describe() const;
};

/// Value on the open sector; 0 on the walls x_i = 0 (i < m).
double evaluate(const ProfileSpec& p, std::span<const double> x, const DomainSpec& spec);

PointFn as_point_fn(const ProfileSpec& p, const DomainSpec& spec);

/// Sample on a grid. Singular variants are finite at every staggered node
/// unless the origin itself is a node (m = 0 grids), which throws.
Field sample(const ProfileSpec& p, const GridPtr& grid, const DomainSpec& spec);

/// Profiles of the form x_1...x_m q(|x|). Support is [inner, outer).
struct RadialForm {
    std::function<double(double)> q;
    double inner = 0.0;
    double outer = std::numeric_limits<double>::infinity();
    /// q(s) s^(N+2m-1) behaves like s^(power_at_origin) near 0 when inner == 0.
    double power_at_origin = 0.0;
};

/// Every variant except AntisymConstant and Sampled.
std::optional<RadialForm> radial_form(const ProfileSpec& p, const DomainSpec& spec);

/// Degree d with D_lambda^d p = p for the symbolic shape (scale excluded).
double homogeneity_degree(const ProfileSpec& p, const DomainSpec& spec);

}  // namespace sector_heat
