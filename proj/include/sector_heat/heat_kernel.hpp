#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <vector>

#include "sector_heat/domain.hpp"
#include "sector_heat/profile.hpp"
#include "sector_heat/report.hpp"

namespace sector_heat {

/// 1D Gaussian (4 pi t)^(-1/2) exp(-z^2 / 4t).
double gaussian(double z, double t);

/// Sector heat kernel K_t(x, y): Gaussian on free axes, image difference on
/// Dirichlet axes (sinh form when x_i y_i / 2t < 1).
double kernel(double t, std::span<const double> x, std::span<const double> y,
              const DomainSpec& spec);

/// I_m(delta, x) = prod_{i<m} erf(x_i / (2 sqrt(delta))).
double erf_product(double delta, std::span<const double> x, const DomainSpec& spec);

/// z^(-nu) e^(-z) I_nu(z) for z >= 0; series below z = 30, asymptotic above.
double scaled_bessel_i(double nu, double z);

struct SemigroupOptions {
    /// Kernel support in units of sqrt(tau).
    double cutoff = 8.0;
    int jobs = 1;
};

/// Discrete e^{tau d^2/dx^2} along one axis: midpoint weights h G((i-j)h) with odd
/// images on Dirichlet axes, truncated at cutoff sqrt(tau). Below tau = h^2 the
/// weights are cell integrals of the kernel (positive, mass <= 1).
class AxisOperator {
public:
    AxisOperator(const Axis& axis, double tau, double cutoff);

    std::size_t window() const { return w_; }
    bool cell_integrated() const { return cell_; }
    double tau() const { return tau_; }
    /// Gaussian mass dropped by the truncation, erfc(cutoff / 2).
    double tail_bound() const { return tail_; }
    double weight(std::size_t i, std::size_t j) const;

    /// out[o, i, q] = sum_j W_ij in[o, j, q] over the block o in [o0, o1), q in [q0, q1).
    void apply(const double* in, double* out, std::size_t inner, std::size_t o0, std::size_t o1,
               std::size_t q0, std::size_t q1) const;

private:
    bool dirichlet_;
    std::size_t n_;
    std::size_t w_;
    double tau_;
    bool cell_;
    double tail_;
    std::vector<double> taps_;
    /// Rows i < min(w, n) of a Dirichlet axis, columns 0..i+w.
    std::vector<std::vector<double>> wall_;
};

/// e^{tau Delta_m} on a fixed grid as successive per-axis convolutions.
/// Operators are cached per tau; safe to share between threads.
class HeatSemigroup {
public:
    explicit HeatSemigroup(GridPtr grid, SemigroupOptions opt = {});

    /// Throws NumericalError when the kernel support exceeds an axis (tail overflow).
    void apply(std::vector<double>& values, double tau) const;
    Field apply(const Field& f, double tau) const;

    const GridPtr& grid() const { return grid_; }
    const SemigroupOptions& options() const { return opt_; }

private:
    std::shared_ptr<const std::vector<AxisOperator>> operators(double tau) const;

    GridPtr grid_;
    SemigroupOptions opt_;
    mutable std::mutex mutex_;
    mutable std::map<std::uint64_t, std::shared_ptr<const std::vector<AxisOperator>>> cache_;
};

Field apply_semigroup(const Field& f, double tau, const DomainSpec& spec,
                      SemigroupOptions opt = {});

/// Profile route: radial variants by the dimension-shift integral, the antisymmetric
/// constant by per-axis midpoint sums with an Euler-Maclaurin wall correction,
/// Sampled data by the field route.
Field apply_semigroup(const ProfileSpec& p, double tau, const GridPtr& grid,
                      const DomainSpec& spec, SemigroupOptions opt = {});

/// e^{tau Delta_m}[x_1..x_m Q(|x|)] = x_1..x_m F(|x|), where F is the heat flow of Q
/// in dimension N + 2m.
class RadialEvolution {
public:
    RadialEvolution(RadialForm form, double tau, const DomainSpec& spec);

    double radial(double r) const;
    double operator()(std::span<const double> x) const;

private:
    RadialForm form_;
    double tau_;
    int m_;
    int d_;
    double nu_;
};

/// Exact value of e^{tau Delta_m} p at a single point (radial variants and AntisymConstant).
double semigroup_at(const ProfileSpec& p, double tau, std::span<const double> x,
                    const DomainSpec& spec);

/// Midpoint sum of int_0^inf [G(x-y) - G(x+y)] dy on the nodes (k + 1/2) h, with the
/// Euler-Maclaurin terms for the jump of the odd extension at the wall.
double wall_mass(double x, double tau, double h);

/// K_t(x,y) <= t^-m prod(x_i y_i) G_t(x - y) at one point; violation is relative.
VerificationReport kernel_domination_check(double t, std::span<const double> x,
                                           std::span<const double> y, const DomainSpec& spec);
/// Same over `samples` random (t, x, y) triples.
VerificationReport kernel_domination_check(const DomainSpec& spec, std::size_t samples,
                                           std::uint64_t seed);

}  // namespace sector_heat
