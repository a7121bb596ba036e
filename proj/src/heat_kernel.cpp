#include "sector_heat/heat_kernel.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <random>

#include <boost/math/interpolators/cardinal_cubic_b_spline.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/hermite.hpp>

#include "sector_heat/errors.hpp"
#include "sector_heat/parallel.hpp"

namespace sector_heat {

namespace {

constexpr double kPi = std::numbers::pi;

void require_positive_time(double t) {
    if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("time must be positive and finite");
}

// exp(-(x-y)^2/4t) - exp(-(x+y)^2/4t) without cancellation.
double image_difference(double x, double y, double t) {
    const double a = x * y / (2.0 * t);
    if (std::abs(a) < 1.0) return std::exp(-(x * x + y * y) / (4.0 * t)) * 2.0 * std::sinh(a);
    const double d = x - y;
    return std::exp(-d * d / (4.0 * t)) * -std::expm1(-2.0 * a);
}

}  // namespace

double gaussian(double z, double t) {
    return std::exp(-z * z / (4.0 * t)) / std::sqrt(4.0 * kPi * t);
}

double kernel(double t, std::span<const double> x, std::span<const double> y,
              const DomainSpec& spec) {
    require_positive_time(t);
    if (static_cast<int>(x.size()) != spec.N || static_cast<int>(y.size()) != spec.N)
        throw DomainError("kernel points have wrong dimension");
    double k = std::pow(4.0 * kPi * t, -0.5 * spec.N);
    for (int i = 0; i < spec.N; ++i) {
        if (i < spec.m) {
            if (x[i] <= 0.0 || y[i] <= 0.0) return 0.0;
            k *= image_difference(x[i], y[i], t);
        } else {
            const double d = x[i] - y[i];
            k *= std::exp(-d * d / (4.0 * t));
        }
    }
    return k;
}

double erf_product(double delta, std::span<const double> x, const DomainSpec& spec) {
    if (!(delta > 0.0)) throw DomainError("erf_product needs delta > 0");
    const double s = 2.0 * std::sqrt(delta);
    double p = 1.0;
    for (int i = 0; i < spec.m; ++i) p *= std::erf(x[i] / s);
    return p;
}

double scaled_bessel_i(double nu, double z) {
    if (z < 0.0) throw DomainError("scaled_bessel_i needs z >= 0");
    if (z <= 30.0) {
        double term = std::pow(2.0, -nu) / std::tgamma(nu + 1.0);
        double sum = term;
        const double q = 0.25 * z * z;
        for (int k = 0; k < 500; ++k) {
            term *= q / ((k + 1.0) * (k + 1.0 + nu));
            sum += term;
            if (term < 1e-17 * sum) break;
        }
        return sum * std::exp(-z);
    }
    // Hankel expansion of e^{-z} I_nu(z).
    const double mu = 4.0 * nu * nu;
    double term = 1.0, sum = 1.0;
    for (int k = 1; k < 200; ++k) {
        const double next = -term * (mu - (2.0 * k - 1.0) * (2.0 * k - 1.0)) / (8.0 * k * z);
        if (std::abs(next) >= std::abs(term)) break;
        term = next;
        sum += term;
        if (std::abs(term) < 1e-17 * std::abs(sum)) break;
    }
    return sum / std::sqrt(2.0 * kPi * z) * std::pow(z, -nu);
}

// ---------------------------------------------------------------------------
// Per-axis operators

AxisOperator::AxisOperator(const Axis& axis, double tau, double cutoff)
    : dirichlet_(axis.kind == AxisKind::Dirichlet), n_(axis.n), tau_(tau) {
    require_positive_time(tau);
    const double h = axis.h;
    const double sq = std::sqrt(tau);
    w_ = static_cast<std::size_t>(std::ceil(cutoff * sq / h));
    w_ = std::min(w_, n_ - 1);
    cell_ = tau < h * h;
    tail_ = std::erfc(0.5 * cutoff);

    // Offsets up to w + 1 are enough for the image column i + j + 1 <= w.
    taps_.assign(w_ + 2, 0.0);
    for (std::size_t d = 0; d < taps_.size(); ++d) {
        const double x = static_cast<double>(d) * h;
        if (cell_) {
            const double lo = d == 0 ? -0.5 * h : x - 0.5 * h;
            taps_[d] = 0.5 * (std::erf((x + 0.5 * h) / (2.0 * sq)) - std::erf(lo / (2.0 * sq)));
        } else {
            taps_[d] = h * gaussian(x, tau);
        }
    }
    double mass = taps_[0];
    for (std::size_t d = 1; d <= w_; ++d) mass += 2.0 * taps_[d];
    if (mass > 1.0)
        for (double& t : taps_) t /= mass;
    const double norm = mass > 1.0 ? 1.0 / mass : 1.0;

    if (dirichlet_) {
        const std::size_t rows = std::min(w_, n_);
        wall_.resize(rows);
        for (std::size_t i = 0; i < rows; ++i) {
            const std::size_t hi = std::min(n_ - 1, i + w_);
            auto& row = wall_[i];
            row.assign(hi + 1, 0.0);
            for (std::size_t j = 0; j <= hi; ++j) {
                const std::size_t d = i > j ? i - j : j - i;
                if (i + j + 1 > w_) {
                    row[j] = taps_[d];
                } else if (cell_) {
                    row[j] = taps_[d] - taps_[i + j + 1];
                } else {
                    const double xi = axis.coord(i), xj = axis.coord(j);
                    row[j] = norm * h * image_difference(xi, xj, tau) / std::sqrt(4.0 * kPi * tau);
                }
            }
        }
    }
}

double AxisOperator::weight(std::size_t i, std::size_t j) const {
    const std::size_t d = i > j ? i - j : j - i;
    if (d > w_) return 0.0;
    if (dirichlet_ && i < wall_.size()) return j < wall_[i].size() ? wall_[i][j] : 0.0;
    return taps_[d];
}

void AxisOperator::apply(const double* in, double* out, std::size_t inner, std::size_t o0,
                         std::size_t o1, std::size_t q0, std::size_t q1) const {
    const std::size_t n = n_;
    const std::size_t w = w_;
    const double* taps = taps_.data();
    for (std::size_t o = o0; o < o1; ++o) {
        const double* src = in + o * n * inner;
        double* dst = out + o * n * inner;
        if (inner == 1) {
            for (std::size_t i = 0; i < n; ++i) {
                double acc;
                if (i < wall_.size()) {
                    const auto& row = wall_[i];
                    acc = 0.0;
                    for (std::size_t j = 0; j < row.size(); ++j) acc += row[j] * src[j];
                } else {
                    acc = taps[0] * src[i];
                    const std::size_t left = std::min(w, i);
                    const std::size_t right = std::min(w, n - 1 - i);
                    for (std::size_t d = 1; d <= left; ++d) acc += taps[d] * src[i - d];
                    for (std::size_t d = 1; d <= right; ++d) acc += taps[d] * src[i + d];
                }
                dst[i] = acc;
            }
            continue;
        }
        for (std::size_t i = 0; i < n; ++i) {
            double* drow = dst + i * inner;
            std::fill(drow + q0, drow + q1, 0.0);
            const std::size_t jlo = i > w ? i - w : 0;
            const std::size_t jhi = std::min(n - 1, i + w);
            const bool wall = i < wall_.size();
            for (std::size_t j = jlo; j <= jhi; ++j) {
                const double c = wall ? wall_[i][j] : taps[i > j ? i - j : j - i];
                const double* srow = src + j * inner;
                for (std::size_t q = q0; q < q1; ++q) drow[q] += c * srow[q];
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Grid semigroup

HeatSemigroup::HeatSemigroup(GridPtr grid, SemigroupOptions opt)
    : grid_(std::move(grid)), opt_(opt) {
    if (!grid_) throw DomainError("semigroup without grid");
    if (!(opt_.cutoff > 0.0)) throw DomainError("kernel cutoff must be positive");
}

std::shared_ptr<const std::vector<AxisOperator>> HeatSemigroup::operators(double tau) const {
    const std::uint64_t key = std::bit_cast<std::uint64_t>(tau);
    {
        std::lock_guard lock(mutex_);
        if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    }
    const double reach = opt_.cutoff * std::sqrt(tau);
    auto ops = std::make_shared<std::vector<AxisOperator>>();
    for (const Axis& ax : grid_->axes()) {
        const double span = ax.kind == AxisKind::Dirichlet ? ax.last() + 0.5 * ax.h
                                                           : ax.last() - ax.first();
        if (reach > span && ax.n > 1)
            throw NumericalError("quadrature tail overflow: kernel support " + std::to_string(reach) +
                                 " exceeds the grid extent " + std::to_string(span));
        ops->emplace_back(ax, tau, opt_.cutoff);
    }
    std::lock_guard lock(mutex_);
    if (cache_.size() > 64) cache_.clear();
    cache_.emplace(key, ops);
    return ops;
}

void HeatSemigroup::apply(std::vector<double>& values, double tau) const {
    if (tau == 0.0) return;
    require_positive_time(tau);
    if (values.size() != grid_->size()) throw DomainError("field size does not match grid");
    const auto ops = operators(tau);
    std::vector<double> scratch(values.size());
    for (std::size_t a = 0; a < grid_->dims(); ++a) {
        const Axis& ax = grid_->axis(a);
        if (ax.n == 1) continue;
        const std::size_t inner = grid_->stride(a);
        const std::size_t outer = values.size() / (inner * ax.n);
        const AxisOperator& op = (*ops)[a];
        if (outer >= inner) {
            parallel_for(outer, opt_.jobs, [&](std::size_t b, std::size_t e) {
                op.apply(values.data(), scratch.data(), inner, b, e, 0, inner);
            });
        } else {
            parallel_for(inner, opt_.jobs, [&](std::size_t b, std::size_t e) {
                op.apply(values.data(), scratch.data(), inner, 0, outer, b, e);
            });
        }
        values.swap(scratch);
    }
}

Field HeatSemigroup::apply(const Field& f, double tau) const {
    if (!f.grid().same_layout(*grid_)) throw DomainError("field grid differs from semigroup grid");
    std::vector<double> v(f.values().begin(), f.values().end());
    apply(v, tau);
    return Field(f.grid_ptr(), std::move(v), f.time() + tau);
}

Field apply_semigroup(const Field& f, double tau, const DomainSpec& spec, SemigroupOptions opt) {
    spec.validate();
    if (static_cast<int>(f.grid().dims()) != spec.N) throw DomainError("field dimension mismatch");
    require_positive_time(tau);
    return HeatSemigroup(f.grid_ptr(), opt).apply(f, tau);
}

// ---------------------------------------------------------------------------
// Antisymmetric constant: per-axis sums

double wall_mass(double x, double tau, double h) {
    require_positive_time(tau);
    const double sq = std::sqrt(tau);
    if (x <= 0.0) return 0.0;
    if (tau < h * h) return std::erf(x / (2.0 * sq));
    const double reach = x + 20.0 * sq;
    double m = 0.0;
    const double norm = 1.0 / std::sqrt(4.0 * kPi * tau);
    for (std::size_t k = 0;; ++k) {
        const double y = (static_cast<double>(k) + 0.5) * h;
        if (y > reach) break;
        m += image_difference(x, y, tau);
    }
    m *= h * norm;
    // Euler-Maclaurin for the midpoint rule on [0, inf):
    // int = M + sum_k B_2k(1/2) h^2k / (2k)! g^(2k-1)(0), with
    // g^(n)(0) = 2 (4 pi tau)^(-1/2) (2 sqrt tau)^(-n) H_n(z) e^(-z^2) for odd n.
    static constexpr double coef[] = {-1.0 / 12.0 / 2.0, 7.0 / 240.0 / 24.0,
                                      -31.0 / 1344.0 / 720.0, 127.0 / 3840.0 / 40320.0};
    const double z = x / (2.0 * sq);
    const double ez = std::exp(-z * z);
    double corr = 0.0;
    double hp = 1.0;
    for (int k = 1; k <= 4; ++k) {
        hp *= h * h;
        const unsigned n = static_cast<unsigned>(2 * k - 1);
        const double deriv = 2.0 * norm * std::pow(2.0 * sq, -static_cast<double>(n)) *
                             boost::math::hermite(n, z) * ez;
        corr += coef[k - 1] * hp * deriv;
    }
    return m + corr;
}

namespace {

double free_mass(double x, double tau, const Axis& ax) {
    if (tau < ax.h * ax.h) return 1.0;
    const double reach = 20.0 * std::sqrt(tau);
    const double k0 = std::ceil((x - reach - ax.origin) / ax.h);
    const double k1 = std::floor((x + reach - ax.origin) / ax.h);
    double m = 0.0;
    for (double k = k0; k <= k1; k += 1.0) m += gaussian(x - (ax.origin + k * ax.h), tau);
    return m * ax.h;
}

}  // namespace

// ---------------------------------------------------------------------------
// Radial route

RadialEvolution::RadialEvolution(RadialForm form, double tau, const DomainSpec& spec)
    : form_(std::move(form)), tau_(tau), m_(spec.m), d_(spec.N + 2 * spec.m),
      nu_(0.5 * (spec.N + 2 * spec.m) - 1.0) {
    require_positive_time(tau);
}

double RadialEvolution::radial(double r) const {
    using boost::math::quadrature::gauss_kronrod;
    const double sq = std::sqrt(tau_);
    const double L = 15.5 * sq;
    const double lo = std::max(form_.inner, r - L);
    const double hi = std::min(form_.outer, r + L);
    if (!(lo < hi)) return 0.0;

    const double pref = std::pow(2.0 * tau_, -0.5 * d_);
    auto f = [&](double s) {
        if (s <= 0.0) return 0.0;
        const double d = r - s;
        const double k = pref * std::exp(-d * d / (4.0 * tau_)) *
                         scaled_bessel_i(nu_, r * s / (2.0 * tau_));
        const double v = k * form_.q(s) * std::pow(s, d_ - 1);
        return std::isfinite(v) ? v : 0.0;
    };

    double total = 0.0;
    const double b1 = std::min(hi, sq);
    double start = lo;
    if (lo < 0.5 * b1) {
        // Dyadic pieces toward the lower end resolve the power singularity at the origin
        // and the log-periodic oscillation.
        double b = b1;
        const double p1 = form_.power_at_origin + 1.0;
        const int kmax = lo > 0.0 ? 2000 : static_cast<int>(std::ceil(46.5 / std::max(p1, 0.05)));
        for (int k = 0; k < kmax && b > lo; ++k) {
            const double a = std::max(lo, 0.5 * b);
            total += gauss_kronrod<double, 31>::integrate(f, a, b, 0);
            b = a;
        }
        if (lo == 0.0 && b > 0.0) total += f(b) * b / p1;
        start = b1;
    }
    if (start < hi) {
        auto piece = [&](double a, double b) {
            return gauss_kronrod<double, 61>::integrate(f, a, b, 15, 1e-13);
        };
        if (r > start && r < hi)
            total += piece(start, r) + piece(r, hi);
        else
            total += piece(start, hi);
    }
    return total;
}

double RadialEvolution::operator()(std::span<const double> x) const {
    double p = 1.0;
    for (int i = 0; i < m_; ++i) p *= x[i];
    if (p == 0.0) return 0.0;
    return p * radial(norm2(x));
}

double semigroup_at(const ProfileSpec& p, double tau, std::span<const double> x,
                    const DomainSpec& spec) {
    require_positive_time(tau);
    p.validate(spec);
    if (const auto* c = std::get_if<AntisymConstant>(&p.shape))
        return p.scale * c->A * erf_product(tau, x, spec);
    auto form = radial_form(p, spec);
    if (!form) throw DomainError("pointwise semigroup needs a closed-form profile");
    return RadialEvolution(std::move(*form), tau, spec)(x);
}

Field apply_semigroup(const ProfileSpec& p, double tau, const GridPtr& grid, const DomainSpec& spec,
                      SemigroupOptions opt) {
    spec.validate();
    p.validate(spec);
    require_positive_time(tau);
    const SectorGrid& g = *grid;
    if (static_cast<int>(g.dims()) != spec.N) throw DomainError("grid dimension mismatch");

    if (std::holds_alternative<Sampled>(p.shape))
        return HeatSemigroup(grid, opt).apply(sample(p, grid, spec), tau);

    std::vector<double> v(g.size());
    if (const auto* c = std::get_if<AntisymConstant>(&p.shape)) {
        std::vector<std::vector<double>> factor(g.dims());
        for (std::size_t a = 0; a < g.dims(); ++a) {
            const Axis& ax = g.axis(a);
            factor[a].resize(ax.n);
            for (std::size_t k = 0; k < ax.n; ++k)
                factor[a][k] = ax.kind == AxisKind::Dirichlet ? wall_mass(ax.coord(k), tau, ax.h)
                                                              : free_mass(ax.coord(k), tau, ax);
        }
        const double amp = p.scale * c->A;
        for (std::size_t i = 0; i < v.size(); ++i) {
            double prod = amp;
            for (std::size_t a = 0; a < g.dims(); ++a) prod *= factor[a][g.index_along(i, a)];
            v[i] = prod;
        }
        return Field(grid, std::move(v), tau);
    }

    const RadialEvolution ev(*radial_form(p, spec), tau, spec);
    double rmax2 = 0.0;
    for (std::size_t a = 0; a < g.dims(); ++a) rmax2 += g.radius(a) * g.radius(a);
    const double rmax = std::sqrt(rmax2);
    const double step = std::sqrt(tau) / 20.0;
    const std::size_t table = static_cast<std::size_t>(std::ceil(rmax / step)) + 4;

    if (g.size() <= table) {
        parallel_for(v.size(), opt.jobs, [&](std::size_t b, std::size_t e) {
            std::vector<double> x(g.dims());
            for (std::size_t i = b; i < e; ++i) {
                g.point(i, x);
                v[i] = ev(x);
            }
        });
    } else {
        std::vector<double> F(table);
        parallel_for(table, opt.jobs, [&](std::size_t b, std::size_t e) {
            for (std::size_t k = b; k < e; ++k) F[k] = ev.radial(static_cast<double>(k) * step);
        });
        const boost::math::interpolators::cardinal_cubic_b_spline<double> spline(
            F.begin(), F.end(), 0.0, step, 0.0);
        std::vector<double> x(g.dims());
        for (std::size_t i = 0; i < v.size(); ++i) {
            g.point(i, x);
            double prod = 1.0;
            for (int k = 0; k < spec.m; ++k) prod *= x[k];
            v[i] = prod * spline(norm2(x));
        }
    }
    Field out(grid, std::move(v), tau);
    out.check_finite("apply_semigroup");
    return out;
}

// ---------------------------------------------------------------------------

VerificationReport kernel_domination_check(double t, std::span<const double> x,
                                           std::span<const double> y, const DomainSpec& spec) {
    const double k = kernel(t, x, y, spec);
    double bound = std::pow(t, -spec.m);
    for (int i = 0; i < spec.m; ++i) bound *= x[i] * y[i];
    double d2 = 0.0;
    for (int i = 0; i < spec.N; ++i) d2 += (x[i] - y[i]) * (x[i] - y[i]);
    bound *= std::pow(4.0 * kPi * t, -0.5 * spec.N) * std::exp(-d2 / (4.0 * t));
    const double viol = bound > 0.0 ? (k - bound) / bound : (k > 0.0 ? INFINITY : 0.0);
    auto r = VerificationReport::make("kernel_domination", viol, 1e-12);
    r.add("kernel", k);
    r.add("bound", bound);
    return r;
}

VerificationReport kernel_domination_check(const DomainSpec& spec, std::size_t samples,
                                           std::uint64_t seed) {
    spec.validate();
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> logt(std::log(1e-2), std::log(1e1));
    std::uniform_real_distribution<double> pos(1e-3, 5.0), any(-5.0, 5.0);
    std::vector<double> x(spec.N), y(spec.N);
    double worst = -INFINITY;
    for (std::size_t s = 0; s < samples; ++s) {
        const double t = std::exp(logt(rng));
        for (int i = 0; i < spec.N; ++i) {
            x[i] = i < spec.m ? pos(rng) : any(rng);
            y[i] = i < spec.m ? pos(rng) : any(rng);
        }
        worst = std::max(worst, kernel_domination_check(t, x, y, spec).violation);
    }
    auto r = VerificationReport::make("kernel_domination", worst, 1e-12);
    r.add("samples", static_cast<double>(samples));
    return r;
}

}  // namespace sector_heat
