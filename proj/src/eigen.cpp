#include "sector_heat/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>

#include "sector_heat/errors.hpp"

namespace sector_heat {

namespace {

constexpr double kPi = 3.14159265358979323846;

double bessel_series(double nu, double x) {
    const double q = -0.25 * x * x;
    double term = std::pow(0.5 * x, nu) / std::tgamma(nu + 1.0);
    double sum = term;
    for (int k = 1; k < 200; ++k) {
        term *= q / (k * (k + nu));
        sum += term;
        if (std::abs(term) <= 1e-17 * std::abs(sum)) break;
    }
    return sum;
}

double bessel_hankel(double nu, double x) {
    const double mu = 4.0 * nu * nu;
    double P = 0.0, Q = 0.0, a = 1.0, last = INFINITY;
    for (int k = 0; k < 40; ++k) {
        const double term = a / std::pow(x, k);
        if (std::abs(term) > last) break;  // asymptotic series starts to diverge
        last = std::abs(term);
        const double sign = (k / 2) % 2 == 0 ? 1.0 : -1.0;
        if (k % 2 == 0)
            P += sign * term;
        else
            Q += sign * term;
        const double odd = 2.0 * k + 1.0;
        a *= (mu - odd * odd) / ((k + 1) * 8.0);
        if (a == 0.0) break;
    }
    const double chi = x - (0.5 * nu + 0.25) * kPi;
    return std::sqrt(2.0 / (kPi * x)) * (P * std::cos(chi) - Q * std::sin(chi));
}

}  // namespace

double bessel_j(double nu, double x) {
    if (x < 0.0) throw DomainError("bessel_j needs x >= 0");
    if (x == 0.0) return nu == 0.0 ? 1.0 : 0.0;
    return x <= 20.0 ? bessel_series(nu, x) : bessel_hankel(nu, x);
}

double bessel_first_zero(double nu) {
    if (!(nu >= -0.5)) throw DomainError("bessel_first_zero needs nu >= -1/2");
    const double hi_end = nu + kPi + 2.0;
    double lo = std::max(nu + 1.0, 1e-3);
    double flo = bessel_j(nu, lo);
    // Scan the bracket for the first sign change, then bisect.
    const double step = 0.05;
    double hi = lo;
    double fhi = flo;
    while (hi < hi_end) {
        hi = std::min(lo + step, hi_end);
        fhi = bessel_j(nu, hi);
        if ((flo > 0.0) != (fhi > 0.0)) break;
        lo = hi;
        flo = fhi;
    }
    if ((flo > 0.0) == (fhi > 0.0)) throw NumericalError("no Bessel zero in the bracket");
    while (hi - lo > 1e-14 * hi) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double fm = bessel_j(nu, mid);
        if ((fm > 0.0) == (flo > 0.0))
            lo = mid, flo = fm;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

double bessel_oracle(int d) {
    if (d < 1) throw DomainError("dimension must be >= 1");
    const double j = bessel_first_zero(0.5 * d - 1.0);
    return j * j;
}

EigenResult sector_ball_eigen(const DomainSpec& spec, double h, const EigenOptions& opt) {
    spec.validate();
    if (!(h > 0.0) || 1.0 / h < 10.0) throw DomainError("mask too coarse: need h <= 1/10");
    std::vector<Axis> axes;
    for (int a = 0; a < spec.N; ++a) {
        Axis ax;
        ax.h = h;
        if (a < spec.m) {
            ax.kind = AxisKind::Dirichlet;
            ax.origin = 0.5 * h;
            ax.n = static_cast<std::size_t>(std::ceil(1.0 / h - 0.5));
        } else {
            const auto K = static_cast<std::size_t>(std::ceil(1.0 / h)) - 1;
            ax.kind = AxisKind::Free;
            ax.origin = -static_cast<double>(K) * h;
            ax.n = 2 * K + 1;
        }
        axes.push_back(ax);
    }
    const GridPtr grid = make_grid(SectorGrid(axes));
    const SectorGrid& g = *grid;
    const std::size_t dims = g.dims();

    std::vector<long> id(g.size(), -1);
    std::vector<std::size_t> nodes;
    std::vector<double> x(dims);
    for (std::size_t i = 0; i < g.size(); ++i) {
        g.point(i, x);
        if (norm2(x) < 1.0) {
            id[i] = static_cast<long>(nodes.size());
            nodes.push_back(i);
        }
    }
    const std::size_t n = nodes.size();
    const double ih2 = 1.0 / (h * h);

    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(n * (2 * dims + 1));
    for (std::size_t r = 0; r < n; ++r) {
        const std::size_t flat = nodes[r];
        g.point(flat, x);
        double r2 = 0.0;
        for (double c : x) r2 += c * c;
        double diag = 0.0;
        for (std::size_t a = 0; a < dims; ++a) {
            const std::size_t k = g.index_along(flat, a);
            for (int dir : {-1, 1}) {
                diag += ih2;
                if (dir < 0 && k == 0 && axes[a].kind == AxisKind::Dirichlet) {
                    diag += ih2;  // ghost -u across the wall
                    continue;
                }
                const bool in_range = dir < 0 ? k > 0 : k + 1 < axes[a].n;
                const long nb = in_range ? id[dir < 0 ? flat - g.stride(a) : flat + g.stride(a)] : -1;
                if (nb >= 0) {
                    trip.emplace_back(static_cast<int>(r), static_cast<int>(nb), -ih2);
                    continue;
                }
                if (opt.boundary == BallBoundary::Mask) continue;
                // Distance to the sphere along this direction.
                const double xa = dir * x[a];
                const double s = -xa + std::sqrt(std::max(0.0, xa * xa + 1.0 - r2));
                const double theta = std::max(s / h, 1e-6);
                diag += ih2 * (1.0 / theta - 1.0);
            }
        }
        trip.emplace_back(static_cast<int>(r), static_cast<int>(r), diag);
    }
    Eigen::SparseMatrix<double> A(static_cast<int>(n), static_cast<int>(n));
    A.setFromTriplets(trip.begin(), trip.end());
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver(A);
    if (solver.info() != Eigen::Success) throw NumericalError("eigen: factorization failed");

    Eigen::VectorXd v = Eigen::VectorXd::Ones(static_cast<int>(n));
    v.normalize();
    EigenResult res;
    res.h = h;
    res.unknowns = n;
    double lambda = v.dot(A * v), prev = INFINITY;
    for (int it = 1; it <= opt.max_iterations; ++it) {
        Eigen::VectorXd w = solver.solve(v);
        if (solver.info() != Eigen::Success) throw NumericalError("eigen: solve failed");
        v = w.normalized();
        prev = lambda;
        lambda = v.dot(A * v);
        res.iterations = it;
        if (std::abs(lambda - prev) <= opt.tolerance * lambda) break;
    }
    if (!(std::abs(lambda - prev) <= opt.tolerance * lambda))
        throw NumericalError("eigen: inverse iteration did not converge");

    std::vector<double> values(g.size(), 0.0);
    const double vmax = v.cwiseAbs().maxCoeff();
    const double sign = v.sum() < 0.0 ? -1.0 : 1.0;
    for (std::size_t r = 0; r < n; ++r) values[nodes[r]] = sign * v[static_cast<int>(r)] / vmax;
    res.field = Field(grid, std::move(values), 0.0);
    res.lambda = lambda;
    return res;
}

VerificationReport separable_eigen_check(const DomainSpec& spec, double h,
                                         const SeparableCheckOptions& opt, double tolerance) {
    spec.validate();
    if (!(opt.r_inner > h) || !(opt.r_outer > opt.r_inner) || opt.r_outer + h > 1.5)
        throw DomainError("annulus under-resolved");
    const int d = spec.shifted_dimension();
    const double nu = 0.5 * d - 1.0;
    const double j = bessel_first_zero(nu);
    const double L = j * j;
    const int N = spec.N;
    auto H = [&](const std::vector<double>& y) {
        double p = opt.amplitude;
        for (int i = 0; i < spec.m; ++i) p *= y[i];
        const double r = norm2(y);
        return p * std::pow(r, -nu) * bessel_j(nu, j * r);
    };
    const double ds = opt.sample_spacing > 0.0 ? opt.sample_spacing : h;
    std::vector<long> lo(N), hi(N), idx(N);
    for (int a = 0; a < N; ++a) {
        hi[a] = static_cast<long>(std::floor(opt.r_outer / ds));
        lo[a] = a < spec.m ? 0 : -hi[a];
        idx[a] = lo[a];
    }
    std::vector<double> x(N), y(N);
    double res = 0.0, scale = 0.0;
    std::size_t points = 0;
    while (true) {
        for (int a = 0; a < N; ++a)
            x[a] = a < spec.m ? (static_cast<double>(idx[a]) + 0.5) * ds : static_cast<double>(idx[a]) * ds;
        const double r = norm2(x);
        if (r >= opt.r_inner && r <= opt.r_outer) {
            const double f0 = H(x);
            double lap = 0.0;
            for (int a = 0; a < N; ++a) {
                y = x;
                y[a] = x[a] + h;
                const double fp = H(y);
                y[a] = x[a] - h;
                const double fm = H(y);
                lap += (fp - 2.0 * f0 + fm) / (h * h);
            }
            res = std::max(res, std::abs(lap + L * f0));
            scale = std::max(scale, std::abs(L * f0));
            ++points;
        }
        int a = N - 1;
        while (a >= 0 && ++idx[a] > hi[a]) {
            idx[a] = lo[a];
            --a;
        }
        if (a < 0) break;
    }
    if (points == 0 || scale == 0.0) throw DomainError("annulus under-resolved");
    auto r = VerificationReport::make("separable_eigen", res / scale, tolerance,
                                      fingerprint(spec.describe() + "|h=" + format_double(h)));
    r.add("h", h);
    r.add("max_residual", res);
    r.add("lambda", L);
    r.add("points", static_cast<double>(points));
    return r;
}

VerificationReport eigen_refinement(const DomainSpec& spec, double h, double min_order,
                                    const EigenOptions& opt) {
    const double target = bessel_oracle(spec.shifted_dimension());
    const double e1 = std::abs(sector_ball_eigen(spec, h, opt).lambda - target) / target;
    const double e2 = std::abs(sector_ball_eigen(spec, 0.5 * h, opt).lambda - target) / target;
    const double order = std::log2(e1 / e2);
    auto r = VerificationReport::make("eigen_refinement", min_order - order, 0.0,
                                      fingerprint(spec.describe() + "|h=" + format_double(h)));
    r.add("error_h", e1);
    r.add("error_h2", e2);
    r.add("order", order);
    return r;
}

}  // namespace sector_heat
