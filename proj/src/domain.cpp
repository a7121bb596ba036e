#include "sector_heat/domain.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sector_heat/errors.hpp"

namespace sector_heat {

void DomainSpec::validate() const {
    if (N < 1) throw DomainError("N must be a positive integer");
    if (m < 0 || m > N) throw DomainError("m must lie in [0, N]");
    if (!(gamma > 0.0 && gamma < N)) throw DomainError("gamma must lie in (0, N)");
    if (!(alpha > 0.0) || !std::isfinite(alpha)) throw DomainError("alpha must be positive");
}

std::string DomainSpec::describe() const {
    std::ostringstream os;
    os.precision(17);
    os << "N=" << N << " m=" << m << " gamma=" << gamma << " alpha=" << alpha;
    return os.str();
}

SectorGrid::SectorGrid(std::vector<Axis> axes) : axes_(std::move(axes)) {
    if (axes_.empty()) throw DomainError("grid needs at least one axis");
    strides_.assign(axes_.size(), 1);
    size_ = 1;
    for (std::size_t a = axes_.size(); a-- > 0;) {
        const Axis& ax = axes_[a];
        if (ax.n == 0) throw DomainError("grid axis has no nodes");
        if (!(ax.h > 0.0) || !std::isfinite(ax.h) || !std::isfinite(ax.origin))
            throw DomainError("grid spacing must be positive and finite");
        if (ax.kind == AxisKind::Dirichlet && std::abs(ax.origin - 0.5 * ax.h) > 1e-12 * ax.h)
            throw DomainError("Dirichlet axes must start at h/2");
        strides_[a] = size_;
        size_ *= ax.n;
    }
}

namespace {

std::size_t count_upto(double upper, double h) {
    return static_cast<std::size_t>(std::floor(upper / h + 1e-9));
}

}  // namespace

SectorGrid SectorGrid::uniform(const DomainSpec& spec, double h, double radius) {
    return uniform(spec, std::vector<double>(spec.N, h), std::vector<double>(spec.N, radius));
}

SectorGrid SectorGrid::uniform(const DomainSpec& spec, const std::vector<double>& h,
                               const std::vector<double>& radius) {
    spec.validate();
    if (h.size() != static_cast<std::size_t>(spec.N) || radius.size() != h.size())
        throw DomainError("per-axis spacing/radius must have N entries");
    std::vector<Axis> axes;
    for (int a = 0; a < spec.N; ++a) {
        if (!(h[a] > 0.0) || !(radius[a] > h[a])) throw DomainError("need 0 < h < R on every axis");
        Axis ax;
        ax.h = h[a];
        if (a < spec.m) {
            ax.kind = AxisKind::Dirichlet;
            ax.origin = 0.5 * h[a];
            ax.n = count_upto(radius[a] + 0.5 * h[a], h[a]);
        } else {
            ax.kind = AxisKind::Free;
            const std::size_t half = count_upto(radius[a], h[a]);
            ax.origin = -static_cast<double>(half) * h[a];
            ax.n = 2 * half + 1;
        }
        axes.push_back(ax);
    }
    return SectorGrid(std::move(axes));
}

SectorGrid SectorGrid::box(const DomainSpec& spec, double h, double upper) {
    spec.validate();
    if (!(h > 0.0) || !(upper > h)) throw DomainError("box needs 0 < h < upper");
    std::vector<Axis> axes;
    for (int a = 0; a < spec.N; ++a) {
        Axis ax;
        ax.h = h;
        if (a < spec.m) {
            ax.kind = AxisKind::Dirichlet;
            ax.origin = 0.5 * h;
            ax.n = count_upto(upper + 0.5 * h, h);
        } else {
            ax.kind = AxisKind::Free;
            ax.origin = 0.0;
            ax.n = count_upto(upper, h) + 1;
        }
        axes.push_back(ax);
    }
    return SectorGrid(std::move(axes));
}

void SectorGrid::point(std::size_t flat, std::span<double> out) const {
    for (std::size_t a = 0; a < axes_.size(); ++a) out[a] = axes_[a].coord(index_along(flat, a));
}

std::vector<double> SectorGrid::point(std::size_t flat) const {
    std::vector<double> x(axes_.size());
    point(flat, x);
    return x;
}

double SectorGrid::min_spacing() const {
    double h = axes_.front().h;
    for (const Axis& a : axes_) h = std::min(h, a.h);
    return h;
}

double SectorGrid::radius(std::size_t a) const {
    return std::max(std::abs(axes_[a].first()), std::abs(axes_[a].last()));
}

bool SectorGrid::same_layout(const SectorGrid& other) const {
    if (axes_.size() != other.axes_.size()) return false;
    for (std::size_t a = 0; a < axes_.size(); ++a) {
        const Axis& p = axes_[a];
        const Axis& q = other.axes_[a];
        if (p.kind != q.kind || p.n != q.n || p.h != q.h || p.origin != q.origin) return false;
    }
    return true;
}

std::string SectorGrid::describe() const {
    std::ostringstream os;
    os.precision(17);
    for (std::size_t a = 0; a < axes_.size(); ++a) {
        const Axis& ax = axes_[a];
        os << (a ? ";" : "") << (ax.kind == AxisKind::Dirichlet ? 'D' : 'F') << ':' << ax.origin
           << ':' << ax.h << ':' << ax.n;
    }
    return os.str();
}

Field::Field(GridPtr grid, std::vector<double> values, double time)
    : grid_(std::move(grid)), values_(std::move(values)), time_(time) {
    if (!grid_) throw DomainError("field without grid");
    if (values_.size() != grid_->size()) throw DomainError("field size does not match grid");
    if (!(time_ >= 0.0)) throw DomainError("field time must be nonnegative");
}

Field::Field(GridPtr grid, double fill, double time)
    : Field(grid, std::vector<double>(grid ? grid->size() : 0, fill), time) {}

Field Field::sample(GridPtr grid, const PointFn& f, double time) {
    std::vector<double> v(grid->size());
    std::vector<double> x(grid->dims());
    for (std::size_t i = 0; i < v.size(); ++i) {
        grid->point(i, x);
        v[i] = f(x);
    }
    return Field(std::move(grid), std::move(v), time);
}

void Field::check_finite(const char* context) const {
    for (double v : values_)
        if (!std::isfinite(v)) throw NumericalError(std::string("non-finite value in ") + context);
}

double Field::max_abs() const {
    double m = 0.0;
    for (double v : values_) m = std::max(m, std::abs(v));
    return m;
}

PointFn reflect(PointFn f, int axis, int dims) {
    if (axis < 0 || axis >= dims) throw DomainError("reflection axis out of range");
    return [f = std::move(f), axis](std::span<const double> x) {
        std::vector<double> y(x.begin(), x.end());
        y[axis] = -y[axis];
        return f(y);
    };
}

PointFn antisym_extend(PointFn psi, const DomainSpec& spec) {
    const int m = spec.m;
    return [psi = std::move(psi), m](std::span<const double> x) {
        std::vector<double> y(x.begin(), x.end());
        double sign = 1.0;
        for (int i = 0; i < m; ++i) {
            if (y[i] == 0.0) return 0.0;
            if (y[i] < 0.0) {
                sign = -sign;
                y[i] = -y[i];
            }
        }
        return sign * psi(y);
    };
}

bool in_open_sector(std::span<const double> x, const DomainSpec& spec) {
    for (int i = 0; i < spec.m; ++i)
        if (!(x[i] > 0.0)) return false;
    return true;
}

double norm2(std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return std::sqrt(s);
}

}  // namespace sector_heat
