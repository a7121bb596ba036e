#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace sector_heat {

/// Problem parameters: ambient dimension N, number m of antisymmetric axes,
/// weight exponent gamma and absorption exponent alpha.
///
/// m = 0 is accepted as a free-space validation mode.
struct DomainSpec {
    int N = 1;
    int m = 1;
    double gamma = 0.5;
    double alpha = 1.0;

    /// Throws DomainError unless 0 <= m <= N, 0 < gamma < N, alpha > 0.
    void validate() const;

    double critical_alpha() const { return 2.0 / (gamma + m); }
    /// Homogeneity degree of psi0 is -(gamma + m).
    double homogeneity() const { return gamma + m; }
    int shifted_dimension() const { return N + 2 * m; }
    bool validation_mode() const { return m == 0; }

    std::string describe() const;
};

using PointFn = std::function<double(std::span<const double>)>;

enum class AxisKind { Dirichlet, Free };

/// Uniform 1D coordinate table: coord(k) = origin + k h.
struct Axis {
    AxisKind kind = AxisKind::Free;
    double h = 0.1;
    double origin = 0.0;
    std::size_t n = 1;

    double coord(std::size_t k) const { return origin + h * static_cast<double>(k); }
    double first() const { return origin; }
    double last() const { return coord(n - 1); }
};

/// Tensor-product grid. Dirichlet axes are staggered (first node at h/2),
/// free axes are symmetric about 0. Storage is row-major, last axis fastest.
class SectorGrid {
public:
    explicit SectorGrid(std::vector<Axis> axes);

    /// Staggered grid of the truncated sector [0,R]^m x [-R,R]^(N-m).
    static SectorGrid uniform(const DomainSpec& spec, double h, double radius);
    static SectorGrid uniform(const DomainSpec& spec, const std::vector<double>& h,
                              const std::vector<double>& radius);
    /// Comparison box [0, upper]^N; Dirichlet axes stay staggered.
    static SectorGrid box(const DomainSpec& spec, double h, double upper);

    std::size_t dims() const { return axes_.size(); }
    std::size_t size() const { return size_; }
    const Axis& axis(std::size_t a) const { return axes_[a]; }
    const std::vector<Axis>& axes() const { return axes_; }
    std::size_t stride(std::size_t a) const { return strides_[a]; }

    /// Coordinates of the node with flat index `flat`.
    void point(std::size_t flat, std::span<double> out) const;
    std::vector<double> point(std::size_t flat) const;
    std::size_t index_along(std::size_t flat, std::size_t a) const {
        return (flat / strides_[a]) % axes_[a].n;
    }

    double min_spacing() const;
    /// Truncation radius per axis (largest |coordinate|).
    double radius(std::size_t a) const;

    bool same_layout(const SectorGrid& other) const;
    std::string describe() const;

private:
    std::vector<Axis> axes_;
    std::vector<std::size_t> strides_;
    std::size_t size_ = 0;
};

using GridPtr = std::shared_ptr<const SectorGrid>;

inline GridPtr make_grid(SectorGrid g) { return std::make_shared<const SectorGrid>(std::move(g)); }

/// A sampled scalar function with a time stamp.
class Field {
public:
    Field() = default;
    Field(GridPtr grid, std::vector<double> values, double time = 0.0);
    Field(GridPtr grid, double fill, double time = 0.0);

    static Field sample(GridPtr grid, const PointFn& f, double time = 0.0);

    const SectorGrid& grid() const { return *grid_; }
    const GridPtr& grid_ptr() const { return grid_; }
    std::span<const double> values() const { return values_; }
    std::span<double> values() { return values_; }
    std::vector<double>& storage() { return values_; }
    double operator[](std::size_t i) const { return values_[i]; }
    double& operator[](std::size_t i) { return values_[i]; }
    std::size_t size() const { return values_.size(); }
    double time() const { return time_; }
    void set_time(double t) { time_ = t; }

    /// Throws NumericalError if any value is NaN or infinite.
    void check_finite(const char* context) const;
    double max_abs() const;

private:
    GridPtr grid_;
    std::vector<double> values_;
    double time_ = 0.0;
};

/// T_i f: reflection of argument axis i (0-based).
PointFn reflect(PointFn f, int axis, int dims);

/// Odd extension in x_1..x_m of a function given on the open sector;
/// zero on the walls {x_i = 0}, i < m.
PointFn antisym_extend(PointFn psi, const DomainSpec& spec);

/// True if x lies in the open sector (x_i > 0 for i < m).
bool in_open_sector(std::span<const double> x, const DomainSpec& spec);

double norm2(std::span<const double> x);

}  // namespace sector_heat
