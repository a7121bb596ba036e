#pragma once

#include <optional>
#include <span>

#include "sector_heat/domain.hpp"

namespace sector_heat {

/// Tensor-product cubic interpolation of a Field, clamped to the range of the
/// 4^N stencil so that no new extrema appear. Dirichlet axes are continued
/// oddly through the wall; points outside the grid give std::nullopt.
class FieldInterpolator {
public:
    explicit FieldInterpolator(const Field& field) : field_(field) {}

    std::optional<double> operator()(std::span<const double> x) const;

    /// Value or `outside` when x is not covered by the grid.
    double value_or(std::span<const double> x, double outside) const {
        return (*this)(x).value_or(outside);
    }

private:
    const Field& field_;
};

}  // namespace sector_heat
