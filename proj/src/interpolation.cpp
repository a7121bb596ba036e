#include "sector_heat/interpolation.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace sector_heat {

namespace {

struct AxisStencil {
    std::array<std::size_t, 4> index{};
    std::array<double, 4> sign{};
    std::array<double, 4> weight{};
};

// Cubic Lagrange weights on nodes -1, 0, 1, 2 at offset f in [0, 1].
std::array<double, 4> lagrange4(double f) {
    return {-f * (f - 1.0) * (f - 2.0) / 6.0, (f + 1.0) * (f - 1.0) * (f - 2.0) / 2.0,
            -(f + 1.0) * f * (f - 2.0) / 2.0, (f + 1.0) * f * (f - 1.0) / 6.0};
}

bool build_stencil(const Axis& ax, double x, AxisStencil& st) {
    const double tol = 1e-9 * ax.h;
    const long n = static_cast<long>(ax.n);
    if (ax.kind == AxisKind::Free) {
        if (x < ax.first() - tol || x > ax.last() + tol) return false;
    } else {
        if (std::abs(x) > ax.last() + tol) return false;
    }
    const double s = (x - ax.origin) / ax.h;
    long k = static_cast<long>(std::floor(s));
    double f = s - static_cast<double>(k);
    if (k >= n - 1) {
        k = n - 1;
        f = 0.0;
    }
    st.weight = lagrange4(f);
    for (int q = 0; q < 4; ++q) {
        long j = k - 1 + q;
        double sign = 1.0;
        if (ax.kind == AxisKind::Dirichlet && j < 0) {
            j = -1 - j;
            sign = -1.0;
        }
        j = std::clamp(j, 0L, n - 1);
        st.index[q] = static_cast<std::size_t>(j);
        st.sign[q] = sign;
    }
    return true;
}

}  // namespace

std::optional<double> FieldInterpolator::operator()(std::span<const double> x) const {
    const SectorGrid& g = field_.grid();
    const std::size_t dims = g.dims();
    std::array<AxisStencil, 8> st;
    if (dims > st.size()) return std::nullopt;
    for (std::size_t a = 0; a < dims; ++a)
        if (!build_stencil(g.axis(a), x[a], st[a])) return std::nullopt;

    const auto values = field_.values();
    double sum = 0.0;
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    std::size_t combos = 1;
    for (std::size_t a = 0; a < dims; ++a) combos *= 4;
    for (std::size_t c = 0; c < combos; ++c) {
        std::size_t rem = c;
        std::size_t flat = 0;
        double w = 1.0;
        double sign = 1.0;
        for (std::size_t a = 0; a < dims; ++a) {
            const std::size_t q = rem % 4;
            rem /= 4;
            flat += st[a].index[q] * g.stride(a);
            w *= st[a].weight[q];
            sign *= st[a].sign[q];
        }
        const double v = sign * values[flat];
        lo = std::min(lo, v);
        hi = std::max(hi, v);
        sum += w * v;
    }
    return std::clamp(sum, lo, hi);
}

}  // namespace sector_heat
