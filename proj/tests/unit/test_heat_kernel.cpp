#include <doctest.h>

#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/hypergeometric_1F1.hpp>
#include <cmath>
#include <numbers>
#include <vector>

#include "sector_heat/heat_kernel.hpp"
#include "sector_heat/profile.hpp"

using namespace sector_heat;

namespace {

// Heat flow of |y|^-a in R^d evaluated at radius r (Kummer form).
double radial_power_flow(double a, int d, double t, double r) {
    using boost::math::tgamma;
    return std::pow(4.0 * t, -a / 2) * tgamma((d - a) / 2) / tgamma(d / 2.0) *
           boost::math::hypergeometric_1F1(a / 2, d / 2.0, -r * r / (4.0 * t));
}

}  // namespace

TEST_CASE("kernel values") {
    const DomainSpec spec{1, 1, 0.5, 1.0};
    const std::vector<double> one{1.0}, wall{0.0};
    CHECK(kernel(0.25, one, one, spec) == doctest::Approx(0.5538561).epsilon(1e-7));
    CHECK(kernel(0.25, one, one, spec) ==
          doctest::Approx((1.0 - std::exp(-4.0)) / std::sqrt(std::numbers::pi)));
    CHECK(kernel(0.25, wall, one, spec) == 0.0);
    // Tiny x y / 2t goes through the sinh form without cancellation.
    const std::vector<double> a{1e-9}, b{1e-9};
    const double expect = 2.0 * gaussian(0.0, 1.0) * std::sinh(1e-18 / 2.0);
    CHECK(kernel(1.0, a, b, spec) == doctest::Approx(expect).epsilon(1e-10));
}

TEST_CASE("erf product") {
    const DomainSpec one{1, 1, 0.5, 1.0};
    const std::vector<double> x{2.0};
    CHECK(erf_product(1.0, x, one) == doctest::Approx(0.8427008).epsilon(1e-7));
    CHECK(erf_product(1.0, x, one) == doctest::Approx(std::erf(1.0)));
    const DomainSpec two{2, 2, 1.0, 1.0};
    const std::vector<double> y{2.0, 0.0}, far{1e3, 1e3};
    CHECK(erf_product(1.0, y, two) == 0.0);
    CHECK(erf_product(1.0, far, two) == doctest::Approx(1.0));
}

TEST_CASE("scaled modified Bessel function") {
    // I_{1/2}(z) = sqrt(2 / (pi z)) sinh z.
    for (double z : {0.1, 2.0, 25.0, 40.0}) {
        const double expect = std::pow(z, -0.5) * std::exp(-z) * std::sqrt(2.0 / (std::numbers::pi * z)) * std::sinh(z);
        CHECK(scaled_bessel_i(0.5, z) == doctest::Approx(expect).epsilon(1e-10));
    }
    CHECK(scaled_bessel_i(1.0, 3.0) == doctest::Approx(std::exp(-3.0) * std::cyl_bessel_i(1.0, 3.0) / 3.0).epsilon(1e-12));
}

TEST_CASE("axis operator preserves linear functions away from the edge") {
    const DomainSpec spec{1, 1, 0.5, 1.0};
    const GridPtr g = make_grid(SectorGrid::uniform(spec, 0.05, 12.0));
    const HeatSemigroup S(g);
    const Field lin = Field::sample(g, [](std::span<const double> x) { return x[0]; });
    const Field out = S.apply(lin, 0.5);
    for (std::size_t i = 0; i < g->size(); ++i) {
        const double x = g->point(i)[0];
        if (x < 12.0 - 8.0 * std::sqrt(0.5)) CHECK(out[i] == doctest::Approx(x).epsilon(1e-7));
    }
    const AxisOperator op(g->axis(0), 0.5 * 0.05 * 0.05, 8.0);
    CHECK(op.cell_integrated());
}

TEST_CASE("antisymmetric constant has the erf closed form") {
    const DomainSpec spec{2, 1, 1.0, 1.0};
    const GridPtr g = make_grid(SectorGrid::uniform(spec, 0.1, 8.0));
    const Field u = apply_semigroup(ProfileSpec::constant(1.0), 0.5, g, spec);
    std::vector<double> x(2);
    for (std::size_t i = 0; i < g->size(); i += 13) {
        g->point(i, x);
        if (std::abs(x[1]) > 8.0 - 8.0 * std::sqrt(0.5)) continue;
        CHECK(u[i] == doctest::Approx(erf_product(0.5, x, spec)).epsilon(1e-6));
    }
}

TEST_CASE("radial route of psi0 against the Kummer closed form") {
    const DomainSpec spec{2, 1, 1.0, 1.0};
    const double a = spec.gamma + 2 * spec.m;
    const int d = spec.shifted_dimension();
    for (double t : {0.25, 1.0, 4.0}) {
        for (const auto& x : {std::vector<double>{0.3, 0.2}, std::vector<double>{1.5, -2.0},
                              std::vector<double>{4.0, 0.5}}) {
            const double expect = psi0_constant(spec.m, spec.gamma) * x[0] *
                                  radial_power_flow(a, d, t, norm2(x));
            CHECK(semigroup_at(ProfileSpec::psi0(), t, x, spec) == doctest::Approx(expect).epsilon(1e-8));
        }
    }
}

TEST_CASE("wall mass matches the continuous erf") {
    for (double x : {0.025, 0.075, 0.5}) {
        CHECK(wall_mass(x, 0.1, 0.05) == doctest::Approx(std::erf(x / (2.0 * std::sqrt(0.1)))).epsilon(1e-6));
    }
}

TEST_CASE("kernel domination") {
    const DomainSpec spec{2, 1, 1.0, 1.0};
    const std::vector<double> x{0.5, 0.1}, y{0.7, -0.3};
    CHECK(kernel_domination_check(0.3, x, y, spec).pass);
    CHECK(kernel_domination_check(spec, 500, 7).pass);
    const std::vector<double> wall{0.0, 0.1};
    CHECK(kernel_domination_check(0.3, wall, y, spec).violation <= 0.0);
}

TEST_CASE("tail overflow is reported") {
    const DomainSpec spec{1, 1, 0.5, 1.0};
    const GridPtr g = make_grid(SectorGrid::uniform(spec, 0.1, 2.0));
    const HeatSemigroup S(g);
    std::vector<double> v(g->size(), 1.0);
    CHECK_THROWS(S.apply(v, 10.0));
}
