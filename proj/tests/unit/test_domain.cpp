#include <doctest.h>

#include <cmath>
#include <vector>

#include "sector_heat/domain.hpp"
#include "sector_heat/errors.hpp"
#include "sector_heat/interpolation.hpp"
#include "sector_heat/profile.hpp"

using namespace sector_heat;

TEST_CASE("domain spec validation") {
    CHECK_NOTHROW((DomainSpec{2, 1, 1.0, 1.0}.validate()));
    CHECK_NOTHROW((DomainSpec{2, 0, 1.0, 1.0}.validate()));
    CHECK_THROWS_AS((DomainSpec{2, 3, 1.0, 1.0}.validate()), DomainError);
    CHECK_THROWS_AS((DomainSpec{2, 1, 2.0, 1.0}.validate()), DomainError);
    CHECK_THROWS_AS((DomainSpec{2, 1, 0.0, 1.0}.validate()), DomainError);
    CHECK_THROWS_AS((DomainSpec{2, 1, 1.0, 0.0}.validate()), DomainError);
    CHECK((DomainSpec{2, 1, 1.0, 1.0}.critical_alpha()) == doctest::Approx(1.0));
    CHECK((DomainSpec{2, 2, 1.0, 1.0}.shifted_dimension()) == 6);
}

TEST_CASE("reflection and odd extension") {
    const PointFn x1 = [](std::span<const double> x) { return x[0]; };
    const PointFn r = [](std::span<const double> x) { return norm2(x); };
    const std::vector<double> p{0.7, -1.3};
    CHECK(reflect(x1, 0, 2)(p) == doctest::Approx(-0.7));
    CHECK(reflect(r, 1, 2)(p) == doctest::Approx(r(p)));

    const DomainSpec spec{2, 1, 1.0, 1.0};
    const PointFn psi = [&](std::span<const double> x) { return psi0(x, spec); };
    const PointFn ext = antisym_extend(psi, spec);
    const std::vector<double> a{1.0, 1.0}, b{-1.0, 1.0}, wall{0.0, 0.4};
    CHECK(ext(b) == doctest::Approx(-psi0(a, spec)));
    CHECK(reflect(ext, 0, 2)(a) == doctest::Approx(-ext(a)));
    CHECK(ext(wall) == 0.0);
    CHECK(in_open_sector(a, spec));
    CHECK_FALSE(in_open_sector(b, spec));
}

TEST_CASE("staggered sector grid layout") {
    const DomainSpec spec{2, 1, 1.0, 1.0};
    const SectorGrid g = SectorGrid::uniform(spec, 0.5, 2.0);
    REQUIRE(g.dims() == 2);
    CHECK(g.axis(0).kind == AxisKind::Dirichlet);
    CHECK(g.axis(0).first() == doctest::Approx(0.25));
    CHECK(g.axis(1).kind == AxisKind::Free);
    CHECK(g.axis(1).first() == doctest::Approx(-2.0));
    CHECK(g.axis(1).last() == doctest::Approx(2.0));
    CHECK(g.size() == g.axis(0).n * g.axis(1).n);
    // Last axis is fastest.
    const auto p0 = g.point(0), p1 = g.point(1);
    CHECK(p0[0] == p1[0]);
    CHECK(p1[1] - p0[1] == doctest::Approx(0.5));
}

TEST_CASE("cubic interpolation is exact on cubics and odd across the wall") {
    const DomainSpec spec{1, 1, 0.5, 1.0};
    const GridPtr g = make_grid(SectorGrid::uniform(spec, 0.1, 2.0));
    const Field f = Field::sample(g, [](std::span<const double> x) { return x[0] * (1.0 + x[0] * x[0]); });
    const FieldInterpolator in(f);
    const std::vector<double> q{0.83}, near_wall{0.02};
    CHECK(in(q).value() == doctest::Approx(0.83 * (1.0 + 0.83 * 0.83)).epsilon(1e-12));
    CHECK(in(near_wall).value() == doctest::Approx(0.02 * (1.0 + 0.0004)).epsilon(1e-10));
    const std::vector<double> out{5.0};
    CHECK_FALSE(in(out).has_value());
}

TEST_CASE("non-finite fields are rejected") {
    const DomainSpec spec{1, 1, 0.5, 1.0};
    const GridPtr g = make_grid(SectorGrid::uniform(spec, 0.5, 2.0));
    Field f(g, 1.0);
    CHECK_NOTHROW(f.check_finite("test"));
    f[1] = NAN;
    CHECK_THROWS_AS(f.check_finite("test"), NumericalError);
}
