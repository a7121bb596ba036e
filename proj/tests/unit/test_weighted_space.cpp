#include <doctest.h>

#include <cmath>
#include <vector>

#include "sector_heat/errors.hpp"
#include "sector_heat/profile.hpp"
#include "sector_heat/weighted_space.hpp"

using namespace sector_heat;

TEST_CASE("psi0 and weight at (1,1)") {
    const DomainSpec spec{2, 1, 1.0, 1.0};
    const std::vector<double> x{1.0, 1.0};
    CHECK(psi0(x, spec) == doctest::Approx(0.3535534).epsilon(1e-7));
    CHECK(weight(x, spec) == doctest::Approx(2.8284271).epsilon(1e-7));
    CHECK(weight(x, spec) * psi0(x, spec) == doctest::Approx(psi0_constant(1, 1.0)));
    const std::vector<double> outside{-1.0, 1.0}, origin{0.0, 0.0};
    CHECK_THROWS_AS(psi0(outside, spec), DomainError);
    CHECK_THROWS_AS(psi0(origin, spec), DomainError);
}

TEST_CASE("psi0 constant") {
    CHECK(psi0_constant(0, 1.3) == 1.0);
    CHECK(psi0_constant(1, 1.0) == doctest::Approx(1.0));
    CHECK(psi0_constant(2, 1.0) == doctest::Approx(3.0));
    CHECK(psi0_constant(3, 0.5) == doctest::Approx(0.5 * 2.5 * 4.5));
}

TEST_CASE("closed-form weighted norms") {
    const DomainSpec spec{2, 1, 1.0, 1.0};
    CHECK(xnorm(ProfileSpec::psi0(), spec).norm == doctest::Approx(1.0));
    CHECK(xnorm(ProfileSpec::psi0(2.5), spec).norm == doctest::Approx(2.5));
    CHECK(xnorm(ProfileSpec::constant(1.0), spec).bounded_only);
    // Dilation isometry factor lambda^(sigma - (gamma+m)).
    const DomainSpec half{1, 1, 0.5, 1.0};
    const ProfileSpec d = dilate(ProfileSpec::psi0(), 2.0, 2.0, half);
    CHECK(xnorm(d, half).norm == doctest::Approx(std::sqrt(2.0) * xnorm(ProfileSpec::psi0(), half).norm));
}

TEST_CASE("grid norm of sampled psi0") {
    const DomainSpec spec{2, 1, 1.0, 1.0};
    const GridPtr g = make_grid(SectorGrid::uniform(spec, 0.25, 4.0));
    const Field f = sample(ProfileSpec::psi0(), g, spec);
    CHECK(xnorm(f, spec).norm == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(xnorm(Field(g, 0.0), spec).norm == 0.0);
}

TEST_CASE("field dilation") {
    const DomainSpec spec{1, 1, 0.5, 1.0};
    const GridPtr g = make_grid(SectorGrid::uniform(spec, 0.05, 4.0));
    const Field f = Field::sample(g, [](std::span<const double> x) { return x[0] * std::exp(-x[0] * x[0]); });
    const Field same = dilate(f, 1.0, 2.0);
    for (std::size_t i = 0; i < f.size(); ++i) CHECK(same[i] == doctest::Approx(f[i]));
    const Field d = dilate(f, 0.5, 1.5);
    const double x = g->point(10)[0];
    CHECK(d[10] == doctest::Approx(std::pow(0.5, 1.5) * 0.5 * x * std::exp(-0.25 * x * x)).epsilon(1e-6));
}

TEST_CASE("homogeneity degrees") {
    const DomainSpec spec{2, 1, 1.0, 1.0};
    CHECK(homogeneity_degree(ProfileSpec::psi0(), spec) == doctest::Approx(2.0));
    const ProfileSpec p = dilate(ProfileSpec::psi0(), 3.0, 2.0, spec);
    const std::vector<double> x{0.4, 0.9};
    CHECK(evaluate(p, x, spec) == doctest::Approx(psi0(x, spec)));
}
