#include <doctest.h>

#include "hal/fixtures.hpp"
#include "hal/quadrature.hpp"

using namespace hal;

TEST_CASE("jets differentiate exactly (checked against finite differences)") {
    auto f = [](auto X, auto Y) { return exp(X * Y) * sin(2.0 * X) + pow(1.0 + X * X + Y * Y, 1.7); };
    double x = 0.37, y = -0.81;
    Jet2 j = f(Jet2::var(0, x), Jet2::var(1, y));
    auto fv = [&](double a, double b) { return f(Jet2(a), Jet2(b)).v; };
    const double e = 1e-5;
    CHECK(j.g[0] == doctest::Approx((fv(x + e, y) - fv(x - e, y)) / (2 * e)).epsilon(1e-7));
    CHECK(j.g[1] == doctest::Approx((fv(x, y + e) - fv(x, y - e)) / (2 * e)).epsilon(1e-7));
    CHECK(j.h[0][0] == doctest::Approx((fv(x + e, y) - 2 * fv(x, y) + fv(x - e, y)) / (e * e)).epsilon(1e-4));
    CHECK(j.h[0][1] ==
          doctest::Approx((fv(x + e, y + e) - fv(x + e, y - e) - fv(x - e, y + e) + fv(x - e, y - e)) /
                          (4 * e * e))
              .epsilon(1e-4));
    CHECK(j.h[0][1] == j.h[1][0]);
}

TEST_CASE("catalog holds the required fixtures with oracle flags") {
    const auto& cat = fixture_catalog();
    CHECK(cat.size() >= 12);
    const Fixture& ce = get_fixture("counterexample-logsq");
    CHECK(ce.vector_valued);
    // second-derivative oracle present (jets propagate Hessians)
    Jet2 j = ce.jet(0.2, 0.1);
    CHECK(std::isfinite(j.h[0][0]));

    const Fixture& dip = get_fixture("dipole");
    CHECK(dip.mean_zero);
    CHECK(dip.hardy_member);
    CHECK_THROWS(get_fixture("no-such-fixture"));
}

TEST_CASE("fixtures resample consistently across nested grids") {
    for (const auto* name : {"gaussian-bump", "dipole", "osc-bump-8"}) {
        const Fixture& f = get_fixture(name);
        Grid fine = Grid::box(2, 65), coarse = Grid::box(2, 33);
        ScalarField sf = f.sample(fine), sc = f.sample(coarse);
        for (int i = 0; i < 33; ++i)
            for (int j = 0; j < 33; ++j)
                CHECK(sc.at(i, j) == doctest::Approx(sf.at(2 * i, 2 * j)).epsilon(1e-14));
    }
}

TEST_CASE("mean-zero fixtures integrate to zero on symmetric grids") {
    Grid g = Grid::box(2, 129);
    for (const auto* name : {"dipole", "quadrupole", "osc-bump-8", "dx-bump"}) {
        ScalarField s = get_fixture(name).sample(g);
        double l1 = 0.0;
        for (double v : s.values) l1 += std::abs(v);
        CHECK(std::abs(integrate_box(s)) <= 1e-12 * l1 * g.cell_volume() + 1e-13);
    }
}

TEST_CASE("gradient oracle matches central differences of samples") {
    Grid g = Grid::box(2, 129);
    const Fixture& f = get_fixture("gaussian-bump");
    ScalarField s = f.sample(g);
    FormField grad = f.gradient_field(g);
    const double h = g.spacing[0];
    for (int i = 30; i < 100; i += 13)
        for (int j = 41; j < 90; j += 17) {
            double fd = (s.at(i + 1, j) - s.at(i - 1, j)) / (2 * h);
            CHECK(grad.components[0].at(i, j) == doctest::Approx(fd).epsilon(1e-2));
        }
}

TEST_CASE("jacobian fields integrate to zero (Stokes)") {
    Grid g = Grid::box(2, 129);
    ScalarField J = jacobian_field(get_fixture("gaussian-bump"), get_fixture("offset-poly-bump"), g);
    double l1 = 0.0;
    for (double v : J.values) l1 += std::abs(v);
    l1 *= g.cell_volume();
    CHECK(std::abs(integrate_box(J)) <= 1e-4 * l1);
}

TEST_CASE("singular fixture carries its analytic near-field mass") {
    Grid g = Grid::box(2, 257);
    ScalarField s = get_fixture("radial-inv").sample(g);
    // int_{B_1} |x|^-1 = 2 pi
    CHECK(integrate(s, Ball::unit()) == doctest::Approx(2.0 * kPi).epsilon(0.01));
}
