#include <doctest.h>

#include "hal/fixtures.hpp"
#include "hal/maximal.hpp"

using namespace hal;

TEST_CASE("fractional maximal: constants and mass") {
    Grid g = Grid::box(2, 129);
    ScalarField one(g, 1.0);
    MaximalField m = fractional_maximal(one, 2.0);
    // interior node far from the box edge: sup_r r^-2 * pi r^2 = pi
    CHECK(m.values.at(64, 64) == doctest::Approx(kPi).epsilon(0.02));

    ScalarField zero(g, 0.0);
    MaximalField mz = fractional_maximal(zero, 1.0);
    for (double v : mz.values.values) CHECK(v == 0.0);

    // chi_{B_1/2}, beta = 0, node at the origin: total mass pi/4 at r >= 1/2
    ScalarField chi = ScalarField::sample(g, [](const std::array<double, 3>& p) {
        return (p[0] * p[0] + p[1] * p[1] < 0.25) ? 1.0 : 0.0;
    });
    MaximalField m0 = fractional_maximal(chi, 0.0);
    CHECK(m0.values.at(64, 64) == doctest::Approx(kPi / 4.0).epsilon(0.02));
    CHECK(m0.witness[g.index(64, 64)] >= 0.5f);

    CHECK_THROWS(fractional_maximal(one, -0.5));
    CHECK_THROWS(fractional_maximal(one, 3.5));
}

TEST_CASE("fractional maximal is positively 1-homogeneous") {
    Grid g = Grid::box(2, 65);
    ScalarField f = get_fixture("gaussian-bump").sample(g);
    MaximalField m1 = fractional_maximal(f, 1.0);
    ScalarField f3 = 3.0 * f;
    MaximalField m3 = fractional_maximal(f3, 1.0);
    for (size_t i = 0; i < g.size(); ++i)
        CHECK(m3.values.values[i] == doctest::Approx(3.0 * m1.values.values[i]).epsilon(1e-13));
}

TEST_CASE("refining the radius scan never decreases the maximal value") {
    Grid g = Grid::box(2, 65);
    ScalarField f = get_fixture("poly-bump").sample(g);
    std::vector<double> coarse{1.0, 0.25, 0.0625};
    std::vector<double> fine{1.0, 0.5, 0.25, 0.125, 0.0625};
    MaximalField mc = fractional_maximal(f, 1.0, coarse);
    MaximalField mf = fractional_maximal(f, 1.0, fine);
    for (size_t i = 0; i < g.size(); ++i)
        CHECK(mf.values.values[i] >= mc.values.values[i] - 1e-14);
}

TEST_CASE("smooth maximal reproduces constants (unit-mass mollifier)") {
    Grid g = Grid::box(2, 129);
    ScalarField c(g, 2.5);
    Mollifier moll = Mollifier::poly_bump(2, /*unit_mass=*/true, Mollifier::dyadic_scales(-6, -2));
    MaximalField m = smooth_maximal(c, moll, false);
    CHECK(m.values.at(64, 64) == doctest::Approx(2.5).epsilon(0.01));

    Mollifier empty = moll;
    empty.scales.clear();
    CHECK_THROWS(smooth_maximal(c, empty, false));
}

TEST_CASE("local smooth maximal is dominated by the global one") {
    Grid g = Grid::box(2, 65);
    ScalarField f = get_fixture("dipole").sample(g);
    Mollifier moll = Mollifier::poly_bump(2, false, Mollifier::dyadic_scales(-8, 1));
    MaximalField local = smooth_maximal(f, moll, true);
    MaximalField global = smooth_maximal(f, moll, false);
    for (size_t i = 0; i < g.size(); ++i)
        CHECK(local.values.values[i] <= global.values.values[i] + 1e-14);
}

TEST_CASE("smooth maximal sits under the mollifier-mass multiple of M[g]") {
    Grid g = Grid::box(2, 129);
    ScalarField f = get_fixture("offset-poly-bump").sample(g);
    std::vector<double> scales = Mollifier::dyadic_scales(-5, -1);
    Mollifier moll = Mollifier::poly_bump(2, false, scales);
    MaximalField gs = smooth_maximal(f, moll, false);
    MaximalField m = fractional_maximal(f, 2.0, scales);  // same dyadic set as radii
    const double cn = moll.mass / kPi;                    // radial decreasing: mass/omega_n
    for (size_t i = 0; i < g.size(); ++i)
        CHECK(gs.values.values[i] <= cn * m.values.values[i] * 1.25 + 1e-12);
}

TEST_CASE("hardy norms: zero field, ordering, margin violation") {
    Grid g = Grid::box(2, 129, 2.5);  // enlarged box for support margin
    Mollifier moll = Mollifier::poly_bump(2, false, Mollifier::dyadic_scales(-8, 0));

    ScalarField zero(g, 0.0);
    CHECK(hardy_norm(zero, moll).value == 0.0);

    ScalarField dip = get_fixture("dipole").sample(g);
    HardyReport local = local_hardy_norm(dip, moll);
    HardyReport global = hardy_norm(dip, moll);
    CHECK(local.value <= global.value + 1e-12);
    CHECK(local.tail_bound == 0.0);
    CHECK(!global.tail_divergent);
    CHECK(global.tail_bound < std::numeric_limits<double>::infinity());

    // nonzero mean: the global tail is flagged divergent
    ScalarField bump = get_fixture("poly-bump").sample(g);
    HardyReport rep = hardy_norm(bump, moll);
    CHECK(rep.tail_divergent);

    // support-margin violation: scales reach beyond the margin
    Mollifier wide = Mollifier::poly_bump(2, false, Mollifier::dyadic_scales(-4, 2));
    CHECK_THROWS(hardy_norm(bump, wide));
}
