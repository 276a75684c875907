#include <doctest.h>

#include "hal/fixtures.hpp"
#include "hal/norms.hpp"

using namespace hal;

TEST_CASE("morrey norm of constants") {
    Grid g = Grid::box(2, 129);
    ScalarField one(g, 1.0);

    // p=1, beta=0: sup over balls of the plain integral -> area of the disk
    MorreyParams p10 = MorreyParams::make(g, 1.0, 0.0);
    NormReport r = morrey_norm(one, p10, Ball::unit());
    CHECK(r.value == doctest::Approx(kPi).epsilon(0.02));

    // beta = n: scale-invariant constant, sup = pi at every interior scale
    MorreyParams p1n = MorreyParams::make(g, 1.0, 2.0);
    NormReport rn = morrey_norm(one, p1n, Ball::unit());
    CHECK(rn.value == doctest::Approx(kPi).epsilon(0.03));

    MorreyParams bad = MorreyParams::make(g, 1.0, 2.5);
    CHECK_THROWS(morrey_norm(one, bad, Ball::unit()));  // beta > n: the space is {0}
    MorreyParams badp = MorreyParams::make(g, 0.5, 1.0);
    CHECK_THROWS(morrey_norm(one, badp, Ball::unit()));
}

TEST_CASE("morrey norm of |x|^-1 at p=1, beta=1 is 2 pi") {
    Grid g = Grid::box(2, 257);
    ScalarField f = get_fixture("radial-inv").sample(g);
    MorreyParams mp = MorreyParams::make(g, 1.0, 1.0);
    mp.centers.push_back({0.0, 0.0, 0.0});  // the witness center
    NormReport r = morrey_norm(f, mp, Ball::unit());
    CHECK(r.value == doctest::Approx(2.0 * kPi).epsilon(0.03));
}

TEST_CASE("sup-type norms are monotone in the scan set") {
    Grid g = Grid::box(2, 65);
    ScalarField f = get_fixture("offset-poly-bump").sample(g);
    MorreyParams small = MorreyParams::make(g, 2.0, 1.0);
    small.radii = {0.5, 0.125};
    small.centers = MorreyParams::stride_centers(g, Ball::unit(), 16);
    MorreyParams big = small;
    big.radii = {1.0, 0.5, 0.25, 0.125};
    big.centers = MorreyParams::stride_centers(g, Ball::unit(), 8);
    CHECK(morrey_norm(f, small, Ball::unit()).value <= morrey_norm(f, big, Ball::unit()).value + 1e-14);
}

TEST_CASE("weak-Lp: constants, singular field, Chebyshev") {
    Grid g = Grid::box(2, 257);
    ScalarField c(g, 3.0);
    NormReport wc = weak_lp_norm(c, 2.0, Ball::unit());
    CHECK(wc.value == doctest::Approx(3.0 * std::sqrt(kPi)).epsilon(0.01));

    ScalarField inv = get_fixture("radial-inv").sample(g);
    NormReport wi = weak_lp_norm(inv, 2.0, Ball::unit());
    CHECK(wi.value == doctest::Approx(std::sqrt(kPi)).epsilon(0.05));

    for (const auto* name : {"gaussian-bump", "poly-bump", "dipole"}) {
        ScalarField f = get_fixture(name).sample(g);
        CHECK(weak_lp_norm(f, 2.0, Ball::unit()).value <=
              lp_norm(f, 2.0, Ball::unit()) * (1.0 + 1e-12));
    }

    CHECK_THROWS(weak_lp_norm(c, 2.0, Ball{{90, 0, 0}, 0.5}));  // empty region
}

TEST_CASE("campanato: constants vanish, affine fields scale linearly in r") {
    Grid g = Grid::box(2, 129);
    ScalarField c(g, 4.2);
    MorreyParams mp = MorreyParams::make(g, 2.0, 2.0);
    mp.centers.push_back({0.0, 0.0, 0.0});
    CHECK(campanato_seminorm(c, mp, Ball::unit()).value <= 1e-12);

    ScalarField aff = get_fixture("harmonic-affine").sample(g);
    MorreyParams mpa = MorreyParams::make(g, 2.0, 2.0);
    mpa.radii = {0.5, 0.25, 0.125};
    mpa.centers.push_back({0.0, 0.0, 0.0});
    NormReport r = campanato_seminorm(aff, mpa, Ball::unit());
    // closed form: (r^-2 int_{B_r} x1^2)^(1/2) = sqrt(pi)/2 * r
    for (auto [rad, val] : r.scan_table)
        CHECK(val == doctest::Approx(std::sqrt(kPi) / 2.0 * rad).epsilon(0.03));

    MorreyParams badBeta = MorreyParams::make(g, 2.0, 2.0);
    badBeta.beta = 5.0;  // > n + p: constants only
    CHECK_THROWS(campanato_seminorm(aff, badBeta, Ball::unit()));
}

TEST_CASE("holder seminorm: constants, |x|^(1/2), and the Morrey bridge") {
    Grid g = Grid::box(2, 33);  // all-pairs regime
    ScalarField c(g, 1.0);
    CHECK(holder_seminorm(c, 0.5, Ball::unit()).value == 0.0);

    ScalarField f = get_fixture("radial-sqrt").sample(g);
    NormReport r = holder_seminorm(f, 0.5, Ball::unit());
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-9));  // attained against the origin

    // bridge: int_{B_r(0)} |g|^p <= [g]^p * 2 pi r^{gamma p + 2}/(gamma p + 2), equality for |x|^(1/2)
    Grid gf = Grid::box(2, 257);
    ScalarField f2 = get_fixture("radial-sqrt").sample(gf);
    MorreyParams mp = MorreyParams::make(gf, 2.0, 0.0);
    mp.radii = {0.5, 0.25, 0.125};
    mp.centers.push_back({0.0, 0.0, 0.0});
    NormReport scan = morrey_norm(f2, mp, Ball::unit());
    for (auto [rad, val] : scan.scan_table) {
        double bound = 2.0 * kPi / 3.0 * std::pow(rad, 3.0);  // gamma p + n = 3
        CHECK(val <= bound * 1.05);
        CHECK(val >= bound * 0.9);
    }
}

TEST_CASE("h^{-1} energy norm: zero field and manufactured solution") {
    Grid g = Grid::box(2, 129);
    ScalarField zero(g, 0.0);
    CHECK(h_minus1_norm(zero, Ball::unit()).value == 0.0);

    // w0 = (1-|x|^2)^2 vanishes on the boundary with its gradient;
    // ||grad w0||_{L^2(B_1)} = sqrt(4 pi / 3)
    Fixture w0;
    w0.name = "w0";
    w0.expr2 = [](const Jet2& X, const Jet2& Y) {
        Jet2 w = 1.0 - X * X - Y * Y;
        return w * w;
    };
    ScalarField rhs(g);
    for (size_t i = 0; i < g.size(); ++i) {
        auto p = g.point(i);
        rhs.values[i] = -jet_laplacian(w0.jet(p[0], p[1]));
    }
    NormReport r = h_minus1_norm(rhs, Ball::unit());
    CHECK(r.value == doctest::Approx(std::sqrt(4.0 * kPi / 3.0)).epsilon(0.02));
    CHECK(r.extra.at("residual") <= 1e-10);
}

TEST_CASE("weak morrey of a constant at beta = n is scale-free") {
    Grid g = Grid::box(2, 129);
    ScalarField c(g, 2.0);
    MorreyParams mp = MorreyParams::make(g, 2.0, 2.0);
    mp.radii = {0.5, 0.25};
    mp.centers.push_back({0.0, 0.0, 0.0});
    NormReport r = weak_morrey_norm(c, mp, Ball::unit());
    CHECK(r.value == doctest::Approx(2.0 * std::sqrt(kPi)).epsilon(0.03));
}
