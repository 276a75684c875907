#include <doctest.h>

#include "hal/fixtures.hpp"
#include "hal/pde.hpp"

using namespace hal;

namespace {
double max_interior(const ScalarField& f) {
    double m = 0.0;
    for (size_t i = 0; i < f.grid.size(); ++i)
        if (ResidualField::interior(f.grid, i)) m = std::max(m, std::abs(f.values[i]));
    return m;
}

ConnectionForm smooth_connection(const Grid& g, uint64_t seed) {
    ConnectionForm om(g, 2);
    om.at_upper(0, 1) = random_smooth_one_form(g, seed);
    return om;
}
}  // namespace

TEST_CASE("residual vanishes for harmonic polynomials and for u = 0") {
    Grid g = Grid::box(2, 65);
    VectorField u(g, 2);
    u.components[0] = get_fixture("harmonic-quad").sample(g);
    ConnectionForm zero(g, 2);
    VectorField f(g, 2);
    ResidualField r = residual(u, zero, f);
    CHECK(max_interior(r.magnitude) <= 1e-10);

    VectorField u0(g, 2);
    ResidualField r0 = residual(u0, smooth_connection(g, 5), f);
    CHECK(max_interior(r0.magnitude) == 0.0);

    VectorField um(Grid::box(2, 33), 2);
    CHECK_THROWS(residual(um, zero, f));  // grid mismatch
}

TEST_CASE("antisymmetric coupling annihilates the diagonal quadratic form") {
    Grid g = Grid::box(2, 33);
    for (int m : {2, 3}) {
        ConnectionForm om(g, m);
        for (int i = 0; i < m; ++i)
            for (int j = i + 1; j < m; ++j) om.at_upper(i, j) = random_smooth_one_form(g, uint64_t(7 * i + j));
        std::vector<double> v(static_cast<size_t>(m), 0.0);
        for (int i = 0; i < m; ++i) v[size_t(i)] = std::cos(1.7 * i + 0.3);
        for (size_t node = 0; node < g.size(); node += 97) {
            double acc = 0.0;
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < m; ++j)
                    for (int ax = 0; ax < 2; ++ax)
                        acc += v[size_t(i)] * om.entry(i, j, ax, node) * v[size_t(j)];
            CHECK(std::abs(acc) <= 1e-13);
        }
    }
}

TEST_CASE("counterexample: sampled pair solves the system") {
    Grid g;
    g.dim = 2;
    g.shape = {257, 257, 1};
    g.spacing = {1.0 / 256.0, 1.0 / 256.0, 0.0};
    g.origin = {-0.5, -0.5, 0.0};
    CHECK_THROWS(make_counterexample(g, 0.5));  // eps out of range
    Counterexample ce = make_counterexample(g, std::pow(2.0, -5));

    // |u| on the circle r = e^{-1} equals e^{-1}
    double rmax = std::exp(-1.0);
    Jet2 u0 = Counterexample::u_component(0, rmax, 0.0);
    CHECK(u0.v == doctest::Approx(rmax).epsilon(1e-12));

    VectorField f(g, 2);
    ResidualField r = residual(ce.u, ce.omega, f);
    // max residual over the annulus 2^-4 < r < e^-1 is pure truncation error
    double worst = 0.0;
    for (size_t i = 0; i < g.size(); ++i) {
        auto p = g.point(i);
        double rad = std::hypot(p[0], p[1]);
        if (rad < std::pow(2.0, -4) || rad > rmax) continue;
        if (!ResidualField::interior(g, i)) continue;
        worst = std::max(worst, r.magnitude.values[i]);
    }
    // field scale: |Lap u| ~ 2(1+2log r)/r ~ 150 at the inner edge
    CHECK(worst <= 2.0);
    CHECK(worst > 0.0);
}

TEST_CASE("hessian energy of the counterexample follows its closed form") {
    for (double eps : {std::pow(2.0, -4), std::pow(2.0, -7)}) {
        double quad = Counterexample::hessian_energy_quadrature(eps);
        double closed = Counterexample::hessian_energy_closed_form(eps);
        CHECK(quad == doctest::Approx(closed).epsilon(1e-6));
    }
    // weak-L2 of |Hess u| grows linearly in |log eps|: equal increments per
    // fixed log-step, so the norm is unbounded as eps -> 0
    double w5 = Counterexample::hessian_weak_l2(std::pow(2.0, -5));
    double w7 = Counterexample::hessian_weak_l2(std::pow(2.0, -7));
    double w9 = Counterexample::hessian_weak_l2(std::pow(2.0, -9));
    CHECK(w7 > w5);
    CHECK(w9 > w7);
    CHECK((w9 - w7) / (w7 - w5) == doctest::Approx(1.0).epsilon(0.25));
}

TEST_CASE("gauge transform: identity and constant rotations") {
    Grid g = Grid::box(2, 49);
    ConnectionForm om = smooth_connection(g, 11);

    GaugeField I = GaugeField::identity(g, 2);
    MatrixFormField omI = gauge_transform(om, I);
    for (size_t node = 0; node < g.size(); node += 31)
        for (int ax = 0; ax < 2; ++ax)
            CHECK(omI.at(ax, 0, 1).values[node] == doctest::Approx(om.entry(0, 1, ax, node)).epsilon(1e-12));
    CHECK(omI.antisymmetry_defect() <= 1e-12);

    GaugeField R = GaugeField::rotation2(g, [](const std::array<double, 3>&) { return 0.7; });
    MatrixFormField omR = gauge_transform(om, R);
    CHECK(omR.antisymmetry_defect() <= 1e-12);
    // P^{-1} Omega P for a 2x2 rotation and antisymmetric Omega is Omega itself
    for (size_t node = 0; node < g.size(); node += 53)
        CHECK(omR.at(0, 0, 1).values[node] == doctest::Approx(om.entry(0, 1, 0, node)).epsilon(1e-12));

    GaugeField bad = I;
    bad.at(0, 0, 0) = 2.0;
    CHECK_THROWS(gauge_transform(om, bad));
}

TEST_CASE("gauge covariance at constant P is exact on residual magnitudes") {
    Grid g = Grid::box(2, 65);
    VectorField u(g, 2);
    u.components[0] = get_fixture("gaussian-bump").sample(g);
    u.components[1] = get_fixture("offset-poly-bump").sample(g);
    ConnectionForm om = smooth_connection(g, 3);
    VectorField f(g, 2);
    f.components[0] = get_fixture("dipole").sample(g);

    ResidualField plain = residual(u, om, f);
    GaugeField P = GaugeField::rotation2(g, [](const std::array<double, 3>&) { return 1.234; });
    ResidualField gauged = gauge_residual(u, om, P, f);
    for (size_t i = 0; i < g.size(); ++i)
        if (ResidualField::interior(g, i))
            CHECK(gauged.magnitude.values[i] ==
                  doctest::Approx(plain.magnitude.values[i]).epsilon(1e-10).scale(1.0));
}

TEST_CASE("smooth gauge: residual discrepancy shrinks at second order") {
    double disc[2];
    int level = 0;
    for (int nodes : {65, 129}) {
        Grid g = Grid::box(2, nodes);
        VectorField u(g, 2);
        u.components[0] = get_fixture("gaussian-bump").sample(g);
        u.components[1] = get_fixture("poly-bump").sample(g);
        ConnectionForm om(g, 2);  // Omega = 0: covariance reduces to the dP term
        VectorField f(g, 2);
        GaugeField P = GaugeField::rotation2(
            g, [](const std::array<double, 3>& p) { return 0.8 * std::sin(p[0]) * std::cos(0.5 * p[1]); });
        ResidualField plain = residual(u, om, f);
        ResidualField gauged = gauge_residual(u, om, P, f);
        double worst = 0.0;
        for (size_t i = 0; i < g.size(); ++i)
            if (ResidualField::interior(g, i))
                worst = std::max(worst, std::abs(gauged.magnitude.values[i] - plain.magnitude.values[i]));
        disc[level++] = worst;
    }
    CHECK(disc[0] / disc[1] >= 3.0);  // fitted order ~ 2
}

TEST_CASE("decay profiles: affine gradient and higher-order vanishing") {
    Grid g = Grid::box(2, 129);
    VectorField u(g, 1);
    u.components[0] = get_fixture("harmonic-affine").sample(g);
    DecayProfile aff = decay_profile(u, {0, 0, 0}, {0.5, 0.25, 0.125, 0.0625});
    CHECK(aff.kappa == doctest::Approx(2.0).epsilon(0.02));
    for (size_t i = 0; i < aff.radii.size(); ++i)
        CHECK(aff.energies[i] == doctest::Approx(kPi * sqr(aff.radii[i])).epsilon(0.01));

    VectorField uq(g, 1);
    uq.components[0] = ScalarField::sample(g, [](const std::array<double, 3>& p) { return p[0] * p[0]; });
    DecayProfile quad = decay_profile(uq, {0, 0, 0}, {0.5, 0.25, 0.125, 0.0625});
    CHECK(quad.kappa >= 2.0);
    CHECK(quad.kappa == doctest::Approx(4.0).epsilon(0.05));

    CHECK_THROWS(decay_profile(u, {0, 0, 0}, {0.5, 0.25}));  // < 3 radii
}

TEST_CASE("residual transforms with R^2 under nested dyadic zooms") {
    const int nodes = 129;
    Grid g = Grid::box(2, nodes);
    VectorField u(g, 2);
    u.components[0] = get_fixture("gaussian-bump").sample(g);
    u.components[1] = get_fixture("poly-bump").sample(g);
    ConnectionForm om = smooth_connection(g, 17);
    VectorField f(g, 2);
    ResidualField base = residual(u, om, f);

    // target grid nodes map exactly onto source nodes: hat-h = 2h, R = 1/2
    const double R = 0.5;
    Grid tg = Grid::box(2, (nodes - 1) / 2 + 1);
    VectorField uh(tg, 2);
    ConnectionForm omh(tg, 2);
    VectorField fh(tg, 2);
    // target spacing is 2h, so x0 + R x_hat walks the source lattice node by node
    for (int i = 0; i < tg.shape[0]; ++i)
        for (int j = 0; j < tg.shape[1]; ++j) {
            // x0 + R * x_hat lands on the source lattice: x_hat_i has index i with
            // spacing 2h, so the source index offset is i (spacing h) from the center
            int ci = (nodes - 1) / 2, cj = ci;
            int si = ci + (i - (tg.shape[0] - 1) / 2);
            int sj = cj + (j - (tg.shape[1] - 1) / 2);
            for (int c = 0; c < 2; ++c) uh.components[size_t(c)].at(i, j) = u.components[size_t(c)].at(si, sj);
            for (int ax = 0; ax < 2; ++ax)
                omh.at_upper(0, 1).components[size_t(ax)].at(i, j) =
                    R * om.at_upper(0, 1).components[size_t(ax)].at(si, sj);
        }
    ResidualField zoom = residual(uh, omh, fh);
    int ci = (nodes - 1) / 2;
    for (int i = 2; i < tg.shape[0] - 2; ++i)
        for (int j = 2; j < tg.shape[1] - 2; ++j) {
            int si = ci + (i - (tg.shape[0] - 1) / 2);
            int sj = ci + (j - (tg.shape[1] - 1) / 2);
            if (!ResidualField::interior(g, g.index(si, sj))) continue;
            CHECK(zoom.magnitude.at(i, j) ==
                  doctest::Approx(R * R * base.magnitude.at(si, sj)).epsilon(1e-10).scale(1e-6));
        }
}
