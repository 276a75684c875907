#include <doctest.h>

#include "hal/fixtures.hpp"
#include "hal/hodge.hpp"
#include "hal/poisson.hpp"

using namespace hal;

namespace {
Fixture w0_fixture() {
    Fixture w0;
    w0.name = "w0";
    w0.expr2 = [](const Jet2& X, const Jet2& Y) {
        Jet2 w = 1.0 - X * X - Y * Y;
        return w * w;
    };
    return w0;
}
}  // namespace

TEST_CASE("dirichlet solve: zero rhs, manufactured solution, maximum principle") {
    Grid g = Grid::box(2, 129);

    PoissonProblem zero;
    zero.rhs = ScalarField(g, 0.0);
    CHECK(integrate_box(solve_dirichlet(zero).u) == 0.0);

    Fixture w0 = w0_fixture();
    PoissonProblem prob;
    prob.rhs = ScalarField(g);
    for (size_t i = 0; i < g.size(); ++i) {
        auto p = g.point(i);
        prob.rhs.values[i] = -jet_laplacian(w0.jet(p[0], p[1]));
    }
    PoissonResult sol = solve_dirichlet(prob);
    ScalarField w = w0.sample(g);
    double worst = 0.0;
    for (size_t i = 0; i < g.size(); ++i) {
        auto p = g.point(i);
        if (p[0] * p[0] + p[1] * p[1] > 0.8 * 0.8) continue;
        worst = std::max(worst, std::abs(sol.u.values[i] - w.values[i]));
    }
    CHECK(worst <= 5e-4);  // O(h^2) at h ~ 0.02

    // discrete maximum principle: rhs <= 0 everywhere -> solution <= 0
    PoissonProblem neg;
    neg.rhs = ScalarField(g);
    for (size_t i = 0; i < g.size(); ++i) neg.rhs.values[i] = -std::abs(get_fixture("poly-bump").sample(g).values[i]);
    PoissonResult ns = solve_dirichlet(neg);
    for (double v : ns.u.values) CHECK(v <= 1e-12);

    // non-convergence carries the last residual
    PoissonProblem hard = prob;
    hard.max_iterations = 3;
    CHECK_THROWS_AS(solve_dirichlet(hard), SolveFailure);
}

TEST_CASE("hodge decomposition of a harmonic one-form returns it as h") {
    Grid g = Grid::box(2, 129);
    FormField w(g, 1);
    for (auto& v : w.components[0].values) v = 1.0;  // dx1
    HodgeDecomposition dec = hodge_decompose(w, 1e-12);
    // constant forms produce exactly zero right-hand sides in both solves
    double anorm = 0.0;
    for (double v : dec.a.values) anorm = std::max(anorm, std::abs(v));
    CHECK(anorm <= 1e-12);
    CHECK(dec.norm2_db <= 1e-18);
    CHECK(dec.norm2_h == doctest::Approx(dec.norm2_omega).epsilon(1e-12));
}

TEST_CASE("hodge decomposition of an exact gradient recovers the potential") {
    Grid g = Grid::box(2, 129);
    Fixture w0 = w0_fixture();
    FormField df = w0.gradient_field(g);
    HodgeDecomposition dec = hodge_decompose(df, 1e-12);
    ScalarField f = w0.sample(g);
    double worst = 0.0;
    for (size_t i = 0; i < g.size(); ++i) {
        auto p = g.point(i);
        if (p[0] * p[0] + p[1] * p[1] > 0.7 * 0.7) continue;
        worst = std::max(worst, std::abs(dec.a.values[i] - f.values[i]));
    }
    CHECK(worst <= 2e-3);
    CHECK(dec.norm2_h <= 1e-4 * dec.norm2_omega);
    CHECK(dec.norm2_db <= 1e-4 * dec.norm2_omega);
}

TEST_CASE("random smooth forms: exact-orthogonality defects and re-decomposition") {
    Grid g = Grid::box(2, 129);
    FormField w = random_smooth_one_form(g, 7);
    HodgeDecomposition dec = hodge_decompose(w, 1e-12);
    CHECK(dec.pythagoras_defect_rel <= 1e-8);
    CHECK(std::abs(dec.orth_da_db_rel) <= 1e-10);
    CHECK(std::abs(dec.orth_h_da_rel) <= 1e-8);
    CHECK(std::abs(dec.orth_h_db_rel) <= 1e-8);

    // re-decomposing the reconstruction reproduces the parts; the residual
    // tolerance here is the O(h^2) collocation transfer, not the CG tolerance
    FormField recon = dec.da + dec.dstar_b + dec.h;
    HodgeDecomposition dec2 = hodge_decompose(recon, 1e-12);
    double da = 0.0, scale = 0.0;
    for (size_t i = 0; i < g.size(); ++i) {
        da = std::max(da, std::abs(dec2.a.values[i] - dec.a.values[i]));
        scale = std::max(scale, std::abs(dec.a.values[i]));
    }
    CHECK(da <= 5e-3 * std::max(scale, 1e-12));
}

TEST_CASE("energy inequality against the unit ball") {
    Grid g = Grid::box(2, 129);
    FormField w = random_smooth_one_form(g, 21);
    HodgeDecomposition dec = hodge_decompose(w, 1e-12);
    ScalarField mag2 = dec.h.magnitude2();
    double full = integrate_ball_interp(mag2, Ball::unit());
    for (double r : {0.5, 0.25, 0.125}) {
        double part = integrate_ball_interp(mag2, Ball{{0, 0, 0}, r});
        CHECK(part <= std::pow(r, 2.0) * full * 1.05 + 1e-12);
    }
}

TEST_CASE("harmonic decay tables") {
    Grid g = Grid::box(2, 129);

    // constant form: the table is flat
    FormField dx1(g, 1);
    for (auto& v : dx1.components[0].values) v = 1.0;
    DecayTable flat = harmonic_decay_check(dx1);
    for (size_t i = 0; i + 1 < flat.values.size(); ++i)
        CHECK(flat.values[i + 1] == doctest::Approx(flat.values[i]).epsilon(5e-3));
    CHECK(flat.nondecreasing());

    // gradient of the harmonic quadratic: r^{-2} || . ||^2 = pi r^2 / 2, strictly increasing
    FormField hq = get_fixture("harmonic-quad").gradient_field(g);
    for (auto& c : hq.components)
        for (double& v : c.values) v *= 0.5;  // d(x1^2 - x2^2)/2 = (x1, -x2)
    DecayTable quad = harmonic_decay_check(hq);
    for (size_t i = 0; i < quad.radii.size(); ++i)
        CHECK(quad.values[i] == doctest::Approx(kPi * sqr(quad.radii[i]) / 2.0).epsilon(5e-3));
    CHECK(quad.min_step_ratio > 1.5);

    // decomposition output is accepted and monotone
    FormField w = random_smooth_one_form(g, 3);
    HodgeDecomposition dec = hodge_decompose(w, 1e-12);
    DecayTable t = harmonic_decay_check(dec.h);
    CHECK(t.nondecreasing(0.01));

    // a visibly non-harmonic field is rejected
    FormField bad(g, 1);
    bad.components[0] = ScalarField::sample(g, [](const std::array<double, 3>& p) { return p[0] * p[0]; });
    CHECK_THROWS(harmonic_decay_check(bad));
}
