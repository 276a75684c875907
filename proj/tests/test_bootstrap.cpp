#include <doctest.h>

#include "hal/bootstrap.hpp"

using namespace hal;

TEST_CASE("exponent recursion: exact fixed point and one exact step") {
    BootstrapParams params{3, Rational(2)};
    // fixed point 2p/n = 4/3 maps to itself exactly
    Rational fp = params.s_limit();
    CHECK(exponent_step(fp, params) == fp);
    CHECK(fp == Rational(4, 3));

    // s1 = 1.1 = 11/10 -> 6*(11/10) / (3*(11/10) + 2) = 66/53 exactly
    CHECK(exponent_step(Rational(11, 10), params) == Rational(66, 53));

    CHECK_THROWS(exponent_iterate(Rational(1), params, 10));       // s1 not in (1, 2p/n)
    CHECK_THROWS(exponent_iterate(Rational(3, 2), params, 10));    // above the ceiling
    BootstrapParams bad{3, Rational(1)};
    CHECK_THROWS(bad.validate());
}

TEST_CASE("exponent sequences increase to 2p/n with gap below 1e-12 in 200 steps") {
    for (auto [n, pnum, pden] : {std::tuple{3, 2, 1}, std::tuple{2, 3, 2}, std::tuple{4, 3, 1}}) {
        BootstrapParams params{n, Rational(pnum, pden)};
        ExponentSequence seq = exponent_iterate(Rational(101, 100), params, 200);
        CHECK(seq.strictly_increasing);
        CHECK(seq.seq.back() < params.s_limit());  // strictly below the limit, exactly
        CHECK(double(seq.final_gap) < 1e-12);
        CHECK(double(seq.final_gap) > 0.0);
    }
}

TEST_CASE("exponent recursion preserves order in the initial datum") {
    BootstrapParams params{3, Rational(2)};
    ExponentSequence lo = exponent_iterate(Rational(105, 100), params, 60);
    ExponentSequence hi = exponent_iterate(Rational(115, 100), params, 60);
    for (size_t k = 0; k < lo.seq.size(); ++k) CHECK(lo.seq[k] < hi.seq[k]);
}

TEST_CASE("decay iteration: pure geometric case and closed form") {
    DecaySequence pure = decay_iterate(1.0, 0.25, 0.5, 0.0, 30);
    for (size_t p = 0; p < pure.direct.size(); ++p)
        CHECK(double(pure.direct[p]) == doctest::Approx(std::pow(0.25, double(p))).epsilon(1e-14));

    DecaySequence seq = decay_iterate(1.0, 0.25, 0.5, 1.0, 50);
    CHECK(seq.max_rel_gap <= 1e-14);
    CHECK(double(seq.direct[1]) == doctest::Approx(0.25 + 0.5).epsilon(1e-15));
    CHECK(seq.dominated);
    CHECK(seq.bound_C == doctest::Approx(1.0 + 0.5 / 0.25).epsilon(1e-14));

    CHECK_THROWS(decay_iterate(1.0, 0.5, 0.25, 1.0, 10));  // lambda >= Lambda: outside the regime
    CHECK_THROWS(decay_iterate(1.0, 0.5, 1.5, 1.0, 10));
}

TEST_CASE("lambda(delta) exposes the admissible range") {
    for (int n : {2, 3}) {
        for (double gamma : {0.2, 0.5, 0.9}) {
            double dmax = max_admissible_delta(n, gamma);
            CHECK(dmax > 0.0);
            CHECK(decay_lambda(n, 0.5 * dmax) < decay_Lambda(n, gamma));
            CHECK(decay_lambda(n, 1.01 * dmax) > decay_Lambda(n, gamma));
        }
    }
}

TEST_CASE("absorption: zero table and synthetic power table") {
    PhiTable zero;
    zero.dim = 2;
    for (double s : {1.0, 0.5, 0.25, 0.125})
        zero.entries.push_back({{0, 0, 0}, s, 0.0});
    AbsorptionVerdict v0 = absorption_check(zero, 1.0, 1e-6, 0.01, Ball::unit());
    CHECK(v0.hypothesis_ok);
    CHECK(v0.conclusion_ratio == 0.0);

    // phi(B_sigma) = sigma^q with q = n - 2 + 2 gamma, gamma = 0.4
    const double q = 0.8, k = 1.0, eps0 = 0.05;
    PhiTable synth;
    synth.dim = 2;
    std::vector<std::array<double, 3>> centers{{0, 0, 0}, {0.2, 0.1, 0}, {-0.15, 0.2, 0}};
    for (const auto& c : centers)
        for (double s : {1.0, 0.5, 0.25, 0.125, 0.0625})
            synth.entries.push_back({c, s, std::pow(s, q)});
    // Gamma from the table arithmetic: the worst pair needs sigma^k ( (s/2)^q - eps0 s^q )
    double Gamma = 0.0;
    for (const auto& e : synth.entries)
        Gamma = std::max(Gamma, std::pow(e.sigma, k) * (std::pow(e.sigma / 2.0, q) - eps0 * e.value));
    AbsorptionVerdict v = absorption_check(synth, k, Gamma * 1.0001, eps0, Ball::unit());
    CHECK(v.pairs_checked > 0);
    CHECK(v.hypothesis_ok);
    CHECK(v.conclusion_ratio > 0.0);
    CHECK(std::isfinite(v.conclusion_ratio));

    // a non-monotone table is rejected by the screen
    PhiTable bad = synth;
    bad.entries[1].value = 100.0;  // value at sigma = 0.5 above its sigma = 1 parent
    CHECK_THROWS(absorption_check(bad, k, Gamma, eps0, Ball::unit()));
}
