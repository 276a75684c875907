#include <doctest.h>

#include <cstdio>
#include <random>

#include "hal/field_io.hpp"

using namespace hal;

TEST_CASE("field files round-trip bit-exactly") {
    Grid g = Grid::box(2, 16);
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-10, 10);

    ScalarField s(g);
    for (double& v : s.values) v = u(rng);
    write_field("/tmp/hal_io_scalar", s);
    auto rs = std::get<ScalarField>(read_field("/tmp/hal_io_scalar"));
    CHECK(rs.grid.same_layout(g));
    for (size_t i = 0; i < s.values.size(); ++i) CHECK(rs.values[i] == s.values[i]);  // bit exact

    VectorField vec(g, 3);
    for (auto& c : vec.components)
        for (double& v : c.values) v = u(rng);
    write_field("/tmp/hal_io_vec", vec);
    auto rv = std::get<VectorField>(read_field("/tmp/hal_io_vec"));
    CHECK(rv.m() == 3);
    for (int c = 0; c < 3; ++c)
        for (size_t i = 0; i < g.size(); ++i)
            CHECK(rv.components[size_t(c)].values[i] == vec.components[size_t(c)].values[i]);

    FormField w(g, 1);
    for (auto& c : w.components)
        for (double& v : c.values) v = u(rng);
    write_field("/tmp/hal_io_form", w);
    auto rw = std::get<FormField>(read_field("/tmp/hal_io_form"));
    CHECK(rw.degree == 1);
    for (size_t c = 0; c < w.components.size(); ++c)
        for (size_t i = 0; i < g.size(); ++i)
            CHECK(rw.components[c].values[i] == w.components[c].values[i]);

    std::remove("/tmp/hal_io_scalar.f64");
    std::remove("/tmp/hal_io_scalar.json");
    std::remove("/tmp/hal_io_vec.f64");
    std::remove("/tmp/hal_io_vec.json");
    std::remove("/tmp/hal_io_form.f64");
    std::remove("/tmp/hal_io_form.json");
}

TEST_CASE("missing files raise") {
    CHECK_THROWS(read_field("/tmp/hal_io_does_not_exist"));
}
