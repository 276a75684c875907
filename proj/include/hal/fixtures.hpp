#pragma once

#include <functional>
#include <string>

#include "hal/field.hpp"
#include "hal/jet.hpp"

namespace hal {

/// Closed-form test field with exact derivative oracles (second-order jets).
/// Singular radial fixtures substitute the analytic cell average at the
/// singular node, so sampled values stay finite while ball integrals keep the
/// right near-field mass.
struct Fixture {
    std::string name;
    std::string description;
    int dim = 2;
    bool mean_zero = false;
    bool hardy_member = false;  // compactly supported with cancellation
    bool singular = false;
    bool vector_valued = false;  // served by make_counterexample instead

    std::function<Jet2(const Jet2&, const Jet2&)> expr2;
    std::function<Jet3(const Jet3&, const Jet3&, const Jet3&)> expr3;
    std::function<double(double cell_volume)> singular_cell_average;  // used when `singular`

    Jet2 jet(double x, double y) const { return expr2(Jet2::var(0, x), Jet2::var(1, y)); }
    Jet3 jet(double x, double y, double z) const {
        return expr3(Jet3::var(0, x), Jet3::var(1, y), Jet3::var(2, z));
    }

    ScalarField sample(const Grid& g) const;
    FormField gradient_field(const Grid& g) const;
    ScalarField laplacian_field(const Grid& g) const;
};

const std::vector<Fixture>& fixture_catalog();
const Fixture& get_fixture(const std::string& name);

/// det(grad u, grad v) = u_x v_y - u_y v_x sampled from the jets of two
/// 2-d fixtures; integrates to zero and lives in the Hardy space when both
/// factors are compactly supported.
ScalarField jacobian_field(const Fixture& u, const Fixture& v, const Grid& g);

/// Band-limited random trigonometric 1-form with seeded coefficients;
/// deterministic given (grid, seed).
FormField random_smooth_one_form(const Grid& g, uint64_t seed, int max_mode = 3);

}  // namespace hal
