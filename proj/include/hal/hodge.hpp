#pragma once

#include <limits>

#include "hal/differential.hpp"
#include "hal/quadrature.hpp"

namespace hal {

/// omega = da + d*b + h over a disk, n = 2. The solid parts are obtained as
/// least-squares projections in a staggered (edge-based) complex where the
/// discrete curl of a discrete gradient vanishes identically, so the three
/// parts are orthogonal to solver tolerance, not just to O(h^2). The defect
/// fields below are measured in that staggered quadrature; collocated copies
/// of all parts are returned for interop.
struct HodgeDecomposition {
    ScalarField a;       // zero-boundary scalar potential
    FormField b;         // degree-2 potential (vanishing normal part)
    FormField da;        // gradient part, collocated
    FormField dstar_b;   // coexact part, collocated
    FormField h;         // harmonic remainder := omega_region - da - d*b (collocated)

    double norm2_omega = 0.0, norm2_da = 0.0, norm2_db = 0.0, norm2_h = 0.0;
    double pythagoras_defect_rel = 0.0;
    double orth_da_db_rel = 0.0;  // <da, d*b> / ||omega||^2
    double orth_h_da_rel = 0.0;
    double orth_h_db_rel = 0.0;
    double residual = 0.0;        // max of the two normal-equation residuals
    int iterations_a = 0, iterations_b = 0;
};

/// Decompose a 1-form over the region (default: the unit disk); n = 2 only.
HodgeDecomposition hodge_decompose(const FormField& omega, double tolerance = 1e-12,
                                   const Ball& region = Ball::unit(), int max_iterations = 60000);

struct DecayTable {
    std::vector<double> radii;   // increasing
    std::vector<double> values;  // r^{-n} ||h||^2_{L^2(B_r)}
    double min_step_ratio = std::numeric_limits<double>::infinity();  // min over steps of value_{j+1}/value_j
    bool nondecreasing(double step_tol = 0.01) const { return min_step_ratio >= 1.0 - step_tol; }
};

/// r -> r^{-n} ||h||^2_{L^2(B_r)} over dyadic radii; for harmonic h this is
/// nondecreasing. Inputs failing the harmonicity screen (dh, d*h not small
/// relative to ||h||) are rejected.
DecayTable harmonic_decay_check(const FormField& h, const std::array<double, 3>& center = {0, 0, 0},
                                std::vector<double> radii = {}, double screen_tol = 0.35);

}  // namespace hal
