#pragma once

#include "hal/quadrature.hpp"

namespace hal {

struct PoissonProblem {
    ScalarField rhs;
    Ball region = Ball::unit();
    double tolerance = 1e-10;  // relative CG residual
    int max_iterations = 20000;
};

struct PoissonResult {
    ScalarField u;  // zero at nodes outside the region interior
    int iterations = 0;
    double residual = 0.0;
    std::vector<double> residual_log;  // every 50 iterations
};

struct SolveFailure : std::runtime_error {
    double residual;
    explicit SolveFailure(double r)
        : std::runtime_error("dirichlet solve did not reach tolerance; last residual " + std::to_string(r)),
          residual(r) {}
};

/// Solves -Lap u = rhs with the compact 5/7-point stencil on region-interior
/// nodes (u = 0 at boundary/exterior nodes), by conjugate gradients.
PoissonResult solve_dirichlet(const PoissonProblem& problem);

}  // namespace hal
