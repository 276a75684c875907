#pragma once

#include "hal/kernels.hpp"
#include "hal/maximal.hpp"
#include "hal/norms.hpp"

namespace hal {

/// A_alpha[g] by singular-kernel quadrature (analytic self cell, Gauss cell
/// averages near the singularity, midpoint beyond); spectral or direct sum.
ScalarField riesz_apply(const RieszKernel& kernel, const ScalarField& g, ConvMode mode = ConvMode::automatic);

struct DyadicRieszResult {
    ScalarField total;              // sum of shell convolutions + self cell
    ScalarField inner, outer;       // shells tau <= delta / tau > delta (self cell counted inner)
    DyadicKernelSplit split;
    double partition_residual = 0.0;
    double inner_tail_bound = 0.0;  // analytic geometric-series bound for shells below the window
};

/// The shell-resummed evaluation: A_alpha[g] = sum_j (theta(./tau_j) a_alpha) * g.
/// With the window covering every pair distance of the grid this resums the
/// direct quadrature exactly; the report carries the partition residual and
/// the analytic bound for discarded sub-window shells.
DyadicRieszResult riesz_apply_dyadic(const RieszKernel& kernel, const ScalarField& g, double delta,
                                     ConvMode mode = ConvMode::automatic);

ScalarField newtonian(const ScalarField& g, ConvMode mode = ConvMode::automatic);
FormField grad_newtonian(const ScalarField& g, ConvMode mode = ConvMode::automatic);

// ---------------------------------------------------------------------------
// verification engines
// ---------------------------------------------------------------------------

struct AdamsPointwiseReport {
    ScalarField lhs;      // |A_alpha g|
    ScalarField rhs;      // M^{alpha/(n-beta)} gstar^{(n-beta-alpha p)/(n-beta)}
    ScalarField ratio;
    double max_ratio = 0.0;
    double sup_factor = 0.0;   // sup{1/(1-2^-alpha), 1/(1-2^-((n-beta)/p - alpha))}
    double fitted_cn = 0.0;    // max_ratio / sup_factor
    std::array<double, 3> argmax{0, 0, 0};
    double p = 1, beta = 0, alpha = 1;
};

/// Per-node check of |A_alpha g| <= C (M_beta[|g|^p])^{alpha/(n-beta)} (g_*)^{(n-beta-alpha p)/(n-beta)}.
/// Requires 0 <= beta < n and 0 < alpha p < n - beta.
AdamsPointwiseReport verify_adams_pointwise(const ScalarField& g, double p, double beta, double alpha,
                                            const RieszKernel& kernel, const Mollifier& moll);

struct OptimalDeltaReport {
    double max_combined_ratio = 0.0;  // (|I_in|+|I_out|) / (delta^alpha g_* + delta^{alpha-(n-beta)} M)
    double max_inner_ratio = 0.0;     // |I_in| / (delta^alpha g_*)
    double max_outer_ratio = 0.0;     // |I_out| / (delta^{alpha-(n-beta)} M)
    size_t nodes_checked = 0;
};

/// Evaluates the dyadic split at the per-node optimum
/// delta(x) = (M_beta[g](x) / g_*(x))^{1/(n-beta)} (quantized to powers of two)
/// and records the empirical constants of the two-term bound.
OptimalDeltaReport adams_optimal_delta_check(const RieszKernel& kernel, const ScalarField& g, double beta,
                                             const Mollifier& moll);

struct MorreyBoundednessReport {
    double p = 1, beta = 0, alpha = 1, p_tilde = 0;
    bool weak = false;       // p = 1 maps into the weak target space
    double source_norm = 0;  // ||g||_{M^{p,beta}}
    double target_norm = 0;  // ||A_alpha g|| in the (strong or weak) target
    double ratio = 0;
    double sup_factor = 0;   // constant factor from the geometric series
};

/// ||A_alpha g||_{M^{p~,beta}} / ||g||_{M^{p,beta}} with 1/p~ = 1/p - alpha/(n-beta);
/// weak target norm when p = 1. Rejects alpha p >= n - beta naming the constraint.
MorreyBoundednessReport verify_morrey_boundedness(const ScalarField& g, double p, double beta, double alpha,
                                                  ConvMode mode = ConvMode::automatic);

}  // namespace hal
