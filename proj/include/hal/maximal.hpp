#pragma once

#include <optional>

#include "hal/fft_conv.hpp"
#include "hal/mollifier.hpp"
#include "hal/quadrature.hpp"

namespace hal {

/// Per-node sup over a scanned radius/scale family, with the maximizing
/// radius/scale as witness.
struct MaximalField {
    ScalarField values;
    std::vector<float> witness;  // radius or scale achieving the sup, per node

    void check() const {
        for (double v : values.values)
            if (!std::isfinite(v)) throw std::runtime_error("MaximalField: non-finite value");
    }
};

/// Dyadic radii 2^0 .. 2^-J, largest first, clipped below at about 3 grid cells.
std::vector<double> default_radius_scan(const Grid& g, int coarsest_j = 0);

/// M_beta[g](x) = sup_r r^{-beta} integral_{B_r(x)} |g|; scan over `radii`
/// (sup over a dyadic subset brackets the continuous sup by 2^{beta}).
/// Pass |g|^p as the input field for the fractional maximal of a power.
MaximalField fractional_maximal(const ScalarField& g, double beta, std::vector<double> radii = {},
                                ConvMode mode = ConvMode::automatic);

/// g_*(x) = sup over the mollifier's scale list of |phi_t * g(x)|;
/// local = true restricts to scales < 1.
MaximalField smooth_maximal(const ScalarField& g, const Mollifier& moll, bool local = false,
                            ConvMode mode = ConvMode::automatic);

struct HardyReport {
    double value = 0.0;        // integral of the smooth maximal over the grid box
    double tail_bound = 0.0;   // analytic bound for the integral outside the box
    bool tail_divergent = false;  // nonzero-mean g has a log-divergent global tail
    double mean = 0.0;
    double scale_min = 0.0, scale_max = 0.0;
};

/// ||g||_{H^1} estimator: integral of g_* over the box, with the outside-box
/// tail acknowledged analytically. Requires supp(g) to keep a margin of at
/// least the largest scale from the box boundary.
HardyReport hardy_norm(const ScalarField& g, const Mollifier& moll);

/// Local variant: scales restricted below 1.
HardyReport local_hardy_norm(const ScalarField& g, const Mollifier& moll);

}  // namespace hal
