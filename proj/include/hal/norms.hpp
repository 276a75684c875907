#pragma once

#include <map>
#include <string>

#include "hal/quadrature.hpp"

namespace hal {

enum class NormKind { Lp, WeakLp, Morrey, WeakMorrey, Campanato, Holder, Hminus1, Hardy, LocalHardy };

std::string to_string(NormKind k);

/// Scan set for sup-type norms: p, beta, radii (dyadic by default, decreasing)
/// and ball centers. An empty center list means "every grid node inside the
/// region" (served by the fast convolution path where available).
struct MorreyParams {
    double p = 1.0;
    double beta = 0.0;
    std::vector<double> radii;
    std::vector<std::array<double, 3>> centers;

    static MorreyParams make(const Grid& g, double p, double beta, int coarsest_j = 0);
    /// Center lattice with the given stride, restricted to the region.
    static std::vector<std::array<double, 3>> stride_centers(const Grid& g, const Ball& region, int stride);
};

struct NormWitness {
    std::array<double, 3> center{0, 0, 0};
    double radius_or_scale = 0.0;
};

struct NormReport {
    NormKind kind = NormKind::Lp;
    double value = 0.0;
    double p = 0.0, beta = 0.0, gamma = 0.0;
    NormWitness witness;
    /// radius -> sup over centers of the (un-rooted) scan quantity at that radius
    std::vector<std::pair<double, double>> scan_table;
    std::map<std::string, double> extra;  // solver stats etc.
};

/// ||g||_{M^{p,beta}}: (sup over centers, radii of r^{-beta} int_{B_r(x) cap O} |g|^p)^{1/p}.
/// The dyadic radius scan brackets the continuous sup by a factor 2^{beta/p}.
NormReport morrey_norm(const ScalarField& g, const MorreyParams& params, const Ball& region);

/// Order-statistic weak-L^p: sup over ranks of |g|_(k) (mu_k)^{1/p}, where mu_k
/// is the cumulated node measure. Ranks whose measure sits below
/// min_measure_cells cells (default ~16 pi, an equivalent-disk radius of four
/// cells) are the estimator's stated resolution floor and are skipped; lattice
/// counting at smaller level sets is not trustworthy.
NormReport weak_lp_norm(const ScalarField& g, double p, const Ball& region, double min_measure_cells = 48.0);

/// Weak Morrey: sup over the ball family of r^{-beta/p} * weak-L^p(B_r(x) cap region).
NormReport weak_morrey_norm(const ScalarField& g, const MorreyParams& params, const Ball& region);

/// Campanato seminorm sup (r^{-beta} int_{B_r cap O} |g - mean|^p)^{1/p}.
NormReport campanato_seminorm(const ScalarField& g, const MorreyParams& params, const Ball& region);

/// Holder seminorm sup |g(x)-g(y)|/|x-y|^gamma over sampled node pairs:
/// all pairs when the region holds <= 4096 nodes, otherwise 10^6 seeded pairs.
NormReport holder_seminorm(const ScalarField& g, double gamma, const Ball& region);

/// Dirichlet-energy realization of the dual norm: solve -Lap w = g with zero
/// boundary on the region and return ||grad w||_{L^2} = sqrt(<w, g>).
NormReport h_minus1_norm(const ScalarField& g, const Ball& region, double tol = 1e-10, int max_iter = 20000);

NormReport lp_norm_report(const ScalarField& g, double p, const Ball& region);

}  // namespace hal
