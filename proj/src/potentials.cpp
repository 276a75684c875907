#include "hal/potentials.hpp"

#include <cmath>
#include <limits>

namespace hal {

namespace {

void require_compact_support(const ScalarField& g) {
    const Grid& grid = g.grid;
    double maxAbs = 0.0;
    for (double v : g.values) maxAbs = std::max(maxAbs, std::abs(v));
    const double cut = 1e-8 * maxAbs;
    const int nk = (grid.dim == 3) ? grid.shape[2] : 1;
    for (int i = 0; i < grid.shape[0]; ++i)
        for (int j = 0; j < grid.shape[1]; ++j)
            for (int k = 0; k < nk; ++k) {
                bool edge = i == 0 || j == 0 || i == grid.shape[0] - 1 || j == grid.shape[1] - 1;
                if (grid.dim == 3) edge = edge || k == 0 || k == nk - 1;
                if (edge && std::abs(g.values[grid.index(i, j, k)]) > cut)
                    throw std::invalid_argument("potential: field must be compactly supported inside the grid box");
            }
}

double grid_diameter(const Grid& g) {
    double acc = 0.0;
    for (int d = 0; d < g.dim; ++d) acc += sqr(g.axis_max(d) - g.origin[size_t(d)]);
    return std::sqrt(acc);
}

OffsetTable shell_table(const OffsetTable& base, const Grid& g, double tau) {
    OffsetTable t = base;
    const int ek = (g.dim == 3) ? t.extent[2] : 0;
    for (int di = -t.extent[0]; di <= t.extent[0]; ++di)
        for (int dj = -t.extent[1]; dj <= t.extent[1]; ++dj)
            for (int dk = -ek; dk <= ek; ++dk) {
                double r = std::sqrt(sqr(di * g.spacing[0]) + sqr(dj * g.spacing[1]) +
                                     (g.dim == 3 ? sqr(dk * g.spacing[2]) : 0.0));
                double w = (di == 0 && dj == 0 && dk == 0) ? 0.0 : theta_bump(r / tau);
                t.at(di, dj, dk) *= w;
            }
    return t;
}

}  // namespace

ScalarField riesz_apply(const RieszKernel& kernel, const ScalarField& g, ConvMode mode) {
    g.check();
    require_compact_support(g);
    return convolve(g, kernel_cell_table(kernel, g.grid), mode == ConvMode::automatic ? ConvMode::spectral : mode);
}

DyadicRieszResult riesz_apply_dyadic(const RieszKernel& kernel, const ScalarField& g, double delta,
                                     ConvMode mode) {
    g.check();
    require_compact_support(g);
    const Grid& grid = g.grid;
    const double h = grid.min_spacing();
    const double diam = grid_diameter(grid);

    DyadicRieszResult res;
    res.split = DyadicKernelSplit::for_range(delta, h, diam);
    res.partition_residual = res.split.partition_residual(h, diam);

    OffsetTable base = kernel_cell_table(kernel, grid);
    res.inner = ScalarField(grid, 0.0);
    res.outer = ScalarField(grid, 0.0);
    ConvMode cm = (mode == ConvMode::automatic) ? ConvMode::spectral : mode;
    for (int j = res.split.j_min; j <= res.split.j_max; ++j) {
        const double tau = res.split.tau(j);
        ScalarField piece = convolve(g, shell_table(base, grid, tau), cm);
        ScalarField& dst = (j <= 0) ? res.inner : res.outer;
        for (size_t i = 0; i < dst.values.size(); ++i) dst.values[i] += piece.values[i];
    }
    // the analytic self-cell mass is near-field: count it into the inner part
    const double self = base.at(0, 0, 0);
    for (size_t i = 0; i < res.inner.values.size(); ++i) res.inner.values[i] += self * g.values[i];

    res.total = res.inner + res.outer;

    // shells below the window miss only radii < h where no other node lives;
    // bound their continuum mass against sup|g| by the geometric series
    double supg = 0.0;
    for (double v : g.values) supg = std::max(supg, std::abs(v));
    const double tau_lo = res.split.tau(res.split.j_min);
    if (!kernel.log_kernel) {
        const double a = kernel.alpha;
        res.inner_tail_bound = supg * std::abs(kernel.scale) * unit_sphere_area(grid.dim) *
                               std::pow(4.0 * tau_lo, a) / (a * (1.0 - std::pow(0.5, a)));
    }
    return res;
}

ScalarField newtonian(const ScalarField& g, ConvMode mode) {
    return riesz_apply(RieszKernel::newtonian(g.grid.dim), g, mode);
}

FormField grad_newtonian(const ScalarField& g, ConvMode mode) {
    FormField out(g.grid, 1);
    for (int d = 0; d < g.grid.dim; ++d)
        out.components[size_t(d)] = riesz_apply(RieszKernel::grad_newtonian(g.grid.dim, d), g, mode);
    return out;
}

namespace {

double adams_sup_factor(double alpha, double beta, double p, int n) {
    double f1 = 1.0 / (1.0 - std::pow(0.5, alpha));
    double f2 = 1.0 / (1.0 - std::pow(0.5, (double(n) - beta) / p - alpha));
    return std::max(f1, f2);
}

void adams_gate(double p, double beta, double alpha, int n) {
    if (beta < 0.0 || beta >= double(n))
        throw std::invalid_argument("adams: requires 0 <= beta < n");
    if (!(alpha * p > 0.0) || !(alpha * p < double(n) - beta))
        throw std::invalid_argument("adams: requires 0 < alpha*p < n - beta");
}

}  // namespace

AdamsPointwiseReport verify_adams_pointwise(const ScalarField& g, double p, double beta, double alpha,
                                            const RieszKernel& kernel, const Mollifier& moll) {
    const int n = g.grid.dim;
    adams_gate(p, beta, alpha, n);

    AdamsPointwiseReport rep;
    rep.p = p;
    rep.beta = beta;
    rep.alpha = alpha;

    ScalarField riesz = riesz_apply(kernel, g, ConvMode::spectral);
    ScalarField gp(g.grid);
    for (size_t i = 0; i < gp.values.size(); ++i) gp.values[i] = std::pow(std::abs(g.values[i]), p);
    MaximalField mb = fractional_maximal(gp, beta);
    MaximalField gstar = smooth_maximal(g, moll, false);

    const double e1 = alpha / (double(n) - beta);
    const double e2 = (double(n) - beta - alpha * p) / (double(n) - beta);

    rep.lhs = ScalarField(g.grid);
    rep.rhs = ScalarField(g.grid);
    rep.ratio = ScalarField(g.grid);
    for (size_t i = 0; i < g.grid.size(); ++i) {
        double lhs = std::abs(riesz.values[i]);
        double rhs = std::pow(mb.values.values[i], e1) * std::pow(gstar.values.values[i], e2);
        rep.lhs.values[i] = lhs;
        rep.rhs.values[i] = rhs;
        double ratio = 0.0;
        if (lhs > 0.0) ratio = rhs > 0.0 ? lhs / rhs : std::numeric_limits<double>::infinity();
        rep.ratio.values[i] = ratio;
        if (ratio > rep.max_ratio) {
            rep.max_ratio = ratio;
            rep.argmax = g.grid.point(i);
        }
    }
    rep.sup_factor = adams_sup_factor(alpha, beta, p, n);
    rep.fitted_cn = rep.max_ratio / rep.sup_factor;
    return rep;
}

OptimalDeltaReport adams_optimal_delta_check(const RieszKernel& kernel, const ScalarField& g, double beta,
                                             const Mollifier& moll) {
    const int n = g.grid.dim;
    adams_gate(1.0, beta, kernel.alpha, n);
    require_compact_support(g);
    const Grid& grid = g.grid;
    const double h = grid.min_spacing();
    const double diam = grid_diameter(grid);
    const double alpha = kernel.alpha;

    MaximalField mb = fractional_maximal(g, beta);
    MaximalField gstar = smooth_maximal(g, moll, false);

    // shells at pure powers of two covering every pair distance; a per-node
    // dyadic delta then just splits the shared shell sums
    const int kmin = int(std::floor(std::log2(h / 2.0)));
    const int kmax = int(std::ceil(std::log2(diam)));
    OffsetTable base = kernel_cell_table(kernel, grid);
    std::vector<ScalarField> shells;
    for (int k = kmin; k <= kmax; ++k)
        shells.push_back(convolve(g, shell_table(base, grid, std::pow(2.0, k)), ConvMode::spectral));
    const double self = base.at(0, 0, 0);

    OptimalDeltaReport rep;
    for (size_t i = 0; i < grid.size(); ++i) {
        double M = mb.values.values[i], S = gstar.values.values[i];
        if (M <= 0.0 || S <= 0.0) continue;
        double dOpt = std::pow(M / S, 1.0 / (double(n) - beta));
        int dExp = int(std::lround(std::log2(dOpt)));
        double dq = std::pow(2.0, dExp);
        double innerAcc = self * g.values[i], outerAcc = 0.0;
        for (int k = kmin; k <= kmax; ++k) {
            double v = shells[size_t(k - kmin)].values[i];
            if (k <= dExp) innerAcc += v;
            else outerAcc += v;
        }
        double b1 = std::pow(dq, alpha) * S;
        double b2 = std::pow(dq, alpha - (double(n) - beta)) * M;
        rep.max_inner_ratio = std::max(rep.max_inner_ratio, std::abs(innerAcc) / b1);
        rep.max_outer_ratio = std::max(rep.max_outer_ratio, std::abs(outerAcc) / b2);
        rep.max_combined_ratio =
            std::max(rep.max_combined_ratio, (std::abs(innerAcc) + std::abs(outerAcc)) / (b1 + b2));
        ++rep.nodes_checked;
    }
    return rep;
}

MorreyBoundednessReport verify_morrey_boundedness(const ScalarField& g, double p, double beta, double alpha,
                                                  ConvMode mode) {
    const int n = g.grid.dim;
    adams_gate(p, beta, alpha, n);

    MorreyBoundednessReport rep;
    rep.p = p;
    rep.beta = beta;
    rep.alpha = alpha;
    rep.p_tilde = 1.0 / (1.0 / p - alpha / (double(n) - beta));
    rep.weak = (p == 1.0);
    rep.sup_factor = adams_sup_factor(alpha, beta, p, n);

    ScalarField Ag = riesz_apply(RieszKernel::riesz(n, alpha), g, mode);
    Ball box_ball{{0, 0, 0}, grid_diameter(g.grid)};  // whole box

    MorreyParams src = MorreyParams::make(g.grid, p, beta);
    rep.source_norm = morrey_norm(g, src, box_ball).value;

    MorreyParams dst = MorreyParams::make(g.grid, rep.p_tilde, beta);
    if (rep.weak)
        rep.target_norm = weak_morrey_norm(Ag, dst, box_ball).value;
    else
        rep.target_norm = morrey_norm(Ag, dst, box_ball).value;
    rep.ratio = rep.source_norm > 0.0 ? rep.target_norm / rep.source_norm : 0.0;
    return rep;
}

}  // namespace hal
