#include "hal/kernels.hpp"

#include <cmath>

namespace hal {

double theta_bump(double r) { return smooth_cutoff_12(r / 2.0) - smooth_cutoff_12(r); }

double theta_partition_sum(double r, int kmin, int kmax) {
    double acc = 0.0;
    for (int k = kmin; k <= kmax; ++k) acc += theta_bump(r / std::pow(2.0, k));
    return acc;
}

DyadicKernelSplit DyadicKernelSplit::for_range(double delta, double r_lo, double r_hi) {
    if (!(delta > 0.0) || !(r_lo > 0.0) || !(r_hi > r_lo))
        throw std::invalid_argument("DyadicKernelSplit: need delta > 0 and 0 < r_lo < r_hi");
    DyadicKernelSplit s;
    s.delta = delta;
    s.j_min = int(std::floor(std::log2(r_lo / (2.0 * delta))));
    s.j_max = int(std::ceil(std::log2(r_hi / delta)));
    return s;
}

double DyadicKernelSplit::partition_residual(double r_lo, double r_hi, int samples) const {
    double worst = 0.0;
    for (int s = 0; s < samples; ++s) {
        double r = r_lo * std::pow(r_hi / r_lo, double(s) / double(samples - 1));
        double acc = 0.0;
        for (int j = j_min; j <= j_max; ++j) acc += theta_bump(r / tau(j));
        worst = std::max(worst, std::abs(acc - 1.0));
    }
    return worst;
}

namespace {

double gauss_cell_integral(const RieszKernel& kernel, const Grid& g, const std::array<double, 3>& off) {
    std::vector<double> gx, gw;
    detail::gauss_legendre_01(8, gx, gw);
    double acc = 0.0;
    if (g.dim == 2) {
        for (size_t a = 0; a < gx.size(); ++a)
            for (size_t b = 0; b < gx.size(); ++b) {
                std::array<double, 3> q{off[0] + (gx[a] - 0.5) * g.spacing[0],
                                        off[1] + (gx[b] - 0.5) * g.spacing[1], 0.0};
                acc += gw[a] * gw[b] * kernel.value(q);
            }
    } else {
        for (size_t a = 0; a < gx.size(); ++a)
            for (size_t b = 0; b < gx.size(); ++b)
                for (size_t c = 0; c < gx.size(); ++c) {
                    std::array<double, 3> q{off[0] + (gx[a] - 0.5) * g.spacing[0],
                                            off[1] + (gx[b] - 0.5) * g.spacing[1],
                                            off[2] + (gx[c] - 0.5) * g.spacing[2]};
                    acc += gw[a] * gw[b] * gw[c] * kernel.value(q);
                }
    }
    return acc * g.cell_volume();
}

}  // namespace

OffsetTable kernel_cell_table(const RieszKernel& kernel, const Grid& g, int near_cells) {
    std::array<int, 3> extent{0, 0, 0};
    for (int d = 0; d < g.dim; ++d) extent[size_t(d)] = g.shape[size_t(d)] - 1;
    OffsetTable t = OffsetTable::zeros(g.dim, extent);
    const double vol = g.cell_volume();
    const int ek = (g.dim == 3) ? extent[2] : 0;
    for (int di = -extent[0]; di <= extent[0]; ++di)
        for (int dj = -extent[1]; dj <= extent[1]; ++dj)
            for (int dk = -ek; dk <= ek; ++dk) {
                std::array<double, 3> off{di * g.spacing[0], dj * g.spacing[1],
                                          g.dim == 3 ? dk * g.spacing[2] : 0.0};
                double v;
                if (di == 0 && dj == 0 && dk == 0)
                    v = kernel.self_cell_integral(vol);
                else if (std::abs(di) <= near_cells && std::abs(dj) <= near_cells && std::abs(dk) <= near_cells)
                    v = gauss_cell_integral(kernel, g, off);
                else
                    v = kernel.value(off) * vol;
                t.at(di, dj, dk) = v;
            }
    return t;
}

}  // namespace hal
