#pragma once

#include "hal/fft_conv.hpp"
#include "hal/quadrature.hpp"

namespace hal {

/// Convolution kernel homogeneous of degree alpha - n with a smooth angular
/// part (constant, or the odd profile x_i/|x| of a Newtonian gradient), plus
/// the special log kernel of the 2-d Newtonian potential.
struct RieszKernel {
    enum class Angular { constant, component };

    int dim = 2;
    double alpha = 1.0;
    Angular angular = Angular::constant;
    int component = 0;
    double scale = 1.0;
    bool log_kernel = false;

    static RieszKernel riesz(int dim, double alpha) {
        if (!(alpha > 0.0 && alpha < double(dim)))
            throw std::invalid_argument("RieszKernel: alpha must lie in (0, n)");
        RieszKernel k;
        k.dim = dim;
        k.alpha = alpha;
        return k;
    }

    /// Fundamental solution of -Lap: -(1/2pi) log|x| in n=2, 1/(4pi |x|) in n=3.
    static RieszKernel newtonian(int dim) {
        RieszKernel k;
        k.dim = dim;
        if (dim == 2) {
            k.log_kernel = true;
            k.alpha = 2.0;  // nominal
        } else {
            k.alpha = 2.0;
            k.scale = 1.0 / (4.0 * kPi);
        }
        return k;
    }

    /// Component i of grad of the Newtonian potential kernel.
    static RieszKernel grad_newtonian(int dim, int i) {
        RieszKernel k;
        k.dim = dim;
        k.alpha = 1.0;
        k.angular = Angular::component;
        k.component = i;
        k.scale = (dim == 2) ? -1.0 / (2.0 * kPi) : -1.0 / (4.0 * kPi);
        return k;
    }

    double value(const std::array<double, 3>& off) const {
        double r2 = 0.0;
        for (int d = 0; d < dim; ++d) r2 += sqr(off[size_t(d)]);
        double r = std::sqrt(r2);
        if (r == 0.0) return 0.0;
        if (log_kernel) return -scale_log() * std::log(r);
        double v = scale * std::pow(r, alpha - double(dim));
        if (angular == Angular::component) v *= off[size_t(component)] / r;
        return v;
    }

    double scale_log() const { return 1.0 / (2.0 * kPi); }

    /// Analytic kernel integral over the equal-volume disk/ball of one cell.
    double self_cell_integral(double cell_volume) const {
        if (angular == Angular::component) return 0.0;  // odd symmetry
        if (log_kernel) {
            double rho = std::sqrt(cell_volume / kPi);
            return -(rho * rho / 2.0) * std::log(rho) + rho * rho / 4.0;
        }
        double rho = (dim == 2) ? std::sqrt(cell_volume / kPi)
                                : std::cbrt(3.0 * cell_volume / (4.0 * kPi));
        return scale * unit_sphere_area(dim) * std::pow(rho, alpha) / alpha;
    }
};

/// theta(x) = C(|x|/2) - C(|x|) with C a smooth 1 -> 0 step on [1, 2]:
/// supported in 1 < |x| < 4 and sum_j theta(2^-j x) telescopes to 1.
double theta_bump(double r);

/// sum_{k=kmin}^{kmax} theta(r / 2^k)
double theta_partition_sum(double r, int kmin, int kmax);

/// Dyadic shell family tau_j = delta 2^j covering pair distances of a grid;
/// each piece of the kernel is supported in tau_j < |x| < 4 tau_j.
struct DyadicKernelSplit {
    double delta = 1.0;
    int j_min = 0, j_max = 0;

    double tau(int j) const { return delta * std::pow(2.0, j); }

    /// Window so that the partition sums to 1 on [r_lo, r_hi]:
    /// tau_{j_min} <= r_lo / 2 and tau_{j_max} >= r_hi / 2.
    static DyadicKernelSplit for_range(double delta, double r_lo, double r_hi);

    /// max |sum_j theta(r / tau_j) - 1| over sampled radii in [r_lo, r_hi]
    double partition_residual(double r_lo, double r_hi, int samples = 2000) const;
};

/// Cell-integral table of the kernel: analytic at the self cell, Gauss cell
/// averages on near offsets, midpoint beyond. Shared by the direct and dyadic
/// evaluation modes so the dyadic sum resums the direct one exactly.
OffsetTable kernel_cell_table(const RieszKernel& kernel, const Grid& g, int near_cells = 4);

}  // namespace hal
