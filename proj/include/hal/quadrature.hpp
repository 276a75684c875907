#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "hal/field.hpp"

namespace hal {

/// Ball region B_r(center); the workhorse integration region of the library.
struct Ball {
    std::array<double, 3> center{0.0, 0.0, 0.0};
    double radius = 1.0;

    static Ball unit() { return Ball{{0.0, 0.0, 0.0}, 1.0}; }
};

/// Partial-cell weight of a node at distance d from the ball center: the
/// fraction of the node's distance band [d - h/2, d + h/2] lying inside the
/// ball. First order at the boundary; this is the dominant quadrature error.
inline double ball_node_fraction(double d, double radius, double h) {
    return std::clamp((radius - d) / h + 0.5, 0.0, 1.0);
}

/// Iterate nodes of the grid whose partial-cell ball weight is nonzero,
/// calling fn(index, weight) with weight = cell_volume * fraction.
template <typename Fn>
inline void for_ball_nodes(const Grid& g, const Ball& ball, Fn&& fn) {
    const double h = g.min_spacing();
    const double vol = g.cell_volume();
    int lo[3] = {0, 0, 0}, hi[3] = {0, 0, 0};
    for (int d = 0; d < g.dim; ++d) {
        double a = (ball.center[size_t(d)] - ball.radius - h - g.origin[size_t(d)]) / g.spacing[size_t(d)];
        double b = (ball.center[size_t(d)] + ball.radius + h - g.origin[size_t(d)]) / g.spacing[size_t(d)];
        lo[d] = std::max(0, int(std::floor(a)));
        hi[d] = std::min(g.shape[size_t(d)] - 1, int(std::ceil(b)));
        if (lo[d] > hi[d]) return;  // empty intersection
    }
    const int kmax = (g.dim == 3) ? hi[2] : 0;
    const int kmin = (g.dim == 3) ? lo[2] : 0;
    for (int i = lo[0]; i <= hi[0]; ++i)
        for (int j = lo[1]; j <= hi[1]; ++j)
            for (int k = kmin; k <= kmax; ++k) {
                auto p = g.point(i, j, k);
                double d2 = 0.0;
                for (int d = 0; d < g.dim; ++d) d2 += sqr(p[size_t(d)] - ball.center[size_t(d)]);
                double w = ball_node_fraction(std::sqrt(d2), ball.radius, h);
                if (w > 0.0) fn(g.index(i, j, k), vol * w);
            }
}

/// Node-indicator quadrature of f over ball (intersected with the grid box).
/// Empty intersection integrates to 0.
inline double integrate(const ScalarField& f, const Ball& ball) {
    double acc = 0.0;
    for_ball_nodes(f.grid, ball, [&](size_t idx, double w) { acc += w * f.values[idx]; });
    return acc;
}

/// Quadrature of f over the whole grid box (midpoint rule).
inline double integrate_box(const ScalarField& f) {
    double acc = 0.0;
    for (double v : f.values) acc += v;
    return acc * f.grid.cell_volume();
}

namespace detail {
/// Gauss-Legendre nodes/weights on [0, 1], computed by Newton iteration.
inline void gauss_legendre_01(int n, std::vector<double>& x, std::vector<double>& w) {
    x.assign(size_t(n), 0.0);
    w.assign(size_t(n), 0.0);
    for (int i = 0; i < n; ++i) {
        double t = std::cos(kPi * (double(i) + 0.75) / (double(n) + 0.5));
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = t;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / double(k);
                p0 = p1;
                p1 = p2;
            }
            double dp = double(n) * (t * p1 - p0) / (t * t - 1.0);
            double dt = p1 / dp;
            t -= dt;
            if (std::abs(dt) < 1e-15) break;
        }
        double p0 = 1.0, p1 = t;
        for (int k = 2; k <= n; ++k) {
            double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / double(k);
            p0 = p1;
            p1 = p2;
        }
        double dp = double(n) * (t * p1 - p0) / (t * t - 1.0);
        x[size_t(i)] = 0.5 * (t + 1.0);
        w[size_t(i)] = 1.0 / ((1.0 - t * t) * dp * dp);
    }
}
}  // namespace detail

/// Ball quadrature through the multilinear interpolant in polar/spherical
/// coordinates: Gauss-Legendre radially, trapezoid in angle. Error is driven
/// by the interpolation (O(h^2)) rather than by the staircase boundary; used
/// where ball integrals of smooth fields need uniform relative accuracy.
inline double integrate_ball_interp(const ScalarField& f, const Ball& ball, int nr = 24, int nang = 48) {
    const Grid& g = f.grid;
    std::vector<double> gx, gw;
    detail::gauss_legendre_01(nr, gx, gw);
    double acc = 0.0;
    if (g.dim == 2) {
        for (int ir = 0; ir < nr; ++ir) {
            const double rho = ball.radius * gx[size_t(ir)];
            double ring = 0.0;
            for (int ia = 0; ia < nang; ++ia) {
                double th = 2.0 * kPi * double(ia) / double(nang);
                std::array<double, 3> p{ball.center[0] + rho * std::cos(th),
                                        ball.center[1] + rho * std::sin(th), 0.0};
                ring += interpolate(f, p);
            }
            ring *= 2.0 * kPi / double(nang);
            acc += gw[size_t(ir)] * ball.radius * rho * ring;
        }
    } else {
        // spherical: trapezoid in azimuth, Gauss in cos(polar) and radius
        std::vector<double> cx, cw;
        detail::gauss_legendre_01(std::max(8, nang / 4), cx, cw);
        const int nphi = nang;
        for (int ir = 0; ir < nr; ++ir) {
            const double rho = ball.radius * gx[size_t(ir)];
            double shell = 0.0;
            for (size_t ic = 0; ic < cx.size(); ++ic) {
                double ct = 2.0 * cx[ic] - 1.0;
                double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
                double band = 0.0;
                for (int ip = 0; ip < nphi; ++ip) {
                    double ph = 2.0 * kPi * double(ip) / double(nphi);
                    std::array<double, 3> p{ball.center[0] + rho * st * std::cos(ph),
                                            ball.center[1] + rho * st * std::sin(ph),
                                            ball.center[2] + rho * ct};
                    band += interpolate(f, p);
                }
                shell += cw[ic] * 2.0 * (2.0 * kPi / double(nphi)) * band;
            }
            acc += gw[size_t(ir)] * ball.radius * rho * rho * shell;
        }
    }
    return acc;
}

/// (integral over ball of |f|^p)^{1/p} with node-indicator weights.
inline double lp_norm(const ScalarField& f, double p, const Ball& ball) {
    double acc = 0.0;
    for_ball_nodes(f.grid, ball, [&](size_t idx, double w) { acc += w * std::pow(std::abs(f.values[idx]), p); });
    return std::pow(acc, 1.0 / p);
}

inline double l2_norm_box(const ScalarField& f) {
    double acc = 0.0;
    for (double v : f.values) acc += v * v;
    return std::sqrt(acc * f.grid.cell_volume());
}

}  // namespace hal
