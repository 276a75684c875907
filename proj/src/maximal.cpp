#include "hal/maximal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hal/parallel.hpp"

namespace hal {

std::vector<double> default_radius_scan(const Grid& g, int coarsest_j) {
    std::vector<double> radii;
    const double rmin = 3.0 * g.min_spacing();
    for (int j = coarsest_j;; ++j) {
        double r = std::pow(2.0, -j);
        if (r < rmin) break;
        radii.push_back(r);
    }
    if (radii.empty()) throw std::invalid_argument("default_radius_scan: grid too coarse");
    return radii;
}

namespace {

OffsetTable ball_weight_table(const Grid& g, double radius) {
    const double h = g.min_spacing();
    const double vol = g.cell_volume();
    std::array<int, 3> extent{0, 0, 0};
    for (int d = 0; d < g.dim; ++d)
        extent[size_t(d)] = std::min(g.shape[size_t(d)] - 1, int(std::ceil((radius + h) / g.spacing[size_t(d)])));
    return OffsetTable::build(g, extent, [&](const std::array<double, 3>& off) {
        double r = std::sqrt(sqr(off[0]) + sqr(off[1]) + sqr(off[2]));
        return vol * ball_node_fraction(r, radius, h);
    });
}

OffsetTable mollifier_table(const Grid& g, const Mollifier& moll, double t) {
    const double vol = g.cell_volume();
    std::array<int, 3> extent{0, 0, 0};
    for (int d = 0; d < g.dim; ++d)
        extent[size_t(d)] = std::min(g.shape[size_t(d)] - 1, int(std::ceil(t / g.spacing[size_t(d)])) + 1);
    return OffsetTable::build(g, extent, [&](const std::array<double, 3>& off) {
        double r = std::sqrt(sqr(off[0]) + sqr(off[1]) + sqr(off[2]));
        return vol * moll.phi_t(r, t);
    });
}

/// Convolution with phi_t for t under a few cells: polar quadrature through
/// the multilinear interpolant, so the small-scale limit reproduces g itself
/// (times the mollifier mass) instead of a spiky discrete kernel.
ScalarField small_scale_convolution(const ScalarField& g, const Mollifier& moll, double t) {
    const Grid& grid = g.grid;
    ScalarField out(grid);
    std::vector<double> gx, gw;
    detail::gauss_legendre_01(6, gx, gw);
    const int nang = 12;
    parallel_for_chunks(grid.size(), [&](size_t b, size_t e) {
        for (size_t idx = b; idx < e; ++idx) {
            auto p = grid.point(idx);
            double acc = 0.0;
            if (grid.dim == 2) {
                for (size_t ir = 0; ir < gx.size(); ++ir) {
                    double rho = t * gx[ir];
                    double ring = 0.0;
                    for (int ia = 0; ia < nang; ++ia) {
                        double th = 2.0 * kPi * (double(ia) + 0.5) / double(nang);
                        std::array<double, 3> q{p[0] + rho * std::cos(th), p[1] + rho * std::sin(th), 0.0};
                        if (!grid.contains(q)) continue;
                        ring += interpolate(g, q);
                    }
                    acc += gw[ir] * t * moll.phi_t(rho, t) * rho * ring * 2.0 * kPi / double(nang);
                }
            } else {
                std::vector<double> cx, cw;
                detail::gauss_legendre_01(4, cx, cw);
                const int nphi = 8;
                for (size_t ir = 0; ir < gx.size(); ++ir) {
                    double rho = t * gx[ir];
                    double shell = 0.0;
                    for (size_t ic = 0; ic < cx.size(); ++ic) {
                        double ct = 2.0 * cx[ic] - 1.0;
                        double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
                        for (int ip = 0; ip < nphi; ++ip) {
                            double ph = 2.0 * kPi * (double(ip) + 0.5) / double(nphi);
                            std::array<double, 3> q{p[0] + rho * st * std::cos(ph),
                                                    p[1] + rho * st * std::sin(ph), p[2] + rho * ct};
                            if (!grid.contains(q)) continue;
                            shell += cw[ic] * 2.0 * (2.0 * kPi / double(nphi)) * interpolate(g, q);
                        }
                    }
                    acc += gw[ir] * t * moll.phi_t(rho, t) * rho * rho * shell;
                }
            }
            out.values[idx] = acc;
        }
    });
    return out;
}

}  // namespace

MaximalField fractional_maximal(const ScalarField& g, double beta, std::vector<double> radii, ConvMode mode) {
    g.check();
    const Grid& grid = g.grid;
    if (beta < 0.0 || beta > double(grid.dim))
        throw std::invalid_argument("fractional_maximal: beta must lie in [0, n]");
    if (radii.empty()) radii = default_radius_scan(grid);

    ScalarField absg(grid);
    for (size_t i = 0; i < absg.values.size(); ++i) absg.values[i] = std::abs(g.values[i]);

    MaximalField out;
    out.values = ScalarField(grid, 0.0);
    out.witness.assign(grid.size(), 0.0f);
    for (double r : radii) {
        ScalarField sum = convolve(absg, ball_weight_table(grid, r), mode);
        const double w = std::pow(r, -beta);
        for (size_t i = 0; i < sum.values.size(); ++i) {
            double v = w * sum.values[i];
            if (v > out.values.values[i]) {
                out.values.values[i] = v;
                out.witness[i] = float(r);
            }
        }
    }
    out.check();
    return out;
}

MaximalField smooth_maximal(const ScalarField& g, const Mollifier& moll, bool local, ConvMode mode) {
    g.check();
    const Grid& grid = g.grid;
    std::vector<double> scales;
    for (double t : moll.scales)
        if (!local || t < 1.0) scales.push_back(t);
    if (scales.empty()) throw std::invalid_argument("smooth_maximal: empty scale list");

    const double h = grid.min_spacing();
    MaximalField out;
    out.values = ScalarField(grid, 0.0);
    out.witness.assign(grid.size(), 0.0f);
    for (double t : scales) {
        ScalarField conv = (t < 4.0 * h) ? small_scale_convolution(g, moll, t)
                                         : convolve(g, mollifier_table(grid, moll, t), mode);
        for (size_t i = 0; i < conv.values.size(); ++i) {
            double v = std::abs(conv.values[i]);
            if (v > out.values.values[i]) {
                out.values.values[i] = v;
                out.witness[i] = float(t);
            }
        }
    }
    out.check();
    return out;
}

namespace {

// Analytic acknowledgment of the mass the box integral misses: off-box decay
// of the maximal function plus scan scales beyond scale_max. Cancellation
// gives |phi_t * g(x)| <= Lip(phi) t^{-n-1} diam ||g||_1 for mean-zero g;
// without cancellation the global tail is log-divergent in n=2.
void attach_tail_bound(HardyReport& rep, const Grid& grid, const Mollifier& moll, double l1, double diam,
                       double margin, bool local) {
    const bool mean_zero = std::abs(rep.mean) <= 1e-10 * std::max(l1, 1e-300);
    double boxVol = 1.0;
    for (int d = 0; d < grid.dim; ++d) boxVol *= grid.axis_max(d) - grid.origin[size_t(d)];
    if (local && rep.scale_max <= margin) {
        rep.tail_bound = 0.0;  // every scanned scale fits inside the margin
        rep.tail_divergent = false;
        return;
    }
    if (!mean_zero) {
        rep.tail_divergent = true;
        rep.tail_bound = std::numeric_limits<double>::infinity();
        return;
    }
    const double c = moll.lipschitz * diam * l1;
    const int n = grid.dim;
    rep.tail_bound = c * unit_sphere_area(n) / margin * (n == 2 ? 1.0 : 0.5);
    rep.tail_bound += boxVol * c * std::pow(rep.scale_max, -double(n) - 1.0);
    rep.tail_divergent = false;
}

HardyReport hardy_impl(const ScalarField& g, const Mollifier& moll, bool local) {
    g.check();
    const Grid& grid = g.grid;

    // support bounding box and margin to the grid box
    double maxAbs = 0.0;
    for (double v : g.values) maxAbs = std::max(maxAbs, std::abs(v));
    const double cut = 1e-13 * maxAbs;
    double margin = std::numeric_limits<double>::infinity();
    std::array<double, 3> supLo{1e300, 1e300, 1e300}, supHi{-1e300, -1e300, -1e300};
    for (size_t idx = 0; idx < grid.size(); ++idx) {
        if (std::abs(g.values[idx]) <= cut) continue;
        auto p = grid.point(idx);
        for (int d = 0; d < grid.dim; ++d) {
            supLo[size_t(d)] = std::min(supLo[size_t(d)], p[size_t(d)]);
            supHi[size_t(d)] = std::max(supHi[size_t(d)], p[size_t(d)]);
        }
    }
    double l1 = 0.0, mean = 0.0;
    for (double v : g.values) {
        l1 += std::abs(v);
        mean += v;
    }
    l1 *= grid.cell_volume();
    mean *= grid.cell_volume();
    if (l1 == 0.0) return HardyReport{};

    double diam = 0.0;
    for (int d = 0; d < grid.dim; ++d) {
        margin = std::min(margin, supLo[size_t(d)] - grid.origin[size_t(d)]);
        margin = std::min(margin, grid.axis_max(d) - supHi[size_t(d)]);
        diam += sqr(supHi[size_t(d)] - supLo[size_t(d)]);
    }
    diam = std::sqrt(diam);

    std::vector<double> scales;
    for (double t : moll.scales)
        if (!local || t < 1.0) scales.push_back(t);
    if (scales.empty()) throw std::invalid_argument("hardy_norm: empty scale list");
    const double tmax = *std::max_element(scales.begin(), scales.end());
    if (tmax > margin)
        throw std::invalid_argument("hardy_norm: support margin smaller than the largest scale (tail would be truncated)");

    MaximalField mf = smooth_maximal(g, moll, local);
    HardyReport rep;
    rep.value = integrate_box(mf.values);
    rep.mean = mean;
    rep.scale_min = *std::min_element(scales.begin(), scales.end());
    rep.scale_max = tmax;
    attach_tail_bound(rep, grid, moll, l1, diam, margin, local);
    return rep;
}

}  // namespace

HardyReport hardy_norm(const ScalarField& g, const Mollifier& moll) { return hardy_impl(g, moll, false); }
HardyReport local_hardy_norm(const ScalarField& g, const Mollifier& moll) { return hardy_impl(g, moll, true); }

}  // namespace hal
