#include "hal/norms.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "hal/fft_conv.hpp"
#include "hal/maximal.hpp"
#include "hal/poisson.hpp"

namespace hal {

std::string to_string(NormKind k) {
    switch (k) {
        case NormKind::Lp: return "Lp";
        case NormKind::WeakLp: return "WeakLp";
        case NormKind::Morrey: return "Morrey";
        case NormKind::WeakMorrey: return "WeakMorrey";
        case NormKind::Campanato: return "Campanato";
        case NormKind::Holder: return "Holder";
        case NormKind::Hminus1: return "Hminus1";
        case NormKind::Hardy: return "Hardy";
        case NormKind::LocalHardy: return "LocalHardy";
    }
    return "?";
}

MorreyParams MorreyParams::make(const Grid& g, double p, double beta, int coarsest_j) {
    MorreyParams mp;
    mp.p = p;
    mp.beta = beta;
    mp.radii = default_radius_scan(g, coarsest_j);
    return mp;
}

std::vector<std::array<double, 3>> MorreyParams::stride_centers(const Grid& g, const Ball& region, int stride) {
    std::vector<std::array<double, 3>> centers;
    const int nk = (g.dim == 3) ? g.shape[2] : 1;
    for (int i = 0; i < g.shape[0]; i += stride)
        for (int j = 0; j < g.shape[1]; j += stride)
            for (int k = 0; k < nk; k += (g.dim == 3 ? stride : 1)) {
                auto p = g.point(i, j, k);
                if (dist(p, region.center, g.dim) <= region.radius) centers.push_back(p);
            }
    return centers;
}

namespace {

ScalarField region_weight(const Grid& g, const Ball& region) {
    ScalarField w(g);
    const double h = g.min_spacing();
    for (size_t idx = 0; idx < g.size(); ++idx)
        w.values[idx] = ball_node_fraction(dist(g.point(idx), region.center, g.dim), region.radius, h);
    return w;
}

OffsetTable ball_table(const Grid& g, double radius) {
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

void validate_pb(double p, double beta, int dim, double beta_cap) {
    if (p < 1.0) throw std::invalid_argument("norm: p must be >= 1");
    if (beta < 0.0 || beta > beta_cap)
        throw std::invalid_argument("norm: beta out of range [0, " + std::to_string(beta_cap) +
                                    "] for dim " + std::to_string(dim));
}

}  // namespace

NormReport morrey_norm(const ScalarField& g, const MorreyParams& params, const Ball& region) {
    g.check();
    const Grid& grid = g.grid;
    validate_pb(params.p, params.beta, grid.dim, double(grid.dim));  // beta > n: space is {0}
    std::vector<double> radii = params.radii.empty() ? default_radius_scan(grid) : params.radii;

    NormReport rep;
    rep.kind = NormKind::Morrey;
    rep.p = params.p;
    rep.beta = params.beta;

    ScalarField wO = region_weight(grid, region);
    double best = 0.0;

    if (params.centers.empty()) {
        // every in-region node as center, one convolution per radius
        ScalarField gp(grid);
        for (size_t i = 0; i < gp.values.size(); ++i)
            gp.values[i] = std::pow(std::abs(g.values[i]), params.p) * wO.values[i];
        for (double r : radii) {
            ScalarField sums = convolve(gp, ball_table(grid, r), ConvMode::automatic);
            double w = std::pow(r, -params.beta);
            double bestAtR = 0.0;
            size_t bestIdx = 0;
            for (size_t i = 0; i < sums.values.size(); ++i) {
                if (wO.values[i] < 0.5) continue;  // centers inside the region
                double v = w * sums.values[i];
                if (v > bestAtR) {
                    bestAtR = v;
                    bestIdx = i;
                }
            }
            rep.scan_table.emplace_back(r, bestAtR);
            if (bestAtR > best) {
                best = bestAtR;
                rep.witness.center = grid.point(bestIdx);
                rep.witness.radius_or_scale = r;
            }
        }
    } else {
        for (double r : radii) {
            double w = std::pow(r, -params.beta);
            double bestAtR = 0.0;
            for (const auto& c : params.centers) {
                double acc = 0.0;
                for_ball_nodes(grid, Ball{c, r}, [&](size_t idx, double wq) {
                    acc += wq * wO.values[idx] * std::pow(std::abs(g.values[idx]), params.p);
                });
                double v = w * acc;
                if (v > bestAtR) bestAtR = v;
                if (v > best) {
                    best = v;
                    rep.witness.center = c;
                    rep.witness.radius_or_scale = r;
                }
            }
            rep.scan_table.emplace_back(r, bestAtR);
        }
    }
    rep.value = std::pow(best, 1.0 / params.p);
    return rep;
}

namespace {

/// weak-L^p of the weighted sample set {(|values|, weights)}.
double weak_lp_of_samples(std::vector<std::pair<double, double>>& samples, double p, double floor_measure) {
    if (samples.empty()) return 0.0;
    std::sort(samples.begin(), samples.end(),
              [](const auto& a, const auto& b) { return a.first > b.first; });
    double cum = 0.0, best = 0.0, total = 0.0;
    for (const auto& s : samples) total += s.second;
    for (const auto& s : samples) {
        cum += s.second;
        if (cum < std::min(floor_measure, total)) continue;
        best = std::max(best, s.first * std::pow(cum, 1.0 / p));
    }
    return best;
}

}  // namespace

NormReport weak_lp_norm(const ScalarField& g, double p, const Ball& region, double min_measure_cells) {
    g.check();
    if (p < 1.0) throw std::invalid_argument("weak_lp_norm: p must be >= 1");
    std::vector<std::pair<double, double>> samples;
    for_ball_nodes(g.grid, region, [&](size_t idx, double w) {
        samples.emplace_back(std::abs(g.values[idx]), w);
    });
    if (samples.empty()) throw std::invalid_argument("weak_lp_norm: empty region");
    NormReport rep;
    rep.kind = NormKind::WeakLp;
    rep.p = p;
    rep.value = weak_lp_of_samples(samples, p, min_measure_cells * g.grid.cell_volume());
    return rep;
}

NormReport weak_morrey_norm(const ScalarField& g, const MorreyParams& params, const Ball& region) {
    g.check();
    const Grid& grid = g.grid;
    validate_pb(params.p, params.beta, grid.dim, double(grid.dim));
    std::vector<double> radii = params.radii.empty() ? default_radius_scan(grid) : params.radii;
    std::vector<std::array<double, 3>> centers =
        params.centers.empty() ? MorreyParams::stride_centers(grid, region, std::max(1, grid.shape[0] / 16))
                               : params.centers;
    ScalarField wO = region_weight(grid, region);

    NormReport rep;
    rep.kind = NormKind::WeakMorrey;
    rep.p = params.p;
    rep.beta = params.beta;
    const double floor_measure = 8.0 * grid.cell_volume();  // small balls saturate via min(floor, total)
    for (double r : radii) {
        double w = std::pow(r, -params.beta / params.p);
        double bestAtR = 0.0;
        for (const auto& c : centers) {
            std::vector<std::pair<double, double>> samples;
            for_ball_nodes(grid, Ball{c, r}, [&](size_t idx, double wq) {
                double ww = wq * wO.values[idx];
                if (ww > 0.0) samples.emplace_back(std::abs(g.values[idx]), ww);
            });
            if (samples.empty()) continue;
            double v = w * weak_lp_of_samples(samples, params.p, floor_measure);
            if (v > bestAtR) bestAtR = v;
            if (v > rep.value) {
                rep.value = v;
                rep.witness.center = c;
                rep.witness.radius_or_scale = r;
            }
        }
        rep.scan_table.emplace_back(r, bestAtR);
    }
    return rep;
}

NormReport campanato_seminorm(const ScalarField& g, const MorreyParams& params, const Ball& region) {
    g.check();
    const Grid& grid = g.grid;
    if (params.p < 1.0) throw std::invalid_argument("campanato: p must be >= 1");
    if (params.beta > double(grid.dim) + params.p)
        throw std::invalid_argument("campanato: beta > n + p admits only constants");
    std::vector<double> radii = params.radii.empty() ? default_radius_scan(grid) : params.radii;
    std::vector<std::array<double, 3>> centers =
        params.centers.empty() ? MorreyParams::stride_centers(grid, region, std::max(1, grid.shape[0] / 16))
                               : params.centers;
    ScalarField wO = region_weight(grid, region);

    NormReport rep;
    rep.kind = NormKind::Campanato;
    rep.p = params.p;
    rep.beta = params.beta;
    for (double r : radii) {
        double bestAtR = 0.0;
        for (const auto& c : centers) {
            double mass = 0.0, mean = 0.0;
            for_ball_nodes(grid, Ball{c, r}, [&](size_t idx, double wq) {
                double ww = wq * wO.values[idx];
                mass += ww;
                mean += ww * g.values[idx];
            });
            if (mass <= 0.0) continue;
            mean /= mass;
            double osc = 0.0;
            for_ball_nodes(grid, Ball{c, r}, [&](size_t idx, double wq) {
                osc += wq * wO.values[idx] * std::pow(std::abs(g.values[idx] - mean), params.p);
            });
            double v = std::pow(std::pow(r, -params.beta) * osc, 1.0 / params.p);
            bestAtR = std::max(bestAtR, v);
            if (v > rep.value) {
                rep.value = v;
                rep.witness.center = c;
                rep.witness.radius_or_scale = r;
            }
        }
        rep.scan_table.emplace_back(r, bestAtR);
    }
    return rep;
}

NormReport holder_seminorm(const ScalarField& g, double gamma, const Ball& region) {
    g.check();
    if (!(gamma > 0.0 && gamma <= 1.0)) throw std::invalid_argument("holder_seminorm: gamma in (0,1]");
    const Grid& grid = g.grid;
    std::vector<size_t> nodes;
    for_ball_nodes(grid, region, [&](size_t idx, double) { nodes.push_back(idx); });
    if (nodes.size() < 2) throw std::invalid_argument("holder_seminorm: region holds < 2 nodes");

    NormReport rep;
    rep.kind = NormKind::Holder;
    rep.gamma = gamma;
    auto consider = [&](size_t a, size_t b) {
        if (a == b) return;
        double d = dist(grid.point(a), grid.point(b), grid.dim);
        double v = std::abs(g.values[a] - g.values[b]) / std::pow(d, gamma);
        if (v > rep.value) {
            rep.value = v;
            rep.witness.center = grid.point(a);
            rep.witness.radius_or_scale = d;
        }
    };
    if (nodes.size() <= 4096) {
        for (size_t a = 0; a < nodes.size(); ++a)
            for (size_t b = a + 1; b < nodes.size(); ++b) consider(nodes[a], nodes[b]);
    } else {
        std::mt19937_64 rng(0x9e3779b97f4a7c15ull);
        std::uniform_int_distribution<size_t> pick(0, nodes.size() - 1);
        for (int it = 0; it < 1000000; ++it) consider(nodes[pick(rng)], nodes[pick(rng)]);
    }
    return rep;
}

NormReport h_minus1_norm(const ScalarField& g, const Ball& region, double tol, int max_iter) {
    g.check();
    PoissonProblem prob;
    prob.rhs = g;
    prob.region = region;
    prob.tolerance = tol;
    prob.max_iterations = max_iter;
    PoissonResult sol = solve_dirichlet(prob);
    // <w, g> over the region equals the discrete Dirichlet energy exactly
    double acc = 0.0;
    for (size_t i = 0; i < g.values.size(); ++i) acc += sol.u.values[i] * g.values[i];
    acc *= g.grid.cell_volume();
    NormReport rep;
    rep.kind = NormKind::Hminus1;
    rep.value = std::sqrt(std::max(0.0, acc));
    rep.extra["iterations"] = double(sol.iterations);
    rep.extra["residual"] = sol.residual;
    return rep;
}

NormReport lp_norm_report(const ScalarField& g, double p, const Ball& region) {
    NormReport rep;
    rep.kind = NormKind::Lp;
    rep.p = p;
    rep.value = lp_norm(g, p, region);
    return rep;
}

}  // namespace hal
