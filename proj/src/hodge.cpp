#include "hal/hodge.hpp"

#include <cmath>

#include "hal/poisson.hpp"

namespace hal {

namespace {

// Staggered layout on an nx x ny node grid:
//   x-edges (i,j), i < nx-1: midpoint between nodes (i,j) and (i+1,j)
//   y-edges (i,j), j < ny-1: midpoint between nodes (i,j) and (i,j+1)
//   cells   (i,j), i < nx-1, j < ny-1: cell centers
struct Mac {
    const Grid* g;
    int nx, ny;
    double hx, hy;
    std::vector<double> ex, ey;  // edge data
    std::vector<char> exAlive, eyAlive;

    size_t exSize() const { return size_t(nx - 1) * size_t(ny); }
    size_t eySize() const { return size_t(nx) * size_t(ny - 1); }
    size_t exI(int i, int j) const { return size_t(i) * size_t(ny) + size_t(j); }
    size_t eyI(int i, int j) const { return size_t(i) * size_t(ny - 1) + size_t(j); }
    size_t cI(int i, int j) const { return size_t(i) * size_t(ny - 1) + size_t(j); }
    size_t nI(int i, int j) const { return size_t(i) * size_t(ny) + size_t(j); }

    std::array<double, 2> exCenter(int i, int j) const {
        return {g->origin[0] + hx * (i + 0.5), g->origin[1] + hy * j};
    }
    std::array<double, 2> eyCenter(int i, int j) const {
        return {g->origin[0] + hx * i, g->origin[1] + hy * (j + 0.5)};
    }
    std::array<double, 2> cCenter(int i, int j) const {
        return {g->origin[0] + hx * (i + 0.5), g->origin[1] + hy * (j + 0.5)};
    }
};

double dist2d(const std::array<double, 2>& p, const std::array<double, 3>& c) {
    return std::sqrt(sqr(p[0] - c[0]) + sqr(p[1] - c[1]));
}

// grad: node scalars -> edges (zero-padded outside alive nodes is the caller's concern)
void apply_grad(const Mac& m, const std::vector<double>& a, std::vector<double>& ex, std::vector<double>& ey) {
    for (int i = 0; i < m.nx - 1; ++i)
        for (int j = 0; j < m.ny; ++j) ex[m.exI(i, j)] = (a[m.nI(i + 1, j)] - a[m.nI(i, j)]) / m.hx;
    for (int i = 0; i < m.nx; ++i)
        for (int j = 0; j < m.ny - 1; ++j) ey[m.eyI(i, j)] = (a[m.nI(i, j + 1)] - a[m.nI(i, j)]) / m.hy;
}

// adjoint of grad: edges -> node scalars
void apply_grad_t(const Mac& m, const std::vector<double>& ex, const std::vector<double>& ey,
                  std::vector<double>& out) {
    for (int i = 0; i < m.nx; ++i)
        for (int j = 0; j < m.ny; ++j) {
            double acc = 0.0;
            if (i > 0) acc += ex[m.exI(i - 1, j)] / m.hx;
            if (i < m.nx - 1) acc -= ex[m.exI(i, j)] / m.hx;
            if (j > 0) acc += ey[m.eyI(i, j - 1)] / m.hy;
            if (j < m.ny - 1) acc -= ey[m.eyI(i, j)] / m.hy;
            out[m.nI(i, j)] = acc;
        }
}

// coexact map: cell scalars B -> edges, (CB)_x = dB/dy, (CB)_y = -dB/dx
void apply_perp(const Mac& m, const std::vector<double>& B, std::vector<double>& ex, std::vector<double>& ey) {
    for (int i = 0; i < m.nx - 1; ++i)
        for (int j = 0; j < m.ny; ++j) {
            double above = (j < m.ny - 1) ? B[m.cI(i, j)] : 0.0;
            double below = (j > 0) ? B[m.cI(i, j - 1)] : 0.0;
            ex[m.exI(i, j)] = (above - below) / m.hy;
        }
    for (int i = 0; i < m.nx; ++i)
        for (int j = 0; j < m.ny - 1; ++j) {
            double right = (i < m.nx - 1) ? B[m.cI(i, j)] : 0.0;
            double left = (i > 0) ? B[m.cI(i - 1, j)] : 0.0;
            ey[m.eyI(i, j)] = -(right - left) / m.hx;
        }
}

void apply_perp_t(const Mac& m, const std::vector<double>& ex, const std::vector<double>& ey,
                  std::vector<double>& out) {
    for (int i = 0; i < m.nx - 1; ++i)
        for (int j = 0; j < m.ny - 1; ++j) {
            double acc = 0.0;
            acc += ex[m.exI(i, j)] / m.hy;
            acc -= ex[m.exI(i, j + 1)] / m.hy;
            acc -= ey[m.eyI(i, j)] / m.hx;
            acc += ey[m.eyI(i + 1, j)] / m.hx;
            out[m.cI(i, j)] = acc;
        }
}

struct CgOutcome {
    int iterations = 0;
    double residual = 0.0;
};

// CG on the normal equations over the alive index subset of a dense layout.
template <typename ApplyFn>
CgOutcome cg_masked(const std::vector<size_t>& alive, size_t denseSize, ApplyFn&& apply,
                    const std::vector<double>& rhs, std::vector<double>& x, double tol, int maxIter) {
    std::vector<double> r(denseSize, 0.0), p(denseSize, 0.0), Ap(denseSize, 0.0);
    x.assign(denseSize, 0.0);
    double bnorm2 = 0.0;
    for (size_t idx : alive) {
        r[idx] = rhs[idx];
        p[idx] = rhs[idx];
        bnorm2 += rhs[idx] * rhs[idx];
    }
    CgOutcome out;
    if (bnorm2 == 0.0) return out;
    double rr = bnorm2;
    const double target2 = tol * tol * bnorm2;
    int it = 0;
    for (; it < maxIter && rr > target2; ++it) {
        apply(p, Ap);
        double pAp = 0.0;
        for (size_t idx : alive) pAp += p[idx] * Ap[idx];
        double alpha = rr / pAp;
        for (size_t idx : alive) {
            x[idx] += alpha * p[idx];
            r[idx] -= alpha * Ap[idx];
        }
        double rr2 = 0.0;
        for (size_t idx : alive) rr2 += r[idx] * r[idx];
        double beta = rr2 / rr;
        rr = rr2;
        for (size_t idx : alive) p[idx] = r[idx] + beta * p[idx];
    }
    out.iterations = it;
    out.residual = std::sqrt(rr / bnorm2);
    if (rr > target2) throw SolveFailure(out.residual);
    return out;
}

ScalarField average_x_edges(const Mac& m, const std::vector<double>& ex) {
    ScalarField out(*m.g);
    for (int i = 0; i < m.nx; ++i)
        for (int j = 0; j < m.ny; ++j) {
            double acc = 0.0;
            int cnt = 0;
            if (i > 0) { acc += ex[m.exI(i - 1, j)]; ++cnt; }
            if (i < m.nx - 1) { acc += ex[m.exI(i, j)]; ++cnt; }
            out.at(i, j) = cnt ? acc / cnt : 0.0;
        }
    return out;
}

ScalarField average_y_edges(const Mac& m, const std::vector<double>& ey) {
    ScalarField out(*m.g);
    for (int i = 0; i < m.nx; ++i)
        for (int j = 0; j < m.ny; ++j) {
            double acc = 0.0;
            int cnt = 0;
            if (j > 0) { acc += ey[m.eyI(i, j - 1)]; ++cnt; }
            if (j < m.ny - 1) { acc += ey[m.eyI(i, j)]; ++cnt; }
            out.at(i, j) = cnt ? acc / cnt : 0.0;
        }
    return out;
}

}  // namespace

HodgeDecomposition hodge_decompose(const FormField& omega, double tolerance, const Ball& region,
                                   int max_iterations) {
    omega.check();
    if (omega.grid.dim != 2 || omega.degree != 1)
        throw std::invalid_argument("hodge_decompose: needs a 1-form on a 2-d grid");
    const Grid& g = omega.grid;
    Mac m;
    m.g = &g;
    m.nx = g.shape[0];
    m.ny = g.shape[1];
    m.hx = g.spacing[0];
    m.hy = g.spacing[1];

    // node set S = nodes inside the region; the edge mask keeps edges with
    // both endpoints in S, unknowns keep full neighborhoods. Constants then
    // produce exactly zero right-hand sides (row/circulation telescoping).
    std::vector<char> inS(size_t(m.nx) * size_t(m.ny), 0);
    for (int i = 0; i < m.nx; ++i)
        for (int j = 0; j < m.ny; ++j)
            if (dist2d({g.origin[0] + m.hx * i, g.origin[1] + m.hy * j}, region.center) < region.radius)
                inS[m.nI(i, j)] = 1;

    std::vector<double> wx(m.exSize(), 0.0), wy(m.eySize(), 0.0);
    const ScalarField& w1 = omega.components[0];
    const ScalarField& w2 = omega.components[1];
    for (int i = 0; i < m.nx - 1; ++i)
        for (int j = 0; j < m.ny; ++j)
            if (inS[m.nI(i, j)] && inS[m.nI(i + 1, j)])
                wx[m.exI(i, j)] = 0.5 * (w1.at(i, j) + w1.at(i + 1, j));
    for (int i = 0; i < m.nx; ++i)
        for (int j = 0; j < m.ny - 1; ++j)
            if (inS[m.nI(i, j)] && inS[m.nI(i, j + 1)])
                wy[m.eyI(i, j)] = 0.5 * (w2.at(i, j) + w2.at(i, j + 1));

    std::vector<size_t> aliveNodes, aliveCells;
    for (int i = 1; i < m.nx - 1; ++i)
        for (int j = 1; j < m.ny - 1; ++j) {
            if (!inS[m.nI(i, j)]) continue;
            if (inS[m.nI(i - 1, j)] && inS[m.nI(i + 1, j)] && inS[m.nI(i, j - 1)] && inS[m.nI(i, j + 1)])
                aliveNodes.push_back(m.nI(i, j));
        }
    for (int i = 0; i < m.nx - 1; ++i)
        for (int j = 0; j < m.ny - 1; ++j)
            if (inS[m.nI(i, j)] && inS[m.nI(i + 1, j)] && inS[m.nI(i, j + 1)] && inS[m.nI(i + 1, j + 1)])
                aliveCells.push_back(m.cI(i, j));

    const size_t nodeDense = size_t(m.nx) * size_t(m.ny);
    const size_t cellDense = size_t(m.nx - 1) * size_t(m.ny - 1);

    std::vector<double> exTmp(m.exSize()), eyTmp(m.eySize());

    // normal equations for the gradient part
    std::vector<double> rhsA(nodeDense, 0.0);
    apply_grad_t(m, wx, wy, rhsA);
    std::vector<double> a;
    auto applyA = [&](const std::vector<double>& x, std::vector<double>& y) {
        apply_grad(m, x, exTmp, eyTmp);
        apply_grad_t(m, exTmp, eyTmp, y);
    };
    CgOutcome outA = cg_masked(aliveNodes, nodeDense, applyA, rhsA, a, tolerance, max_iterations);

    // normal equations for the coexact part
    std::vector<double> rhsB(cellDense, 0.0);
    apply_perp_t(m, wx, wy, rhsB);
    std::vector<double> B;
    auto applyB = [&](const std::vector<double>& x, std::vector<double>& y) {
        apply_perp(m, x, exTmp, eyTmp);
        apply_perp_t(m, exTmp, eyTmp, y);
    };
    CgOutcome outB = cg_masked(aliveCells, cellDense, applyB, rhsB, B, tolerance, max_iterations);

    std::vector<double> dax(m.exSize()), day(m.eySize()), dbx(m.exSize()), dby(m.eySize());
    apply_grad(m, a, dax, day);
    apply_perp(m, B, dbx, dby);
    std::vector<double> hx(m.exSize()), hy(m.eySize());
    for (size_t i = 0; i < hx.size(); ++i) hx[i] = wx[i] - dax[i] - dbx[i];
    for (size_t i = 0; i < hy.size(); ++i) hy[i] = wy[i] - day[i] - dby[i];

    const double vol = m.hx * m.hy;
    auto dot = [&](const std::vector<double>& ax, const std::vector<double>& ay, const std::vector<double>& bx,
                   const std::vector<double>& by) {
        double acc = 0.0;
        for (size_t i = 0; i < ax.size(); ++i) acc += ax[i] * bx[i];
        for (size_t i = 0; i < ay.size(); ++i) acc += ay[i] * by[i];
        return acc * vol;
    };

    HodgeDecomposition dec;
    dec.norm2_omega = dot(wx, wy, wx, wy);
    dec.norm2_da = dot(dax, day, dax, day);
    dec.norm2_db = dot(dbx, dby, dbx, dby);
    dec.norm2_h = dot(hx, hy, hx, hy);
    const double scale = dec.norm2_omega > 0.0 ? dec.norm2_omega : 1.0;
    dec.orth_da_db_rel = dot(dax, day, dbx, dby) / scale;
    dec.orth_h_da_rel = dot(hx, hy, dax, day) / scale;
    dec.orth_h_db_rel = dot(hx, hy, dbx, dby) / scale;
    dec.pythagoras_defect_rel =
        std::abs(dec.norm2_omega - dec.norm2_da - dec.norm2_db - dec.norm2_h) / scale;
    dec.residual = std::max(outA.residual, outB.residual);
    dec.iterations_a = outA.iterations;
    dec.iterations_b = outB.iterations;

    // collocated outputs
    dec.a = ScalarField(g);
    for (int i = 0; i < m.nx; ++i)
        for (int j = 0; j < m.ny; ++j) dec.a.at(i, j) = a[m.nI(i, j)];
    dec.b = FormField(g, 2);
    for (int i = 0; i < m.nx; ++i)
        for (int j = 0; j < m.ny; ++j) {
            double acc = 0.0;
            int cnt = 0;
            for (int di = -1; di <= 0; ++di)
                for (int dj = -1; dj <= 0; ++dj) {
                    int ci = i + di, cj = j + dj;
                    if (ci >= 0 && ci < m.nx - 1 && cj >= 0 && cj < m.ny - 1) {
                        acc += B[m.cI(ci, cj)];
                        ++cnt;
                    }
                }
            dec.b.components[0].at(i, j) = cnt ? acc / cnt : 0.0;
        }
    dec.da = FormField(g, 1);
    dec.da.components[0] = average_x_edges(m, dax);
    dec.da.components[1] = average_y_edges(m, day);
    dec.dstar_b = FormField(g, 1);
    dec.dstar_b.components[0] = average_x_edges(m, dbx);
    dec.dstar_b.components[1] = average_y_edges(m, dby);

    dec.h = FormField(g, 1);
    for (int i = 0; i < m.nx; ++i)
        for (int j = 0; j < m.ny; ++j) {
            double inside = inS[m.nI(i, j)] ? 1.0 : 0.0;
            dec.h.components[0].at(i, j) =
                inside * w1.at(i, j) - dec.da.components[0].at(i, j) - dec.dstar_b.components[0].at(i, j);
            dec.h.components[1].at(i, j) =
                inside * w2.at(i, j) - dec.da.components[1].at(i, j) - dec.dstar_b.components[1].at(i, j);
        }
    return dec;
}

DecayTable harmonic_decay_check(const FormField& h, const std::array<double, 3>& center,
                                std::vector<double> radii, double screen_tol) {
    h.check();
    const Grid& g = h.grid;
    if (radii.empty())
        for (int j = 5; j >= 1; --j) radii.push_back(std::pow(2.0, -j));
    std::sort(radii.begin(), radii.end());
    const double rmax = radii.back();

    // harmonicity screen on the integration zone
    FormField dh = exterior_derivative(h);
    FormField delh = codifferential(h);
    double maxDeriv = 0.0, rms = 0.0;
    size_t cnt = 0;
    for (size_t idx = 0; idx < g.size(); ++idx) {
        if (dist(g.point(idx), center, g.dim) > rmax) continue;
        for (const auto& c : dh.components) maxDeriv = std::max(maxDeriv, std::abs(c.values[idx]));
        for (const auto& c : delh.components) maxDeriv = std::max(maxDeriv, std::abs(c.values[idx]));
        for (const auto& c : h.components) rms += sqr(c.values[idx]);
        ++cnt;
    }
    rms = std::sqrt(rms / double(std::max<size_t>(cnt, 1)));
    if (rms > 0.0 && maxDeriv * rmax / rms > screen_tol)
        throw std::invalid_argument("harmonic_decay_check: input fails the harmonicity screen");

    ScalarField mag2 = h.magnitude2();
    DecayTable table;
    for (double r : radii) {
        double v = integrate_ball_interp(mag2, Ball{center, r}) * std::pow(r, -double(g.dim));
        table.radii.push_back(r);
        table.values.push_back(v);
    }
    for (size_t i = 0; i + 1 < table.values.size(); ++i)
        if (table.values[i] > 0.0)
            table.min_step_ratio = std::min(table.min_step_ratio, table.values[i + 1] / table.values[i]);
    if (!std::isfinite(table.min_step_ratio)) table.min_step_ratio = 1.0;
    return table;
}

}  // namespace hal
