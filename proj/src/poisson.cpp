#include "hal/poisson.hpp"

#include <cmath>

namespace hal {

namespace {

struct InteriorSet {
    std::vector<size_t> nodes;            // grid indices of interior nodes
    std::vector<int> dense;               // grid index -> dense index or -1
};

InteriorSet interior_nodes(const Grid& g, const Ball& region) {
    InteriorSet s;
    s.dense.assign(g.size(), -1);
    const int nk = (g.dim == 3) ? g.shape[2] : 1;
    for (int i = 1; i < g.shape[0] - 1; ++i)
        for (int j = 1; j < g.shape[1] - 1; ++j)
            for (int k = (g.dim == 3 ? 1 : 0); k <= (g.dim == 3 ? nk - 2 : 0); ++k) {
                size_t idx = g.index(i, j, k);
                if (dist(g.point(idx), region.center, g.dim) < region.radius) {
                    s.dense[idx] = int(s.nodes.size());
                    s.nodes.push_back(idx);
                }
            }
    return s;
}

}  // namespace

PoissonResult solve_dirichlet(const PoissonProblem& problem) {
    problem.rhs.check();
    if (!(problem.tolerance > 0.0)) throw std::invalid_argument("solve_dirichlet: tolerance must be > 0");
    const Grid& g = problem.rhs.grid;
    InteriorSet in = interior_nodes(g, problem.region);
    if (in.nodes.empty()) throw std::invalid_argument("solve_dirichlet: region holds no interior nodes");

    const size_t n = in.nodes.size();
    std::array<size_t, 3> stride{0, 0, 0};
    if (g.dim == 2) {
        stride = {size_t(g.shape[1]), 1, 0};
    } else {
        stride = {size_t(g.shape[1]) * size_t(g.shape[2]), size_t(g.shape[2]), 1};
    }

    // y = A x with A = -Lap restricted to interior nodes (zero Dirichlet data)
    auto apply = [&](const std::vector<double>& x, std::vector<double>& y) {
        for (size_t a = 0; a < n; ++a) {
            size_t idx = in.nodes[a];
            double acc = 0.0;
            for (int d = 0; d < g.dim; ++d) {
                const double ih2 = 1.0 / sqr(g.spacing[size_t(d)]);
                int dm = in.dense[idx - stride[size_t(d)]];
                int dp = in.dense[idx + stride[size_t(d)]];
                acc += 2.0 * x[a] * ih2;
                if (dm >= 0) acc -= x[size_t(dm)] * ih2;
                if (dp >= 0) acc -= x[size_t(dp)] * ih2;
            }
            y[a] = acc;
        }
    };

    std::vector<double> b(n);
    double bnorm2 = 0.0;
    for (size_t a = 0; a < n; ++a) {
        b[a] = problem.rhs.values[in.nodes[a]];
        bnorm2 += b[a] * b[a];
    }
    PoissonResult res;
    res.u = ScalarField(g, 0.0);
    if (bnorm2 == 0.0) return res;

    std::vector<double> x(n, 0.0), r = b, p = b, Ap(n);
    double rr = bnorm2;
    const double target2 = sqr(problem.tolerance) * bnorm2;
    int it = 0;
    for (; it < problem.max_iterations && rr > target2; ++it) {
        apply(p, Ap);
        double pAp = 0.0;
        for (size_t a = 0; a < n; ++a) pAp += p[a] * Ap[a];
        double alpha = rr / pAp;
        for (size_t a = 0; a < n; ++a) {
            x[a] += alpha * p[a];
            r[a] -= alpha * Ap[a];
        }
        double rr2 = 0.0;
        for (size_t a = 0; a < n; ++a) rr2 += r[a] * r[a];
        double beta = rr2 / rr;
        rr = rr2;
        for (size_t a = 0; a < n; ++a) p[a] = r[a] + beta * p[a];
        if (it % 50 == 0) res.residual_log.push_back(std::sqrt(rr / bnorm2));
    }
    res.iterations = it;
    res.residual = std::sqrt(rr / bnorm2);
    if (rr > target2) throw SolveFailure(res.residual);
    for (size_t a = 0; a < n; ++a) res.u.values[in.nodes[a]] = x[a];
    return res;
}

}  // namespace hal
