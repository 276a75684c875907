#include "hal/pde.hpp"

#include <cmath>

namespace hal {

size_t ConnectionForm::slot(int i, int j) const {
    if (!(i < j)) throw std::invalid_argument("ConnectionForm::slot: needs i < j");
    // row-major over the strict upper triangle
    return size_t(i * (2 * m - i - 1) / 2 + (j - i - 1));
}

double ConnectionForm::entry(int i, int j, int comp, size_t node) const {
    if (i == j) return 0.0;
    if (i < j) return upper[slot(i, j)].components[size_t(comp)].values[node];
    return -upper[slot(j, i)].components[size_t(comp)].values[node];
}

ScalarField ConnectionForm::magnitude2() const {
    ScalarField out(grid);
    for (const auto& f : upper)
        for (const auto& c : f.components)
            for (size_t idx = 0; idx < out.values.size(); ++idx)
                out.values[idx] += 2.0 * c.values[idx] * c.values[idx];  // (i,j) and (j,i)
    return out;
}

void GaugeField::check(double orth_tol, double det_tol) const {
    if (m > 3) throw std::invalid_argument("GaugeField: m <= 3 supported");
    for (size_t node = 0; node < grid.size(); ++node) {
        double maxDev = 0.0;
        for (int r = 0; r < m; ++r)
            for (int c = 0; c < m; ++c) {
                double acc = 0.0;
                for (int k = 0; k < m; ++k) acc += at(node, k, r) * at(node, k, c);
                maxDev = std::max(maxDev, std::abs(acc - (r == c ? 1.0 : 0.0)));
            }
        if (maxDev > orth_tol) throw std::invalid_argument("GaugeField: P^T P deviates from identity");
        double det;
        if (m == 2)
            det = at(node, 0, 0) * at(node, 1, 1) - at(node, 0, 1) * at(node, 1, 0);
        else
            det = at(node, 0, 0) * (at(node, 1, 1) * at(node, 2, 2) - at(node, 1, 2) * at(node, 2, 1)) -
                  at(node, 0, 1) * (at(node, 1, 0) * at(node, 2, 2) - at(node, 1, 2) * at(node, 2, 0)) +
                  at(node, 0, 2) * (at(node, 1, 0) * at(node, 2, 1) - at(node, 1, 1) * at(node, 2, 0));
        if (std::abs(det - 1.0) > det_tol) throw std::invalid_argument("GaugeField: det P deviates from 1");
    }
}

GaugeField GaugeField::identity(const Grid& g, int m) {
    GaugeField P(g, m);
    for (size_t node = 0; node < g.size(); ++node)
        for (int r = 0; r < m; ++r) P.at(node, r, r) = 1.0;
    return P;
}

GaugeField GaugeField::rotation2(const Grid& g, const std::function<double(const std::array<double, 3>&)>& psi) {
    GaugeField P(g, 2);
    for (size_t node = 0; node < g.size(); ++node) {
        double a = psi(g.point(node));
        P.at(node, 0, 0) = std::cos(a);
        P.at(node, 0, 1) = -std::sin(a);
        P.at(node, 1, 0) = std::sin(a);
        P.at(node, 1, 1) = std::cos(a);
    }
    return P;
}

double MatrixFormField::antisymmetry_defect() const {
    double worst = 0.0;
    for (int ax = 0; ax < grid.dim; ++ax)
        for (int i = 0; i < m; ++i)
            for (int j = i; j < m; ++j) {
                const ScalarField& a = at(ax, i, j);
                const ScalarField& b = at(ax, j, i);
                for (size_t idx = 0; idx < a.values.size(); ++idx)
                    worst = std::max(worst, std::abs(a.values[idx] + b.values[idx]));
            }
    return worst;
}

bool ResidualField::interior(const Grid& g, size_t idx) {
    auto c = g.unindex(idx);
    for (int d = 0; d < g.dim; ++d)
        if (c[size_t(d)] < 2 || c[size_t(d)] > g.shape[size_t(d)] - 3) return false;
    return true;
}

ResidualField residual(const VectorField& u, const ConnectionForm& omega, const VectorField& f) {
    const Grid& g = u.grid;
    if (!g.same_layout(omega.grid) || !g.same_layout(f.grid) || u.m() != omega.m || u.m() != f.m())
        throw std::invalid_argument("residual: grid or m mismatch");
    const int m = u.m();

    std::vector<FormField> du;
    std::vector<ScalarField> lap;
    du.reserve(size_t(m));
    for (int c = 0; c < m; ++c) {
        du.push_back(gradient(u.components[size_t(c)]));
        lap.push_back(laplacian_compact(u.components[size_t(c)]));
    }

    ResidualField out;
    out.vec = VectorField(g, m);
    out.magnitude = ScalarField(g);
    for (size_t idx = 0; idx < g.size(); ++idx) {
        if (!ResidualField::interior(g, idx)) continue;
        double mag2 = 0.0;
        for (int i = 0; i < m; ++i) {
            double coupling = 0.0;
            for (int j = 0; j < m; ++j)
                for (int ax = 0; ax < g.dim; ++ax)
                    coupling += omega.entry(i, j, ax, idx) * du[size_t(j)].components[size_t(ax)].values[idx];
            double r = -lap[size_t(i)].values[idx] - coupling - f.components[size_t(i)].values[idx];
            out.vec.components[size_t(i)].values[idx] = r;
            mag2 += r * r;
        }
        out.magnitude.values[idx] = std::sqrt(mag2);
    }
    return out;
}

MatrixFormField gauge_transform(const ConnectionForm& omega, const GaugeField& P) {
    const Grid& g = omega.grid;
    if (!g.same_layout(P.grid) || omega.m != P.m) throw std::invalid_argument("gauge_transform: mismatch");
    P.check();
    const int m = omega.m;

    // dP: axis derivative of every matrix entry
    std::vector<ScalarField> dP(size_t(g.dim * m * m));
    for (int r = 0; r < m; ++r)
        for (int c = 0; c < m; ++c) {
            ScalarField entry(g);
            for (size_t node = 0; node < g.size(); ++node) entry.values[node] = P.at(node, r, c);
            for (int ax = 0; ax < g.dim; ++ax)
                dP[size_t((ax * m + r) * m + c)] = gradient_component(entry, ax);
        }

    MatrixFormField out(g, m);
    for (size_t node = 0; node < g.size(); ++node)
        for (int ax = 0; ax < g.dim; ++ax)
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < m; ++j) {
                    double acc = 0.0;
                    for (int k = 0; k < m; ++k) {
                        // P^{-1} = P^T row i = column i of P
                        acc += P.at(node, k, i) * dP[size_t((ax * m + k) * m + j)].values[node];
                        double omkl = 0.0;
                        for (int l = 0; l < m; ++l) omkl += omega.entry(k, l, ax, node) * P.at(node, l, j);
                        acc += P.at(node, k, i) * omkl;
                    }
                    out.at(ax, i, j).values[node] = acc;
                }
    return out;
}

ResidualField gauge_residual(const VectorField& u, const ConnectionForm& omega, const GaugeField& P,
                             const VectorField& f) {
    const Grid& g = u.grid;
    if (!g.same_layout(omega.grid) || !g.same_layout(P.grid) || !g.same_layout(f.grid))
        throw std::invalid_argument("gauge_residual: grid mismatch");
    if (u.m() != omega.m || u.m() != P.m || u.m() != f.m())
        throw std::invalid_argument("gauge_residual: m mismatch");
    const int m = u.m();

    MatrixFormField omegaP = gauge_transform(omega, P);

    // node-collocated W = P^{-1} du for the coupling term (central differences,
    // matching the discretization of `residual`)
    std::vector<ScalarField> W;
    W.assign(size_t(m * g.dim), ScalarField(g));
    {
        std::vector<FormField> du;
        for (int c = 0; c < m; ++c) du.push_back(gradient(u.components[size_t(c)]));
        for (size_t node = 0; node < g.size(); ++node)
            for (int i = 0; i < m; ++i)
                for (int ax = 0; ax < g.dim; ++ax) {
                    double acc = 0.0;
                    for (int k = 0; k < m; ++k)
                        acc += P.at(node, k, i) * du[size_t(k)].components[size_t(ax)].values[node];
                    W[size_t(i * g.dim + ax)].values[node] = acc;
                }
    }

    // d*(P^{-1} du) in conservative staggered form: backward difference of
    // P^T (averaged to half-edges) times forward differences. For constant P
    // this collapses to P^T times the compact Laplacian, making the covariance
    // identity exact to rounding.
    std::vector<ScalarField> dstarW;
    dstarW.assign(size_t(m), ScalarField(g));
    std::array<size_t, 3> stride{0, 0, 0};
    if (g.dim == 2)
        stride = {size_t(g.shape[1]), 1, 0};
    else
        stride = {size_t(g.shape[1]) * size_t(g.shape[2]), size_t(g.shape[2]), 1};
    for (size_t node = 0; node < g.size(); ++node) {
        if (!ResidualField::interior(g, node)) continue;
        for (int i = 0; i < m; ++i) {
            double acc = 0.0;
            for (int ax = 0; ax < g.dim; ++ax) {
                const double h = g.spacing[size_t(ax)];
                const size_t plus = node + stride[size_t(ax)];
                const size_t minus = node - stride[size_t(ax)];
                double fluxPlus = 0.0, fluxMinus = 0.0;
                for (int k = 0; k < m; ++k) {
                    double pHalfPlus = 0.5 * (P.at(node, k, i) + P.at(plus, k, i));
                    double pHalfMinus = 0.5 * (P.at(minus, k, i) + P.at(node, k, i));
                    fluxPlus += pHalfPlus *
                                (u.components[size_t(k)].values[plus] - u.components[size_t(k)].values[node]) / h;
                    fluxMinus += pHalfMinus *
                                 (u.components[size_t(k)].values[node] - u.components[size_t(k)].values[minus]) / h;
                }
                acc -= (fluxPlus - fluxMinus) / h;
            }
            dstarW[size_t(i)].values[node] = acc;
        }
    }

    ResidualField out;
    out.vec = VectorField(g, m);
    out.magnitude = ScalarField(g);
    for (size_t node = 0; node < g.size(); ++node) {
        if (!ResidualField::interior(g, node)) continue;
        double mag2 = 0.0;
        for (int i = 0; i < m; ++i) {
            double coupling = 0.0;
            for (int j = 0; j < m; ++j)
                for (int ax = 0; ax < g.dim; ++ax)
                    coupling += omegaP.at(ax, i, j).values[node] * W[size_t(j * g.dim + ax)].values[node];
            double pf = 0.0;
            for (int k = 0; k < m; ++k) pf += P.at(node, k, i) * f.components[size_t(k)].values[node];
            double r = dstarW[size_t(i)].values[node] - coupling - pf;
            out.vec.components[size_t(i)].values[node] = r;
            mag2 += r * r;
        }
        out.magnitude.values[node] = std::sqrt(mag2);
    }
    return out;
}

// ---------------------------------------------------------------------------

Jet2 Counterexample::u_component(int comp, double x, double y) {
    Jet2 X = Jet2::var(0, x), Y = Jet2::var(1, y);
    Jet2 L = 0.5 * log(X * X + Y * Y);
    return L * L * (comp == 0 ? X : Y);
}

double Counterexample::omega_coefficient(double r) {
    double L = std::log(r);
    return 2.0 * (1.0 + 2.0 * L) / sqr(r * L);
}

double Counterexample::hessian_energy_closed_form(double eps) {
    double X = -std::log(eps);
    return 2.0 * kPi * (16.0 * X * X * X / 3.0 - 4.0 * X * X + 4.0 * X - 16.0 / 3.0);
}

double Counterexample::hessian_energy_quadrature(double eps, int panels) {
    // radial quadrature of the jet-oracle Hessian: angular trapezoid, then
    // panelwise Gauss in log r
    std::vector<double> gx, gw;
    detail::gauss_legendre_01(4, gx, gw);
    const double t0 = std::log(eps), t1 = -1.0;
    const double dt = (t1 - t0) / panels;
    const int nang = 16;
    double acc = 0.0;
    for (int p = 0; p < panels; ++p)
        for (size_t q = 0; q < gx.size(); ++q) {
            double t = t0 + (p + gx[q]) * dt;
            double r = std::exp(t);
            double ring = 0.0;
            for (int ia = 0; ia < nang; ++ia) {
                double th = 2.0 * kPi * (double(ia) + 0.5) / double(nang);
                double x = r * std::cos(th), y = r * std::sin(th);
                ring += jet_hessian_frobenius2(u_component(0, x, y)) +
                        jet_hessian_frobenius2(u_component(1, x, y));
            }
            ring *= 2.0 * kPi / double(nang);
            acc += gw[q] * dt * ring * r * r;  // dA = r dr dtheta, dr = r dt
        }
    return acc;
}

double Counterexample::hessian_weak_l2(double eps, int samples) {
    // |Hess u|(r) = sqrt(16 L^2 + 8 L + 4)/r is decreasing on (0, e^{-1})
    auto H = [](double r) {
        double L = std::log(r);
        return std::sqrt(16.0 * L * L + 8.0 * L + 4.0) / r;
    };
    const double rHi = std::exp(-1.0);
    double best = 0.0;
    for (int s = 0; s < samples; ++s) {
        double r = eps * std::pow(rHi / eps, double(s) / double(samples - 1));
        double area = kPi * std::max(0.0, r * r - eps * eps);
        best = std::max(best, H(r) * std::sqrt(area));
    }
    return best;
}

Counterexample make_counterexample(const Grid& grid, double eps) {
    const double rmax = std::exp(-1.0);
    if (!(eps > 0.0 && eps < rmax))
        throw std::invalid_argument("counterexample: eps must lie in (0, e^{-1})");
    if (grid.dim != 2) throw std::invalid_argument("counterexample: 2-d only");
    for (int d = 0; d < 2; ++d)
        if (grid.origin[size_t(d)] > -rmax || grid.axis_max(d) < rmax)
            throw std::invalid_argument("counterexample: grid must cover B_{e^{-1}}");

    Counterexample ce;
    ce.eps = eps;
    ce.u = VectorField(grid, 2);
    ce.omega = ConnectionForm(grid, 2);
    FormField& w12 = ce.omega.at_upper(0, 1);
    for (size_t idx = 0; idx < grid.size(); ++idx) {
        auto p = grid.point(idx);
        double r = std::sqrt(sqr(p[0]) + sqr(p[1]));
        if (r < eps) continue;  // masked: no silent regularization of the singularity
        double L = std::log(r);
        ce.u.components[0].values[idx] = L * L * p[0];
        ce.u.components[1].values[idx] = L * L * p[1];
        double w = Counterexample::omega_coefficient(r);
        // oriented so that the pair (u, Omega) solves -Lap u = Omega.grad u
        w12.components[0].values[idx] = w * p[1];
        w12.components[1].values[idx] = -w * p[0];
    }
    return ce;
}

DecayProfile decay_profile(const VectorField& u, const std::array<double, 3>& center,
                           std::vector<double> radii) {
    if (radii.size() < 3) throw std::invalid_argument("decay_profile: need >= 3 radii");
    std::sort(radii.begin(), radii.end());
    ScalarField mag2(u.grid);
    for (int c = 0; c < u.m(); ++c) {
        FormField du = gradient(u.components[size_t(c)]);
        ScalarField m2 = du.magnitude2();
        for (size_t i = 0; i < mag2.values.size(); ++i) mag2.values[i] += m2.values[i];
    }
    DecayProfile prof;
    std::vector<double> lx, ly;
    for (double r : radii) {
        double e = integrate_ball_interp(mag2, Ball{center, r});
        prof.radii.push_back(r);
        prof.energies.push_back(e);
        lx.push_back(std::log(r));
        ly.push_back(std::log(std::max(e, 1e-300)));
    }
    prof.kappa = ls_slope(lx, ly);
    return prof;
}

}  // namespace hal
