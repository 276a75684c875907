#pragma once

#include <cmath>

#include "hal/field.hpp"

namespace hal {

namespace detail {

/// d/dx_axis by central differences; one-sided second order on the boundary
/// layer of that axis. Stencils along distinct axes commute exactly, so the
/// discrete d.d and d*.d* below vanish identically, not just to O(h^2).
inline ScalarField axis_derivative(const ScalarField& f, int axis) {
    const Grid& g = f.grid;
    ScalarField out(g);
    const double h = g.spacing[size_t(axis)];
    const int n = g.shape[size_t(axis)];
    auto idx_shift = [&](size_t base, int step) {
        // row-major strides
        size_t stride = 1;
        if (g.dim == 2)
            stride = (axis == 0) ? size_t(g.shape[1]) : 1;
        else {
            if (axis == 0) stride = size_t(g.shape[1]) * size_t(g.shape[2]);
            else if (axis == 1) stride = size_t(g.shape[2]);
        }
        return step >= 0 ? base + stride * size_t(step) : base - stride * size_t(-step);
    };
    for (size_t idx = 0; idx < g.size(); ++idx) {
        auto c = g.unindex(idx);
        const int i = c[size_t(axis)];
        double v;
        if (i == 0)
            v = (-3.0 * f.values[idx] + 4.0 * f.values[idx_shift(idx, 1)] - f.values[idx_shift(idx, 2)]) / (2.0 * h);
        else if (i == n - 1)
            v = (3.0 * f.values[idx] - 4.0 * f.values[idx_shift(idx, -1)] + f.values[idx_shift(idx, -2)]) / (2.0 * h);
        else
            v = (f.values[idx_shift(idx, 1)] - f.values[idx_shift(idx, -1)]) / (2.0 * h);
        out.values[idx] = v;
    }
    return out;
}

inline int position_of(const std::vector<int>& inc, int axis) {
    for (size_t a = 0; a < inc.size(); ++a)
        if (inc[a] == axis) return int(a);
    return -1;
}

}  // namespace detail

inline ScalarField gradient_component(const ScalarField& f, int axis) { return detail::axis_derivative(f, axis); }

/// du as a 1-form.
inline FormField gradient(const ScalarField& f) {
    f.check();
    FormField out(f.grid, 1);
    for (int d = 0; d < f.grid.dim; ++d) out.components[size_t(d)] = detail::axis_derivative(f, d);
    return out;
}

/// Exterior derivative on increasing multi-indices:
/// (d w)_I = sum_a (-1)^pos d_a w_{I \ a}.
inline FormField exterior_derivative(const FormField& w) {
    const Grid& g = w.grid;
    if (w.degree >= g.dim) throw std::invalid_argument("exterior_derivative: degree out of range");
    FormField out(g, w.degree + 1);
    auto out_idx = out.multi_indices();
    auto in_idx = w.multi_indices();
    auto find_in = [&](const std::vector<int>& I) -> int {
        for (size_t c = 0; c < in_idx.size(); ++c)
            if (in_idx[c] == I) return int(c);
        return -1;
    };
    for (size_t c = 0; c < out_idx.size(); ++c) {
        const auto& I = out_idx[c];
        for (size_t a = 0; a < I.size(); ++a) {
            std::vector<int> rest;
            for (size_t b = 0; b < I.size(); ++b)
                if (b != a) rest.push_back(I[b]);
            int src = find_in(rest);
            double sign = (a % 2 == 0) ? 1.0 : -1.0;
            ScalarField der = detail::axis_derivative(w.components[size_t(src)], I[a]);
            for (size_t i = 0; i < der.values.size(); ++i)
                out.components[c].values[i] += sign * der.values[i];
        }
    }
    return out;
}

/// Euclidean Hodge star: (*w)_J = sign(I, J) w_I with J the increasing
/// complement of I. In n=2: *dx1 = dx2, *dx2 = -dx1.
inline FormField hodge_star(const FormField& w) {
    const Grid& g = w.grid;
    const int n = g.dim, k = w.degree;
    FormField out(g, n - k);
    auto in_idx = w.multi_indices();
    auto out_idx = out.multi_indices();
    for (size_t c = 0; c < in_idx.size(); ++c) {
        const auto& I = in_idx[c];
        std::vector<int> J;
        for (int a = 0; a < n; ++a)
            if (detail::position_of(I, a) < 0) J.push_back(a);
        // parity of the concatenation (I, J) as a permutation of (0..n-1)
        std::vector<int> perm = I;
        perm.insert(perm.end(), J.begin(), J.end());
        int inversions = 0;
        for (size_t a = 0; a < perm.size(); ++a)
            for (size_t b = a + 1; b < perm.size(); ++b)
                if (perm[a] > perm[b]) ++inversions;
        double sign = (inversions % 2 == 0) ? 1.0 : -1.0;
        int dst = -1;
        for (size_t cc = 0; cc < out_idx.size(); ++cc)
            if (out_idx[cc] == J) dst = int(cc);
        for (size_t i = 0; i < w.components[c].values.size(); ++i)
            out.components[size_t(dst)].values[i] = sign * w.components[c].values[i];
    }
    return out;
}

/// Codifferential with the formal-adjoint sign: on k-forms
/// delta = (-1)^{n(k+1)+1} * d *  (so delta = -div on 1-forms).
inline FormField codifferential(const FormField& w) {
    if (w.degree <= 0) throw std::invalid_argument("codifferential: degree out of range");
    const int n = w.grid.dim, k = w.degree;
    double sign = ((n * (k + 1) + 1) % 2 == 0) ? 1.0 : -1.0;
    FormField res = hodge_star(exterior_derivative(hodge_star(w)));
    return sign * res;
}

/// Compact 5-point (n=2) / 7-point (n=3) Laplacian at interior nodes;
/// boundary-layer nodes are set to 0 and flagged by callers as unused.
inline ScalarField laplacian_compact(const ScalarField& f) {
    const Grid& g = f.grid;
    ScalarField out(g);
    const int kmax = (g.dim == 3) ? g.shape[2] - 1 : 0;
    for (int i = 1; i < g.shape[0] - 1; ++i)
        for (int j = 1; j < g.shape[1] - 1; ++j)
            for (int k = (g.dim == 3 ? 1 : 0); k <= (g.dim == 3 ? kmax - 1 : 0); ++k) {
                double acc = 0.0;
                acc += (f.at(i + 1, j, k) - 2.0 * f.at(i, j, k) + f.at(i - 1, j, k)) / sqr(g.spacing[0]);
                acc += (f.at(i, j + 1, k) - 2.0 * f.at(i, j, k) + f.at(i, j - 1, k)) / sqr(g.spacing[1]);
                if (g.dim == 3)
                    acc += (f.at(i, j, k + 1) - 2.0 * f.at(i, j, k) + f.at(i, j, k - 1)) / sqr(g.spacing[2]);
                out.at(i, j, k) = acc;
            }
    return out;
}

/// Companion weights for the zoom transform u_hat(x) = u(x0 + R x):
/// a connection form picks up a factor R, a source term R^2.
enum class RescaleWeight { plain, connection, source_term };

inline double rescale_factor(RescaleWeight w, double R) {
    switch (w) {
        case RescaleWeight::plain: return 1.0;
        case RescaleWeight::connection: return R;
        case RescaleWeight::source_term: return R * R;
    }
    return 1.0;
}

/// u_hat(x) = w(R) * u(x0 + R x) on a fresh unit-ball grid, by multilinear
/// interpolation. Requires the image of the target box under x -> x0 + Rx to
/// stay inside the source box.
inline VectorField restrict_rescale(const VectorField& u, const std::array<double, 3>& x0, double R,
                                    int target_nodes_per_axis = 0,
                                    RescaleWeight weight = RescaleWeight::plain) {
    if (!(R > 0.0 && R <= 1.0)) throw std::invalid_argument("restrict_rescale: R must be in (0,1]");
    const Grid& sg = u.grid;
    int nodes = target_nodes_per_axis > 0 ? target_nodes_per_axis : sg.shape[0];
    Grid tg = Grid::box(sg.dim, nodes, 1.25);
    // corner check
    for (size_t idx : {size_t(0), tg.size() - 1}) {
        auto p = tg.point(idx);
        std::array<double, 3> q{0, 0, 0};
        for (int d = 0; d < sg.dim; ++d) q[size_t(d)] = x0[size_t(d)] + R * p[size_t(d)];
        if (!sg.contains(q, 1e-12)) throw std::invalid_argument("restrict_rescale: rescaled ball exits source box");
    }
    const double fac = rescale_factor(weight, R);
    VectorField out(tg, u.m());
    for (int c = 0; c < u.m(); ++c)
        for (size_t idx = 0; idx < tg.size(); ++idx) {
            auto p = tg.point(idx);
            std::array<double, 3> q{0, 0, 0};
            for (int d = 0; d < sg.dim; ++d) q[size_t(d)] = x0[size_t(d)] + R * p[size_t(d)];
            out.components[size_t(c)].values[idx] = fac * interpolate(u.components[size_t(c)], q);
        }
    return out;
}

}  // namespace hal
