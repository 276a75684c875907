#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "hal/grid.hpp"

namespace hal {

/// One real value per grid node, row-major.
struct ScalarField {
    Grid grid;
    std::vector<double> values;

    ScalarField() = default;
    explicit ScalarField(const Grid& g, double fill = 0.0) : grid(g), values(g.size(), fill) {}

    double& operator[](size_t i) { return values[i]; }
    double operator[](size_t i) const { return values[i]; }
    double& at(int i, int j, int k = 0) { return values[grid.index(i, j, k)]; }
    double at(int i, int j, int k = 0) const { return values[grid.index(i, j, k)]; }

    void check() const {
        if (values.size() != grid.size()) throw std::invalid_argument("ScalarField: value count != grid size");
        for (double v : values)
            if (!std::isfinite(v)) throw std::invalid_argument("ScalarField: non-finite value");
    }

    static ScalarField sample(const Grid& g, const std::function<double(const std::array<double, 3>&)>& f) {
        ScalarField out(g);
        for (size_t idx = 0; idx < g.size(); ++idx) out.values[idx] = f(g.point(idx));
        return out;
    }
};

inline ScalarField operator+(const ScalarField& a, const ScalarField& b) {
    ScalarField r = a;
    for (size_t i = 0; i < r.values.size(); ++i) r.values[i] += b.values[i];
    return r;
}
inline ScalarField operator-(const ScalarField& a, const ScalarField& b) {
    ScalarField r = a;
    for (size_t i = 0; i < r.values.size(); ++i) r.values[i] -= b.values[i];
    return r;
}
inline ScalarField operator*(double c, const ScalarField& a) {
    ScalarField r = a;
    for (double& v : r.values) v *= c;
    return r;
}

/// R^m-valued map: m scalar components on one grid.
struct VectorField {
    Grid grid;
    std::vector<ScalarField> components;

    VectorField() = default;
    VectorField(const Grid& g, int m) : grid(g), components(size_t(m), ScalarField(g)) {}

    int m() const { return int(components.size()); }
    void check() const {
        for (const auto& c : components) {
            if (!c.grid.same_layout(grid)) throw std::invalid_argument("VectorField: component grid mismatch");
            c.check();
        }
    }
};

// Increasing multi-indices for k-forms in dimension n; axes are 0-based.
inline std::vector<std::vector<int>> form_multi_indices(int n, int k) {
    std::vector<std::vector<int>> out;
    if (k < 0 || k > n) throw std::invalid_argument("form degree out of range");
    std::vector<int> idx(static_cast<size_t>(k), 0);
    std::function<void(int, int)> rec = [&](int start, int depth) {
        if (depth == k) {
            out.push_back(idx);
            return;
        }
        for (int a = start; a < n; ++a) {
            idx[size_t(depth)] = a;
            rec(a + 1, depth + 1);
        }
    };
    rec(0, 0);
    return out;
}

/// Differential k-form sampled on a grid: C(n,k) components in increasing
/// multi-index order.
struct FormField {
    Grid grid;
    int degree = 1;
    std::vector<ScalarField> components;

    FormField() = default;
    FormField(const Grid& g, int k) : grid(g), degree(k) {
        if (k < 0 || k > g.dim) throw std::invalid_argument("FormField: degree out of range");
        components.assign(size_t(binomial(g.dim, k)), ScalarField(g));
    }

    std::vector<std::vector<int>> multi_indices() const { return form_multi_indices(grid.dim, degree); }

    void check() const {
        if (long(components.size()) != binomial(grid.dim, degree))
            throw std::invalid_argument("FormField: component count != binomial(n,k)");
        for (const auto& c : components) {
            if (!c.grid.same_layout(grid)) throw std::invalid_argument("FormField: component grid mismatch");
            c.check();
        }
    }

    /// Pointwise |omega|^2 summed over components (orthonormal increasing basis).
    ScalarField magnitude2() const {
        ScalarField out(grid);
        for (const auto& c : components)
            for (size_t i = 0; i < out.values.size(); ++i) out.values[i] += c.values[i] * c.values[i];
        return out;
    }
};

inline FormField operator-(const FormField& a, const FormField& b) {
    FormField r = a;
    for (size_t c = 0; c < r.components.size(); ++c)
        for (size_t i = 0; i < r.components[c].values.size(); ++i)
            r.components[c].values[i] -= b.components[c].values[i];
    return r;
}
inline FormField operator+(const FormField& a, const FormField& b) {
    FormField r = a;
    for (size_t c = 0; c < r.components.size(); ++c)
        for (size_t i = 0; i < r.components[c].values.size(); ++i)
            r.components[c].values[i] += b.components[c].values[i];
    return r;
}
inline FormField operator*(double s, const FormField& a) {
    FormField r = a;
    for (auto& c : r.components)
        for (double& v : c.values) v *= s;
    return r;
}

/// Multilinear (bilinear/trilinear) interpolation; p must lie inside the grid box.
inline double interpolate(const ScalarField& f, const std::array<double, 3>& p) {
    const Grid& g = f.grid;
    double w[3][2];
    int base[3] = {0, 0, 0};
    for (int d = 0; d < g.dim; ++d) {
        double t = (p[size_t(d)] - g.origin[size_t(d)]) / g.spacing[size_t(d)];
        int i0 = int(std::floor(t));
        if (i0 < 0) i0 = 0;
        if (i0 > g.shape[size_t(d)] - 2) i0 = g.shape[size_t(d)] - 2;
        double frac = t - double(i0);
        base[d] = i0;
        w[d][0] = 1.0 - frac;
        w[d][1] = frac;
    }
    double acc = 0.0;
    if (g.dim == 2) {
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) acc += w[0][a] * w[1][b] * f.at(base[0] + a, base[1] + b);
    } else {
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b)
                for (int c = 0; c < 2; ++c)
                    acc += w[0][a] * w[1][b] * w[2][c] * f.at(base[0] + a, base[1] + b, base[2] + c);
    }
    return acc;
}

}  // namespace hal
