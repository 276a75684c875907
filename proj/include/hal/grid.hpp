#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>

#include "hal/common.hpp"

namespace hal {

/// Uniform Cartesian grid over an axis-aligned box in R^n, n in {2, 3}.
/// Node (i0, i1[, i2]) sits at origin[d] + i_d * spacing[d]; storage is row-major
/// (last index fastest).
struct Grid {
    int dim = 2;
    std::array<int, 3> shape{0, 0, 1};
    std::array<double, 3> spacing{0.0, 0.0, 0.0};
    std::array<double, 3> origin{0.0, 0.0, 0.0};
    bool covers_unit_ball = false;

    static Grid box(int dim, int nodes_per_axis, double half_width = 1.25) {
        if (dim != 2 && dim != 3) throw std::invalid_argument("Grid: dim must be 2 or 3");
        if (nodes_per_axis < 8) throw std::invalid_argument("Grid: need >= 8 nodes per axis");
        Grid g;
        g.dim = dim;
        for (int d = 0; d < dim; ++d) {
            g.shape[size_t(d)] = nodes_per_axis;
            g.spacing[size_t(d)] = 2.0 * half_width / double(nodes_per_axis - 1);
            g.origin[size_t(d)] = -half_width;
        }
        if (dim == 2) g.shape[2] = 1;
        g.covers_unit_ball = half_width >= 1.0;
        g.validate();
        return g;
    }

    void validate() const {
        if (dim != 2 && dim != 3) throw std::invalid_argument("Grid: dim must be 2 or 3");
        for (int d = 0; d < dim; ++d) {
            if (shape[size_t(d)] < 8) throw std::invalid_argument("Grid: need >= 8 nodes per axis");
            if (!(spacing[size_t(d)] > 0.0)) throw std::invalid_argument("Grid: spacing must be > 0");
        }
        if (covers_unit_ball) {
            for (int d = 0; d < dim; ++d) {
                if (origin[size_t(d)] > -1.0 || axis_max(d) < 1.0)
                    throw std::invalid_argument("Grid: flagged covers_unit_ball but box misses B1");
            }
        }
    }

    double axis_max(int d) const { return origin[size_t(d)] + spacing[size_t(d)] * double(shape[size_t(d)] - 1); }

    size_t size() const {
        size_t n = 1;
        for (int d = 0; d < dim; ++d) n *= size_t(shape[size_t(d)]);
        return n;
    }

    double cell_volume() const {
        double v = 1.0;
        for (int d = 0; d < dim; ++d) v *= spacing[size_t(d)];
        return v;
    }

    double min_spacing() const {
        double h = spacing[0];
        for (int d = 1; d < dim; ++d) h = std::min(h, spacing[size_t(d)]);
        return h;
    }

    size_t index(int i, int j, int k = 0) const {
        if (dim == 2) return size_t(i) * size_t(shape[1]) + size_t(j);
        return (size_t(i) * size_t(shape[1]) + size_t(j)) * size_t(shape[2]) + size_t(k);
    }

    std::array<int, 3> unindex(size_t idx) const {
        std::array<int, 3> c{0, 0, 0};
        if (dim == 2) {
            c[0] = int(idx / size_t(shape[1]));
            c[1] = int(idx % size_t(shape[1]));
        } else {
            c[2] = int(idx % size_t(shape[2]));
            size_t r = idx / size_t(shape[2]);
            c[1] = int(r % size_t(shape[1]));
            c[0] = int(r / size_t(shape[1]));
        }
        return c;
    }

    std::array<double, 3> point(int i, int j, int k = 0) const {
        std::array<double, 3> p{0.0, 0.0, 0.0};
        p[0] = origin[0] + spacing[0] * double(i);
        p[1] = origin[1] + spacing[1] * double(j);
        if (dim == 3) p[2] = origin[2] + spacing[2] * double(k);
        return p;
    }

    std::array<double, 3> point(size_t idx) const {
        auto c = unindex(idx);
        return point(c[0], c[1], c[2]);
    }

    bool same_layout(const Grid& o) const {
        if (dim != o.dim) return false;
        for (int d = 0; d < dim; ++d) {
            if (shape[size_t(d)] != o.shape[size_t(d)]) return false;
            if (spacing[size_t(d)] != o.spacing[size_t(d)]) return false;
            if (origin[size_t(d)] != o.origin[size_t(d)]) return false;
        }
        return true;
    }

    /// True if p lies inside the closed grid box.
    bool contains(const std::array<double, 3>& p, double slack = 0.0) const {
        for (int d = 0; d < dim; ++d) {
            if (p[size_t(d)] < origin[size_t(d)] - slack) return false;
            if (p[size_t(d)] > axis_max(d) + slack) return false;
        }
        return true;
    }
};

}  // namespace hal
