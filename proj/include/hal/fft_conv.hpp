#pragma once

#include <functional>
#include <vector>

#include "hal/field.hpp"

namespace hal {

/// Kernel values on integer node offsets, extent[d] = max |offset| per axis.
/// Entry semantics are up to the builder (typically "integral of the kernel
/// over the cell at that offset").
struct OffsetTable {
    int dim = 2;
    std::array<int, 3> extent{0, 0, 0};

    std::vector<double> data;

    static OffsetTable zeros(int dim, std::array<int, 3> extent);

    size_t length(int d) const { return size_t(2 * extent[size_t(d)] + 1); }
    size_t size() const {
        size_t s = 1;
        for (int d = 0; d < dim; ++d) s *= length(d);
        return s;
    }
    size_t index(int di, int dj, int dk = 0) const {
        size_t i = size_t(di + extent[0]);
        size_t j = size_t(dj + extent[1]);
        if (dim == 2) return i * length(1) + j;
        return (i * length(1) + j) * length(2) + size_t(dk + extent[2]);
    }
    double& at(int di, int dj, int dk = 0) { return data[index(di, dj, dk)]; }
    double at(int di, int dj, int dk = 0) const { return data[index(di, dj, dk)]; }

    /// Build from a function of the physical offset vector (grid spacings h).
    static OffsetTable build(const Grid& g, std::array<int, 3> extent,
                             const std::function<double(const std::array<double, 3>&)>& fn);
};

enum class ConvMode { automatic, spectral, direct };

/// Linear (zero-padded) correlation sum: out(x_i) = sum_j T(i - j) f(j).
/// The spectral path pads with zero fill to at least shape+extent (rounded to
/// a power of two); the direct path is the O(N^2) oracle that anchors it.
ScalarField convolve(const ScalarField& f, const OffsetTable& table, ConvMode mode = ConvMode::automatic);

}  // namespace hal
