#include "hal/fft_conv.hpp"

#include <fftw3.h>

#include <complex>
#include <cstring>
#include <mutex>

namespace hal {

OffsetTable OffsetTable::zeros(int dim, std::array<int, 3> extent) {
    OffsetTable t;
    t.dim = dim;
    t.extent = extent;
    if (dim == 2) t.extent[2] = 0;
    t.data.assign(t.size(), 0.0);
    return t;
}

OffsetTable OffsetTable::build(const Grid& g, std::array<int, 3> extent,
                               const std::function<double(const std::array<double, 3>&)>& fn) {
    OffsetTable t = zeros(g.dim, extent);
    const int ek = (g.dim == 3) ? t.extent[2] : 0;
    for (int di = -t.extent[0]; di <= t.extent[0]; ++di)
        for (int dj = -t.extent[1]; dj <= t.extent[1]; ++dj)
            for (int dk = -ek; dk <= ek; ++dk) {
                std::array<double, 3> off{di * g.spacing[0], dj * g.spacing[1],
                                          g.dim == 3 ? dk * g.spacing[2] : 0.0};
                t.at(di, dj, dk) = fn(off);
            }
    return t;
}

namespace {

std::mutex& fftw_mutex() {
    static std::mutex m;
    return m;
}

size_t next_pow2(size_t n) {
    size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

struct Dims {
    int n0 = 1, n1 = 1, n2 = 1;
    size_t real_size() const { return size_t(n0) * size_t(n1) * size_t(n2); }
    size_t cplx_size() const { return size_t(n0) * size_t(n1) * size_t(n2 / 2 + 1); }
};

// forward r2c FFT of a zero-padded buffer
void fft_forward(const Dims& d, std::vector<double>& real, std::vector<std::complex<double>>& cplx) {
    cplx.assign(d.cplx_size(), {0.0, 0.0});
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(fftw_mutex());
        plan = fftw_plan_dft_r2c_3d(d.n0, d.n1, d.n2, real.data(),
                                    reinterpret_cast<fftw_complex*>(cplx.data()), FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    std::lock_guard<std::mutex> lock(fftw_mutex());
    fftw_destroy_plan(plan);
}

void fft_backward(const Dims& d, std::vector<std::complex<double>>& cplx, std::vector<double>& real) {
    real.assign(d.real_size(), 0.0);
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(fftw_mutex());
        plan = fftw_plan_dft_c2r_3d(d.n0, d.n1, d.n2, reinterpret_cast<fftw_complex*>(cplx.data()),
                                    real.data(), FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    std::lock_guard<std::mutex> lock(fftw_mutex());
    fftw_destroy_plan(plan);
}

ScalarField convolve_fft(const ScalarField& f, const OffsetTable& t) {
    const Grid& g = f.grid;
    Dims d;
    d.n0 = int(next_pow2(size_t(g.shape[0] + t.extent[0] + 1)));
    d.n1 = int(next_pow2(size_t(g.shape[1] + t.extent[1] + 1)));
    d.n2 = (g.dim == 3) ? int(next_pow2(size_t(g.shape[2] + t.extent[2] + 1))) : 1;

    std::vector<double> fBuf(d.real_size(), 0.0);
    const int nk = (g.dim == 3) ? g.shape[2] : 1;
    for (int i = 0; i < g.shape[0]; ++i)
        for (int j = 0; j < g.shape[1]; ++j)
            for (int k = 0; k < nk; ++k)
                fBuf[(size_t(i) * size_t(d.n1) + size_t(j)) * size_t(d.n2) + size_t(k)] =
                    f.values[g.index(i, j, k)];

    std::vector<double> kBuf(d.real_size(), 0.0);
    const int ek = (g.dim == 3) ? t.extent[2] : 0;
    for (int di = -t.extent[0]; di <= t.extent[0]; ++di)
        for (int dj = -t.extent[1]; dj <= t.extent[1]; ++dj)
            for (int dk = -ek; dk <= ek; ++dk) {
                double v = t.at(di, dj, dk);
                if (v == 0.0) continue;
                size_t wi = size_t((di + d.n0) % d.n0);
                size_t wj = size_t((dj + d.n1) % d.n1);
                size_t wk = size_t((dk + d.n2) % d.n2);
                kBuf[(wi * size_t(d.n1) + wj) * size_t(d.n2) + wk] = v;
            }

    std::vector<std::complex<double>> fHat, kHat;
    fft_forward(d, fBuf, fHat);
    fft_forward(d, kBuf, kHat);
    for (size_t i = 0; i < fHat.size(); ++i) fHat[i] *= kHat[i];
    std::vector<double> out;
    fft_backward(d, fHat, out);

    const double scale = 1.0 / double(d.real_size());
    ScalarField res(g);
    for (int i = 0; i < g.shape[0]; ++i)
        for (int j = 0; j < g.shape[1]; ++j)
            for (int k = 0; k < nk; ++k)
                res.values[g.index(i, j, k)] =
                    out[(size_t(i) * size_t(d.n1) + size_t(j)) * size_t(d.n2) + size_t(k)] * scale;
    return res;
}

ScalarField convolve_direct(const ScalarField& f, const OffsetTable& t) {
    const Grid& g = f.grid;
    ScalarField res(g);
    const int nk = (g.dim == 3) ? g.shape[2] : 1;
    const int ek = (g.dim == 3) ? t.extent[2] : 0;
    for (int i = 0; i < g.shape[0]; ++i)
        for (int j = 0; j < g.shape[1]; ++j)
            for (int k = 0; k < nk; ++k) {
                double acc = 0.0;
                const int ilo = std::max(0, i - t.extent[0]), ihi = std::min(g.shape[0] - 1, i + t.extent[0]);
                const int jlo = std::max(0, j - t.extent[1]), jhi = std::min(g.shape[1] - 1, j + t.extent[1]);
                const int klo = std::max(0, k - ek), khi = std::min(nk - 1, k + ek);
                for (int si = ilo; si <= ihi; ++si)
                    for (int sj = jlo; sj <= jhi; ++sj)
                        for (int sk = klo; sk <= khi; ++sk)
                            acc += t.at(i - si, j - sj, k - sk) * f.values[g.index(si, sj, sk)];
                res.values[g.index(i, j, k)] = acc;
            }
    return res;
}

}  // namespace

ScalarField convolve(const ScalarField& f, const OffsetTable& table, ConvMode mode) {
    if (mode == ConvMode::direct) return convolve_direct(f, table);
    if (mode == ConvMode::spectral) return convolve_fft(f, table);
    int maxExtent = std::max({table.extent[0], table.extent[1], table.extent[2]});
    return maxExtent <= 5 ? convolve_direct(f, table) : convolve_fft(f, table);
}

}  // namespace hal
