#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace hal {

inline constexpr double kPi = 3.14159265358979323846;

/// Volume of the unit ball in dimension n (n = 1, 2, 3).
inline double unit_ball_volume(int n) {
    switch (n) {
        case 1: return 2.0;
        case 2: return kPi;
        case 3: return 4.0 * kPi / 3.0;
        default: throw std::invalid_argument("unit_ball_volume: dim must be 1, 2 or 3");
    }
}

/// Surface measure of the unit sphere S^{n-1} (n = 2, 3).
inline double unit_sphere_area(int n) {
    switch (n) {
        case 2: return 2.0 * kPi;
        case 3: return 4.0 * kPi;
        default: throw std::invalid_argument("unit_sphere_area: dim must be 2 or 3");
    }
}

inline double sqr(double x) { return x * x; }

/// C^inf transition: 0 for t <= 0, 1 for t >= 1, strictly increasing between.
inline double smooth_step(double t) {
    auto f = [](double u) { return u > 0.0 ? std::exp(-1.0 / u) : 0.0; };
    const double a = f(t);
    const double b = f(1.0 - t);
    return a / (a + b);
}

/// Smooth radial cutoff: 1 for t <= 1, 0 for t >= 2.
inline double smooth_cutoff_12(double t) { return 1.0 - smooth_step(t - 1.0); }

struct Vec3 {
    std::array<double, 3> v{0.0, 0.0, 0.0};
    double& operator[](int i) { return v[size_t(i)]; }
    double operator[](int i) const { return v[size_t(i)]; }
};

inline double dist(const std::array<double, 3>& a, const std::array<double, 3>& b, int dim) {
    double s = 0.0;
    for (int d = 0; d < dim; ++d) s += sqr(a[size_t(d)] - b[size_t(d)]);
    return std::sqrt(s);
}

inline long binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    long r = 1;
    for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
}

/// Least-squares slope of y against x.
inline double ls_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("ls_slope: need >= 2 matching samples");
    double mx = 0, my = 0;
    for (size_t i = 0; i < x.size(); ++i) { mx += x[i]; my += y[i]; }
    mx /= double(x.size());
    my /= double(x.size());
    double sxx = 0, sxy = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    return sxy / sxx;
}

}  // namespace hal
