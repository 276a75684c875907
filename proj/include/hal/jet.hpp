#pragma once

#include <array>
#include <cmath>
#include <stdexcept>

namespace hal {

/// Second-order forward-mode jet in N variables: value, gradient and (full,
/// symmetric) Hessian propagated through arithmetic and elementary functions.
/// This is the exact-derivative oracle behind every closed-form fixture.
template <int N>
struct Jet {
    double v = 0.0;
    std::array<double, N> g{};
    std::array<std::array<double, N>, N> h{};

    Jet() = default;
    Jet(double value) : v(value) {}

    static Jet var(int i, double value) {
        Jet j(value);
        j.g[size_t(i)] = 1.0;
        return j;
    }

    Jet operator-() const {
        Jet r;
        r.v = -v;
        for (int a = 0; a < N; ++a) {
            r.g[size_t(a)] = -g[size_t(a)];
            for (int b = 0; b < N; ++b) r.h[size_t(a)][size_t(b)] = -h[size_t(a)][size_t(b)];
        }
        return r;
    }
};

template <int N>
Jet<N> operator+(const Jet<N>& x, const Jet<N>& y) {
    Jet<N> r;
    r.v = x.v + y.v;
    for (int a = 0; a < N; ++a) {
        r.g[size_t(a)] = x.g[size_t(a)] + y.g[size_t(a)];
        for (int b = 0; b < N; ++b) r.h[size_t(a)][size_t(b)] = x.h[size_t(a)][size_t(b)] + y.h[size_t(a)][size_t(b)];
    }
    return r;
}
template <int N>
Jet<N> operator-(const Jet<N>& x, const Jet<N>& y) { return x + (-y); }

template <int N>
Jet<N> operator*(const Jet<N>& x, const Jet<N>& y) {
    Jet<N> r;
    r.v = x.v * y.v;
    for (int a = 0; a < N; ++a) r.g[size_t(a)] = x.g[size_t(a)] * y.v + x.v * y.g[size_t(a)];
    for (int a = 0; a < N; ++a)
        for (int b = a; b < N; ++b) {
            double v = x.h[size_t(a)][size_t(b)] * y.v + x.v * y.h[size_t(a)][size_t(b)] +
                       x.g[size_t(a)] * y.g[size_t(b)] + x.g[size_t(b)] * y.g[size_t(a)];
            r.h[size_t(a)][size_t(b)] = v;
            r.h[size_t(b)][size_t(a)] = v;
        }
    return r;
}

/// Chain rule through a scalar function with derivatives f, f', f'' at x.v.
template <int N>
Jet<N> chain(const Jet<N>& x, double f, double fp, double fpp) {
    Jet<N> r;
    r.v = f;
    for (int a = 0; a < N; ++a) r.g[size_t(a)] = fp * x.g[size_t(a)];
    for (int a = 0; a < N; ++a)
        for (int b = a; b < N; ++b) {
            double v = fp * x.h[size_t(a)][size_t(b)] + fpp * x.g[size_t(a)] * x.g[size_t(b)];
            r.h[size_t(a)][size_t(b)] = v;
            r.h[size_t(b)][size_t(a)] = v;
        }
    return r;
}

template <int N>
Jet<N> operator/(const Jet<N>& x, const Jet<N>& y) {
    return x * chain(y, 1.0 / y.v, -1.0 / (y.v * y.v), 2.0 / (y.v * y.v * y.v));
}
template <int N>
Jet<N> operator*(double c, const Jet<N>& x) { return Jet<N>(c) * x; }
template <int N>
Jet<N> operator*(const Jet<N>& x, double c) { return x * Jet<N>(c); }
template <int N>
Jet<N> operator+(double c, const Jet<N>& x) { return Jet<N>(c) + x; }
template <int N>
Jet<N> operator+(const Jet<N>& x, double c) { return x + Jet<N>(c); }
template <int N>
Jet<N> operator-(double c, const Jet<N>& x) { return Jet<N>(c) - x; }
template <int N>
Jet<N> operator-(const Jet<N>& x, double c) { return x - Jet<N>(c); }
template <int N>
Jet<N> operator/(double c, const Jet<N>& x) { return Jet<N>(c) / x; }
template <int N>
Jet<N> operator/(const Jet<N>& x, double c) { return x * Jet<N>(1.0 / c); }

template <int N>
Jet<N> exp(const Jet<N>& x) {
    double e = std::exp(x.v);
    return chain(x, e, e, e);
}
template <int N>
Jet<N> log(const Jet<N>& x) {
    return chain(x, std::log(x.v), 1.0 / x.v, -1.0 / (x.v * x.v));
}
template <int N>
Jet<N> sqrt(const Jet<N>& x) {
    double s = std::sqrt(x.v);
    return chain(x, s, 0.5 / s, -0.25 / (s * x.v));
}
template <int N>
Jet<N> pow(const Jet<N>& x, double p) {
    double f = std::pow(x.v, p);
    return chain(x, f, p * f / x.v, p * (p - 1.0) * f / (x.v * x.v));
}
template <int N>
Jet<N> sin(const Jet<N>& x) { return chain(x, std::sin(x.v), std::cos(x.v), -std::sin(x.v)); }
template <int N>
Jet<N> cos(const Jet<N>& x) { return chain(x, std::cos(x.v), -std::sin(x.v), -std::cos(x.v)); }

using Jet2 = Jet<2>;
using Jet3 = Jet<3>;

template <int N>
double jet_laplacian(const Jet<N>& x) {
    double acc = 0.0;
    for (int a = 0; a < N; ++a) acc += x.h[size_t(a)][size_t(a)];
    return acc;
}

template <int N>
double jet_hessian_frobenius2(const Jet<N>& x) {
    double acc = 0.0;
    for (int a = 0; a < N; ++a)
        for (int b = 0; b < N; ++b) acc += x.h[size_t(a)][size_t(b)] * x.h[size_t(a)][size_t(b)];
    return acc;
}

}  // namespace hal
