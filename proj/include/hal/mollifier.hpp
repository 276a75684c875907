#pragma once

#include <functional>
#include <vector>

#include "hal/common.hpp"

namespace hal {

/// Radial smooth bump phi supported in the unit ball; phi_t(x) = t^{-n} phi(x/t).
/// `mass` and `lipschitz` are computed properties of the profile. The default
/// profile is c (1-|x|^2)^4 with c chosen so that sup|phi'| = 1; the unit-mass
/// variant rescales so that the convolution reproduces constants.
struct Mollifier {
    int dim = 2;
    std::function<double(double)> profile;  // radial profile, zero for r >= 1
    double mass = 0.0;
    double lipschitz = 0.0;
    std::vector<double> scales;

    static std::vector<double> dyadic_scales(int jmin = -10, int jmax = 4) {
        std::vector<double> s;
        for (int j = jmin; j <= jmax; ++j) s.push_back(std::pow(2.0, j));
        return s;
    }

    static std::vector<double> local_scales(int jmin = -10) { return dyadic_scales(jmin, -1); }

    /// integral over R^n of c (1-r^2)^4, c = 1
    static double poly_bump_raw_mass(int n) {
        if (n == 2) return kPi / 5.0;                    // 2 pi * 1/10
        return 4.0 * kPi * 128.0 / 3465.0;               // n = 3
    }

    /// sup_r |d/dr (1-r^2)^4| = 8 max r(1-r^2)^3 attained at r = 1/sqrt(7)
    static double poly_bump_raw_lipschitz() {
        const double r = 1.0 / std::sqrt(7.0);
        return 8.0 * r * std::pow(6.0 / 7.0, 3);
    }

    static Mollifier poly_bump(int dim, bool unit_mass = false, std::vector<double> scale_list = {}) {
        Mollifier m;
        m.dim = dim;
        const double raw_mass = poly_bump_raw_mass(dim);
        const double raw_lip = poly_bump_raw_lipschitz();
        const double c = unit_mass ? 1.0 / raw_mass : 1.0 / raw_lip;
        m.profile = [c](double r) { return r >= 1.0 ? 0.0 : c * std::pow(1.0 - r * r, 4); };
        m.mass = c * raw_mass;
        m.lipschitz = c * raw_lip;
        m.scales = scale_list.empty() ? dyadic_scales() : std::move(scale_list);
        return m;
    }

    /// The annular profile C theta(4r) r^{alpha-n} used by the dyadic kernel
    /// split; C normalizes sup|psi'| to 1. Radial, supported in (1/4, 1).
    static Mollifier proof_annulus(int dim, double alpha, std::vector<double> scale_list = {}) {
        Mollifier m;
        m.dim = dim;
        auto raw = [alpha, dim](double r) {
            if (r <= 0.25 || r >= 1.0) return 0.0;
            double z = 4.0 * r;
            double theta = smooth_cutoff_12(z / 2.0) - smooth_cutoff_12(z);
            return theta * std::pow(r, alpha - dim);
        };
        // numeric sup of |psi'| and mass on a fine radial grid
        const int nGrid = 40000;
        double lip = 0.0, mass = 0.0;
        const double dr = 1.0 / nGrid;
        double prev = raw(0.0);
        for (int i = 1; i <= nGrid; ++i) {
            double r = i * dr;
            double cur = raw(r);
            lip = std::max(lip, std::abs(cur - prev) / dr);
            mass += cur * std::pow(r - 0.5 * dr, dim - 1) * dr;
            prev = cur;
        }
        mass *= unit_sphere_area(dim);
        const double c = 1.0 / lip;
        m.profile = [raw, c](double r) { return c * raw(r); };
        m.mass = c * mass;
        m.lipschitz = 1.0;
        m.scales = scale_list.empty() ? dyadic_scales() : std::move(scale_list);
        return m;
    }

    double phi_t(double dist, double t) const {
        return std::pow(t, -double(dim)) * profile(dist / t);
    }
};

}  // namespace hal
