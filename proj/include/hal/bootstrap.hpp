#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include "hal/quadrature.hpp"

namespace hal {

using Rational = boost::multiprecision::cpp_rational;
using QuadFloat = boost::multiprecision::cpp_bin_float_quad;

/// n >= 2 and p in (n/2, n), so gamma = 2 - n/p in (0,1) and the exponent
/// ceiling 2p/n in (1,2).
struct BootstrapParams {
    int n = 3;
    Rational p = 2;

    Rational gamma() const { return 2 - Rational(n) / p; }
    Rational s_limit() const { return 2 * p / n; }

    void validate() const {
        if (n < 2) throw std::invalid_argument("BootstrapParams: n >= 2");
        if (!(2 * p > n && p < n)) throw std::invalid_argument("BootstrapParams: p must lie in (n/2, n)");
    }
};

/// One step of the integrability recursion s -> 2 n s / (n s + 2(n - p)).
Rational exponent_step(const Rational& s, const BootstrapParams& params);

struct ExponentSequence {
    std::vector<Rational> seq;
    std::vector<double> seq_d;
    bool strictly_increasing = true;
    Rational final_gap;  // s_limit - s_last, exact
};

/// The full sequence from s1 in (1, 2p/n), kept in exact rational arithmetic
/// (the map is Moebius, so representations grow linearly in k).
ExponentSequence exponent_iterate(const Rational& s1, const BootstrapParams& params, int k_max);

struct DecaySequence {
    std::vector<QuadFloat> direct;       // equality-RHS iteration a_{k+1} = lambda a_k + Lambda^k K
    std::vector<QuadFloat> closed_form;  // lambda^k a_1 + K Lambda (Lambda^k - lambda^k)/(Lambda - lambda)
    double max_rel_gap = 0.0;
    double bound_C = 0.0;  // a_1 + K Lambda/(Lambda - lambda)
    bool dominated = true;  // a_k <= C Lambda^{k-1} for every k
};

/// Requires 0 < lambda < Lambda < 1 (the small-delta regime).
DecaySequence decay_iterate(double a1, double lambda, double Lambda, double K, int k_max);

/// lambda(delta) = (1 + delta)/2^n; largest delta keeping lambda < Lambda = 2^{-(n-2+2 gamma)}.
inline double decay_lambda(int n, double delta) { return (1.0 + delta) / std::pow(2.0, n); }
inline double decay_Lambda(int n, double gamma) { return std::pow(2.0, -(double(n) - 2.0 + 2.0 * gamma)); }
inline double max_admissible_delta(int n, double gamma) { return std::pow(2.0, 2.0 - 2.0 * gamma) - 1.0; }

// ---------------------------------------------------------------------------
// absorption lemma verification on finite ball tables
// ---------------------------------------------------------------------------

struct PhiEntry {
    std::array<double, 3> center{0, 0, 0};
    double sigma = 0.0;
    double value = 0.0;
};

struct PhiTable {
    int dim = 2;
    std::vector<PhiEntry> entries;

    const PhiEntry* find(const std::array<double, 3>& z, double sigma, double tol = 1e-9) const;
};

struct AbsorptionVerdict {
    bool screen_ok = false;      // monotone + sampled subadditivity
    bool hypothesis_ok = false;  // sigma^k phi(B_{sigma/2}) <= eps0 sigma^k phi(B_sigma) + Gamma on all scanned pairs
    double worst_excess = 0.0;   // max over pairs of lhs - (eps0 rhs + Gamma)
    double conclusion_ratio = 0.0;  // rho^k phi(B_{rho/2}(y)) / Gamma
    int pairs_checked = 0;
};

/// Verifies the absorption hypothesis over every tabled (z, sigma) pair with
/// B_{2 sigma}(z) inside the root ball, after screening the table for
/// monotonicity and sampled subadditivity. Throws if the screen fails.
AbsorptionVerdict absorption_check(const PhiTable& table, double k, double Gamma, double eps0,
                                   const Ball& root);

}  // namespace hal
