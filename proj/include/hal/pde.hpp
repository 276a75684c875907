#pragma once

#include "hal/differential.hpp"
#include "hal/jet.hpp"
#include "hal/quadrature.hpp"

namespace hal {

/// so(m)-valued 1-form: only the i < j entries are stored, so antisymmetry is
/// exact by construction.
struct ConnectionForm {
    Grid grid;
    int m = 2;
    std::vector<FormField> upper;  // entry (i,j), i < j, flattened

    ConnectionForm() = default;
    ConnectionForm(const Grid& g, int m_) : grid(g), m(m_) {
        upper.assign(size_t(m_ * (m_ - 1) / 2), FormField(g, 1));
    }

    size_t slot(int i, int j) const;          // i < j
    double entry(int i, int j, int comp, size_t node) const;  // signed lookup
    FormField& at_upper(int i, int j) { return upper[slot(i, j)]; }
    const FormField& at_upper(int i, int j) const { return upper[slot(i, j)]; }

    /// |Omega|^2 summed over matrix entries and form components.
    ScalarField magnitude2() const;
};

/// Per-node SO(m) matrices.
struct GaugeField {
    Grid grid;
    int m = 2;
    std::vector<double> matrices;  // node-major, row-major m x m

    GaugeField() = default;
    GaugeField(const Grid& g, int m_) : grid(g), m(m_), matrices(g.size() * size_t(m_ * m_), 0.0) {}

    double& at(size_t node, int r, int c) { return matrices[node * size_t(m * m) + size_t(r * m + c)]; }
    double at(size_t node, int r, int c) const { return matrices[node * size_t(m * m) + size_t(r * m + c)]; }

    void check(double orth_tol = 1e-10, double det_tol = 1e-8) const;

    static GaugeField identity(const Grid& g, int m);
    /// m = 2 rotation by the angle field psi(x).
    static GaugeField rotation2(const Grid& g, const std::function<double(const std::array<double, 3>&)>& psi);
};

/// General matrix-valued 1-form (gauge transforms of connections need not be
/// antisymmetric pointwise once dP is discretized).
struct MatrixFormField {
    Grid grid;
    int m = 2;
    std::vector<ScalarField> comps;  // [axis][i][j] flattened: axis*m*m + i*m + j

    MatrixFormField() = default;
    MatrixFormField(const Grid& g, int m_) : grid(g), m(m_) {
        comps.assign(size_t(g.dim * m_ * m_), ScalarField(g));
    }
    ScalarField& at(int axis, int i, int j) { return comps[size_t((axis * m + i) * m + j)]; }
    const ScalarField& at(int axis, int i, int j) const { return comps[size_t((axis * m + i) * m + j)]; }

    double antisymmetry_defect() const;  // max over nodes of |A + A^T| entries
};

/// Interior-node magnitude of -Lap u - Omega.grad u - f, plus the raw vector.
struct ResidualField {
    ScalarField magnitude;
    VectorField vec;
    /// nodes within one stencil layer of the box edge carry no residual
    static bool interior(const Grid& g, size_t idx);
};

ResidualField residual(const VectorField& u, const ConnectionForm& omega, const VectorField& f);

/// Omega_P = P^{-1} dP + P^{-1} Omega P, with the antisymmetry defect of the
/// discrete dP reported rather than hidden.
MatrixFormField gauge_transform(const ConnectionForm& omega, const GaugeField& P);

/// d*(P^{-1} du) - <Omega_P, P^{-1} du> - P^{-1} f at interior nodes.
ResidualField gauge_residual(const VectorField& u, const ConnectionForm& omega, const GaugeField& P,
                             const VectorField& f);

// ---------------------------------------------------------------------------
// the explicit low-regularity solution family
// ---------------------------------------------------------------------------

/// u(x,y) = (log r)^2 (x, y) with its antisymmetric coupling, sampled outside
/// the mask radius eps; closed-form jets are exposed for oracle use.
struct Counterexample {
    VectorField u;
    ConnectionForm omega;
    double eps = 0.0;

    static Jet2 u_component(int comp, double x, double y);
    static double omega_coefficient(double r);  // 2(1+2 log r)/(r log r)^2
    /// Energy of the truncated Hessian: closed form 2 pi (16 X^3/3 - 4 X^2 + 4 X - 16/3), X = |log eps|.
    static double hessian_energy_closed_form(double eps);
    /// The same energy by radial quadrature of the exact |Hess u|^2 = (16 L^2 + 8 L + 4)/r^2.
    static double hessian_energy_quadrature(double eps, int panels = 4096);
    /// weak-L^2 norm of |Hess u| over the annulus (eps, e^{-1}), by 1-d level-set scan.
    static double hessian_weak_l2(double eps, int samples = 20000);
};

Counterexample make_counterexample(const Grid& grid, double eps);

struct DecayProfile {
    std::vector<double> radii;
    std::vector<double> energies;  // ||grad u||^2_{L^2(B_r)}
    double kappa = 0.0;            // fitted log-log slope
};

/// r -> ||grad u||^2_{L^2(B_r(center))} over dyadic radii with the fitted
/// exponent kappa; needs >= 3 radii.
DecayProfile decay_profile(const VectorField& u, const std::array<double, 3>& center,
                           std::vector<double> radii);

/// target exponent n - 2 + 2 gamma with gamma = 2 - n/p
inline double decay_target_exponent(int n, double p) { return double(n) - 2.0 + 2.0 * (2.0 - double(n) / p); }

}  // namespace hal
