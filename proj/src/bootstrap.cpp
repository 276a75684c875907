#include "hal/bootstrap.hpp"

#include <cmath>

namespace hal {

Rational exponent_step(const Rational& s, const BootstrapParams& params) {
    params.validate();
    return 2 * params.n * s / (params.n * s + 2 * (params.n - params.p));
}

ExponentSequence exponent_iterate(const Rational& s1, const BootstrapParams& params, int k_max) {
    params.validate();
    if (!(s1 > 1 && s1 < params.s_limit()))
        throw std::invalid_argument("exponent_iterate: s1 must lie in (1, 2p/n)");
    if (k_max < 1) throw std::invalid_argument("exponent_iterate: k_max >= 1");

    ExponentSequence out;
    out.seq.push_back(s1);
    for (int k = 1; k < k_max; ++k) {
        Rational next = exponent_step(out.seq.back(), params);
        if (!(next > out.seq.back())) out.strictly_increasing = false;
        out.seq.push_back(next);
    }
    out.seq_d.reserve(out.seq.size());
    for (const auto& s : out.seq) out.seq_d.push_back(double(s));
    out.final_gap = params.s_limit() - out.seq.back();
    return out;
}

DecaySequence decay_iterate(double a1, double lambda, double Lambda, double K, int k_max) {
    if (!(lambda > 0.0 && lambda < Lambda && Lambda < 1.0))
        throw std::invalid_argument("decay_iterate: needs 0 < lambda < Lambda < 1 (small-delta regime)");
    if (k_max < 2) throw std::invalid_argument("decay_iterate: k_max >= 2");

    DecaySequence out;
    const QuadFloat L = lambda, G = Lambda, Kq = K, A = a1;
    // slot p holds a_{p+1}; the step producing a_{p+1} forces with Lambda^p K,
    // so a_{p+1} = lambda^p a_1 + K Lambda (Lambda^p - lambda^p)/(Lambda - lambda)
    out.direct.push_back(A);
    out.closed_form.push_back(A);
    QuadFloat a = A;
    for (int p = 1; p < k_max; ++p) {
        a = L * a + pow(G, p) * Kq;
        out.direct.push_back(a);
        QuadFloat cf = pow(L, p) * A + Kq * G * (pow(G, p) - pow(L, p)) / (G - L);
        out.closed_form.push_back(cf);
        double rel = double(abs(a - cf) / (abs(cf) > 0 ? abs(cf) : QuadFloat(1)));
        out.max_rel_gap = std::max(out.max_rel_gap, rel);
    }
    const QuadFloat C = A + Kq * G / (G - L);
    out.bound_C = double(C);
    // a_{p+1} <= C Lambda^p: both closed-form terms sit below Lambda^p C
    for (size_t p = 0; p < out.direct.size(); ++p)
        if (out.direct[p] > C * pow(G, double(p)) * (1 + QuadFloat(1e-25))) out.dominated = false;
    return out;
}

const PhiEntry* PhiTable::find(const std::array<double, 3>& z, double sigma, double tol) const {
    for (const auto& e : entries) {
        if (std::abs(e.sigma - sigma) > tol * std::max(1.0, sigma)) continue;
        if (dist(e.center, z, dim) <= tol * std::max(1.0, sigma)) return &e;
    }
    return nullptr;
}

namespace {

bool ball_in_union(int dim, const Ball& a, const Ball& b1, const Ball& b2) {
    // sampled containment: ring + interior samples of a must land in b1 or b2
    auto inside = [&](const std::array<double, 3>& p) {
        return dist(p, b1.center, dim) <= b1.radius + 1e-12 || dist(p, b2.center, dim) <= b2.radius + 1e-12;
    };
    const int nang = 48;
    for (double frac : {1.0, 0.7, 0.35}) {
        for (int i = 0; i < nang; ++i) {
            double th = 2.0 * kPi * i / nang;
            std::array<double, 3> p{a.center[0] + frac * a.radius * std::cos(th),
                                    a.center[1] + frac * a.radius * std::sin(th), a.center[2]};
            if (!inside(p)) return false;
            if (dim == 3) {
                std::array<double, 3> q{a.center[0] + frac * a.radius * std::cos(th), a.center[1],
                                        a.center[2] + frac * a.radius * std::sin(th)};
                if (!inside(q)) return false;
            }
        }
    }
    return inside(a.center);
}

bool balls_intersect(int dim, const Ball& a, const Ball& b) {
    return dist(a.center, b.center, dim) <= a.radius + b.radius;
}

}  // namespace

AbsorptionVerdict absorption_check(const PhiTable& table, double k, double Gamma, double eps0,
                                   const Ball& root) {
    if (!(Gamma > 0.0)) throw std::invalid_argument("absorption_check: Gamma > 0");

    // screen: monotone under inclusion and subadditive on sampled covers
    const double slack = 1e-9;
    for (const auto& A : table.entries) {
        for (const auto& B : table.entries) {
            if (&A == &B) continue;
            bool contained = dist(A.center, B.center, table.dim) + A.sigma <= B.sigma + 1e-12;
            if (contained && A.value > B.value * (1.0 + slack) + slack)
                throw std::invalid_argument("absorption_check: table fails the monotonicity screen");
            for (const auto& C : table.entries) {
                if (&C == &A || &C == &B) continue;
                if (!balls_intersect(table.dim, {A.center, A.sigma}, {B.center, B.sigma})) continue;
                if (!balls_intersect(table.dim, {A.center, A.sigma}, {C.center, C.sigma})) continue;
                if (!ball_in_union(table.dim, {A.center, A.sigma}, {B.center, B.sigma}, {C.center, C.sigma}))
                    continue;
                if (A.value > (B.value + C.value) * (1.0 + slack) + slack)
                    throw std::invalid_argument("absorption_check: table fails the subadditivity screen");
            }
        }
    }

    AbsorptionVerdict v;
    v.screen_ok = true;
    v.hypothesis_ok = true;
    for (const auto& full : table.entries) {
        if (dist(full.center, root.center, table.dim) + 2.0 * full.sigma > root.radius + 1e-12) continue;
        const PhiEntry* half = table.find(full.center, full.sigma / 2.0);
        if (!half) continue;
        double lhs = std::pow(full.sigma, k) * half->value;
        double rhs = eps0 * std::pow(full.sigma, k) * full.value + Gamma;
        v.worst_excess = std::max(v.worst_excess, lhs - rhs);
        if (lhs > rhs * (1.0 + slack)) v.hypothesis_ok = false;
        ++v.pairs_checked;
    }
    const PhiEntry* rootHalf = table.find(root.center, root.radius / 2.0);
    if (rootHalf) v.conclusion_ratio = std::pow(root.radius, k) * rootHalf->value / Gamma;
    return v;
}

}  // namespace hal
