#include "hal/fixtures.hpp"

#include <cmath>
#include <map>
#include <random>

namespace hal {

ScalarField Fixture::sample(const Grid& g) const {
    if (g.dim != dim) throw std::invalid_argument("fixture " + name + ": dim mismatch");
    ScalarField out(g);
    const double h = g.min_spacing();
    for (size_t idx = 0; idx < g.size(); ++idx) {
        auto p = g.point(idx);
        double r = std::sqrt(sqr(p[0]) + sqr(p[1]) + (dim == 3 ? sqr(p[2]) : 0.0));
        if (singular && r < 0.5 * h) {
            out.values[idx] = singular_cell_average(g.cell_volume());
            continue;
        }
        out.values[idx] = (dim == 2) ? jet(p[0], p[1]).v : jet(p[0], p[1], p[2]).v;
    }
    return out;
}

FormField Fixture::gradient_field(const Grid& g) const {
    if (g.dim != dim) throw std::invalid_argument("fixture " + name + ": dim mismatch");
    FormField out(g, 1);
    for (size_t idx = 0; idx < g.size(); ++idx) {
        auto p = g.point(idx);
        if (dim == 2) {
            Jet2 j = jet(p[0], p[1]);
            out.components[0].values[idx] = j.g[0];
            out.components[1].values[idx] = j.g[1];
        } else {
            Jet3 j = jet(p[0], p[1], p[2]);
            for (int d = 0; d < 3; ++d) out.components[size_t(d)].values[idx] = j.g[size_t(d)];
        }
    }
    return out;
}

ScalarField Fixture::laplacian_field(const Grid& g) const {
    if (g.dim != dim) throw std::invalid_argument("fixture " + name + ": dim mismatch");
    ScalarField out(g);
    for (size_t idx = 0; idx < g.size(); ++idx) {
        auto p = g.point(idx);
        out.values[idx] = (dim == 2) ? jet_laplacian(jet(p[0], p[1])) : jet_laplacian(jet(p[0], p[1], p[2]));
    }
    return out;
}

namespace {

template <int N>
Jet<N> poly_bump(const Jet<N>& r2, double rho) {
    Jet<N> w = 1.0 - (1.0 / (rho * rho)) * r2;
    if (w.v <= 0.0) return Jet<N>(0.0);
    return w * w * w * w;
}

Jet2 pb2(const Jet2& X, const Jet2& Y, double cx, double cy, double rho) {
    Jet2 dx = X - cx, dy = Y - cy;
    return poly_bump(dx * dx + dy * dy, rho);
}

std::vector<Fixture> build_catalog() {
    std::vector<Fixture> cat;

    auto add = [&](Fixture f) { cat.push_back(std::move(f)); };

    {
        Fixture f;
        f.name = "gaussian-bump";
        f.description = "exp(-|x|^2 / 0.28^2); tail below 1e-8 at the box edge";
        f.expr2 = [](const Jet2& X, const Jet2& Y) {
            return exp((-1.0 / 0.0784) * (X * X + Y * Y));
        };
        add(f);
    }
    {
        Fixture f;
        f.name = "poly-bump";
        f.description = "(1-|x/0.8|^2)_+^4";
        f.expr2 = [](const Jet2& X, const Jet2& Y) { return pb2(X, Y, 0.0, 0.0, 0.8); };
        add(f);
    }
    {
        Fixture f;
        f.name = "offset-poly-bump";
        f.description = "(1-|x-c|^2/0.45^2)_+^4 at c=(0.3,-0.2)";
        f.expr2 = [](const Jet2& X, const Jet2& Y) { return pb2(X, Y, 0.3, -0.2, 0.45); };
        add(f);
    }
    auto add_dipole = [&](const std::string& name, double ax, double ay, double rho) {
        Fixture f;
        f.name = name;
        f.description = "bump(x-a) - bump(x+a), a=(" + std::to_string(ax) + "," + std::to_string(ay) + ")";
        f.mean_zero = true;
        f.hardy_member = true;
        f.expr2 = [ax, ay, rho](const Jet2& X, const Jet2& Y) {
            return pb2(X, Y, ax, ay, rho) - pb2(X, Y, -ax, -ay, rho);
        };
        add(f);
    };
    add_dipole("dipole", 0.4, 0.0, 0.35);
    add_dipole("dipole-near", 0.15, 0.0, 0.3);
    add_dipole("dipole-wide", 0.55, 0.25, 0.3);
    {
        Fixture f;
        f.name = "quadrupole";
        f.description = "four alternating bumps at (+-0.4, +-0.4)";
        f.mean_zero = true;
        f.hardy_member = true;
        f.expr2 = [](const Jet2& X, const Jet2& Y) {
            return pb2(X, Y, 0.4, 0.4, 0.3) - pb2(X, Y, -0.4, 0.4, 0.3) + pb2(X, Y, -0.4, -0.4, 0.3) -
                   pb2(X, Y, 0.4, -0.4, 0.3);
        };
        add(f);
    }
    {
        Fixture f;
        f.name = "dx-bump";
        f.description = "d/dx of (1-|x/0.7|^2)_+^4";
        f.mean_zero = true;
        f.hardy_member = true;
        f.expr2 = [](const Jet2& X, const Jet2& Y) {
            const double rho2 = 0.49;
            Jet2 w = 1.0 - (1.0 / rho2) * (X * X + Y * Y);
            if (w.v <= 0.0) return Jet2(0.0);
            return (-8.0 / rho2) * X * w * w * w;
        };
        add(f);
    }
    {
        Fixture f;
        f.name = "dy-bump";
        f.description = "d/dy of (1-|x/0.7|^2)_+^4";
        f.mean_zero = true;
        f.hardy_member = true;
        f.expr2 = [](const Jet2& X, const Jet2& Y) {
            const double rho2 = 0.49;
            Jet2 w = 1.0 - (1.0 / rho2) * (X * X + Y * Y);
            if (w.v <= 0.0) return Jet2(0.0);
            return (-8.0 / rho2) * Y * w * w * w;
        };
        add(f);
    }
    auto add_osc = [&](const std::string& name, double k) {
        Fixture f;
        f.name = name;
        f.description = "bump * sin(" + std::to_string(k) + " x) (odd in x)";
        f.mean_zero = true;
        f.hardy_member = true;
        f.expr2 = [k](const Jet2& X, const Jet2& Y) { return pb2(X, Y, 0.0, 0.0, 0.75) * sin(k * X); };
        add(f);
    };
    add_osc("osc-bump-4", 4.0);
    add_osc("osc-bump-8", 8.0);
    add_osc("osc-bump-13", 13.0);
    {
        Fixture f;
        f.name = "radial-sqrt";
        f.description = "|x|^(1/2)";
        f.expr2 = [](const Jet2& X, const Jet2& Y) { return pow(X * X + Y * Y, 0.25); };
        add(f);
    }
    {
        Fixture f;
        f.name = "radial-inv";
        f.description = "|x|^(-1), singular node replaced by its analytic cell average";
        f.singular = true;
        f.expr2 = [](const Jet2& X, const Jet2& Y) { return pow(X * X + Y * Y, -0.5); };
        f.singular_cell_average = [](double vol) {
            double rho = std::sqrt(vol / kPi);
            return 2.0 * kPi * rho / vol;  // int_{B_rho} |x|^-1 = 2 pi rho
        };
        add(f);
    }
    {
        Fixture f;
        f.name = "harmonic-affine";
        f.description = "x_1";
        f.expr2 = [](const Jet2& X, const Jet2&) { return X; };
        add(f);
    }
    {
        Fixture f;
        f.name = "harmonic-quad";
        f.description = "x_1^2 - x_2^2";
        f.expr2 = [](const Jet2& X, const Jet2& Y) { return X * X - Y * Y; };
        add(f);
    }
    {
        Fixture f;
        f.name = "counterexample-logsq";
        f.description = "(log r)^2 (x,y) with its antisymmetric coupling; see make_counterexample";
        f.vector_valued = true;
        f.singular = true;
        f.expr2 = [](const Jet2& X, const Jet2& Y) {  // |u| = (log r)^2 r as a scalar probe
            Jet2 r = sqrt(X * X + Y * Y);
            Jet2 L = log(r);
            return L * L * r;
        };
        f.singular_cell_average = [](double) { return 0.0; };
        add(f);
    }
    {
        Fixture f;
        f.name = "gaussian-bump-3d";
        f.dim = 3;
        f.description = "exp(-|x|^2 / 0.28^2), n = 3";
        f.expr3 = [](const Jet3& X, const Jet3& Y, const Jet3& Z) {
            return exp((-1.0 / 0.0784) * (X * X + Y * Y + Z * Z));
        };
        add(f);
    }
    {
        Fixture f;
        f.name = "poly-bump-3d";
        f.dim = 3;
        f.description = "(1-|x/0.8|^2)_+^4, n = 3";
        f.expr3 = [](const Jet3& X, const Jet3& Y, const Jet3& Z) {
            return poly_bump(X * X + Y * Y + Z * Z, 0.8);
        };
        add(f);
    }
    return cat;
}

}  // namespace

const std::vector<Fixture>& fixture_catalog() {
    static const std::vector<Fixture> cat = build_catalog();
    return cat;
}

const Fixture& get_fixture(const std::string& name) {
    for (const auto& f : fixture_catalog())
        if (f.name == name) return f;
    throw std::invalid_argument("unknown fixture: " + name);
}

FormField random_smooth_one_form(const Grid& g, uint64_t seed, int max_mode) {
    if (g.dim != 2) throw std::invalid_argument("random_smooth_one_form: 2-d only");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd;
    std::uniform_real_distribution<double> ph(0.0, 2.0 * kPi);
    FormField w(g, 1);
    for (int c = 0; c < 2; ++c) {
        struct Wave {
            double kx, ky, amp, phase;
        };
        std::vector<Wave> waves;
        for (int kx = 0; kx <= max_mode; ++kx)
            for (int ky = -max_mode; ky <= max_mode; ++ky) {
                if (kx == 0 && ky <= 0) continue;
                double damp = 1.0 / (1.0 + double(kx * kx + ky * ky));
                waves.push_back({kPi * kx / 1.25, kPi * ky / 1.25, nd(rng) * damp, ph(rng)});
            }
        double offset = nd(rng);
        ScalarField& comp = w.components[size_t(c)];
        for (size_t idx = 0; idx < g.size(); ++idx) {
            auto p = g.point(idx);
            double acc = offset;
            for (const auto& wv : waves) acc += wv.amp * std::cos(wv.kx * p[0] + wv.ky * p[1] + wv.phase);
            comp.values[idx] = acc;
        }
    }
    return w;
}

ScalarField jacobian_field(const Fixture& u, const Fixture& v, const Grid& g) {
    if (g.dim != 2 || u.dim != 2 || v.dim != 2) throw std::invalid_argument("jacobian_field: 2-d only");
    ScalarField out(g);
    for (size_t idx = 0; idx < g.size(); ++idx) {
        auto p = g.point(idx);
        Jet2 ju = u.jet(p[0], p[1]);
        Jet2 jv = v.jet(p[0], p[1]);
        out.values[idx] = ju.g[0] * jv.g[1] - ju.g[1] * jv.g[0];
    }
    return out;
}

}  // namespace hal
