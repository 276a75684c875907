#pragma once

#include <bit>
#include <cstdio>
#include <fstream>
#include <string>
#include <variant>

#include <json.hpp>

#include "hal/field.hpp"

namespace hal {

static_assert(std::endian::native == std::endian::little, "field files are little-endian");

using FieldVariant = std::variant<ScalarField, VectorField, FormField>;

namespace detail {

inline nlohmann::json grid_sidecar(const Grid& g, int components, nlohmann::json degree) {
    nlohmann::json j;
    j["dim"] = g.dim;
    j["shape"] = std::vector<int>(g.shape.begin(), g.shape.begin() + g.dim);
    j["spacing"] = std::vector<double>(g.spacing.begin(), g.spacing.begin() + g.dim);
    j["origin"] = std::vector<double>(g.origin.begin(), g.origin.begin() + g.dim);
    j["components"] = components;
    j["degree"] = degree;
    return j;
}

inline Grid grid_from_sidecar(const nlohmann::json& j) {
    Grid g;
    g.dim = j.at("dim").get<int>();
    auto sh = j.at("shape").get<std::vector<int>>();
    auto sp = j.at("spacing").get<std::vector<double>>();
    auto og = j.at("origin").get<std::vector<double>>();
    for (int d = 0; d < g.dim; ++d) {
        g.shape[size_t(d)] = sh[size_t(d)];
        g.spacing[size_t(d)] = sp[size_t(d)];
        g.origin[size_t(d)] = og[size_t(d)];
    }
    if (g.dim == 2) g.shape[2] = 1;
    g.validate();
    return g;
}

inline void write_payload(const std::string& path, const std::vector<const std::vector<double>*>& blocks) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    for (const auto* b : blocks)
        out.write(reinterpret_cast<const char*>(b->data()), std::streamsize(b->size() * sizeof(double)));
}

inline std::vector<double> read_payload(const std::string& path, size_t count) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::vector<double> v(count);
    in.read(reinterpret_cast<char*>(v.data()), std::streamsize(count * sizeof(double)));
    if (size_t(in.gcount()) != count * sizeof(double)) throw std::runtime_error("short read on " + path);
    return v;
}

}  // namespace detail

/// Writes <base>.f64 (components concatenated, row-major, LE doubles) and
/// <base>.json. Round trips are bit exact.
inline void write_field(const std::string& base, const FieldVariant& field) {
    nlohmann::json sidecar;
    std::vector<const std::vector<double>*> blocks;
    if (std::holds_alternative<ScalarField>(field)) {
        const auto& f = std::get<ScalarField>(field);
        sidecar = detail::grid_sidecar(f.grid, 1, 0);
        blocks.push_back(&f.values);
    } else if (std::holds_alternative<VectorField>(field)) {
        const auto& f = std::get<VectorField>(field);
        sidecar = detail::grid_sidecar(f.grid, f.m(), nullptr);
        for (const auto& c : f.components) blocks.push_back(&c.values);
    } else {
        const auto& f = std::get<FormField>(field);
        sidecar = detail::grid_sidecar(f.grid, int(f.components.size()), f.degree);
        for (const auto& c : f.components) blocks.push_back(&c.values);
    }
    detail::write_payload(base + ".f64", blocks);
    std::ofstream js(base + ".json");
    if (!js) throw std::runtime_error("cannot open " + base + ".json for writing");
    js << sidecar.dump(2) << "\n";
}

inline FieldVariant read_field(const std::string& base) {
    std::ifstream js(base + ".json");
    if (!js) throw std::runtime_error("cannot open " + base + ".json");
    nlohmann::json sidecar = nlohmann::json::parse(js);
    Grid g = detail::grid_from_sidecar(sidecar);
    const int components = sidecar.at("components").get<int>();
    auto payload = detail::read_payload(base + ".f64", g.size() * size_t(components));
    auto take = [&](int c) {
        return std::vector<double>(payload.begin() + long(g.size()) * c, payload.begin() + long(g.size()) * (c + 1));
    };
    if (sidecar.at("degree").is_null()) {
        VectorField f(g, components);
        for (int c = 0; c < components; ++c) f.components[size_t(c)].values = take(c);
        return f;
    }
    const int degree = sidecar.at("degree").get<int>();
    if (degree == 0 && components == 1) {
        ScalarField f(g);
        f.values = take(0);
        return f;
    }
    FormField f(g, degree);
    for (int c = 0; c < components; ++c) f.components[size_t(c)].values = take(c);
    return f;
}

inline ScalarField read_scalar_field(const std::string& base) {
    auto v = read_field(base);
    if (std::holds_alternative<ScalarField>(v)) return std::get<ScalarField>(v);
    if (std::holds_alternative<FormField>(v)) {
        const auto& f = std::get<FormField>(v);
        if (f.degree == 0) return f.components[0];
    }
    throw std::runtime_error(base + " does not hold a scalar field");
}

}  // namespace hal
