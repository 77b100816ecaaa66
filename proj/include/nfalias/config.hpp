#pragma once

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "error.hpp"
#include "geometry.hpp"
#include "io.hpp"

namespace nfalias {

/// Lattice description as written in a config file. All lengths are in
/// wavelengths; `origin` is the position of the first element.
struct ArraySpec {
    Vec3 origin{};
    std::vector<Vec3> axes;
    std::vector<std::size_t> counts;
    std::vector<double> spacings_lambda;

    Vec3 center_lambda() const {
        Vec3 c = origin;
        for (std::size_t j = 0; j < axes.size(); ++j) {
            c += (0.5 * static_cast<double>(counts[j] - 1) * spacings_lambda[j]) * axes[j];
        }
        return c;
    }

    static ArraySpec centered(Vec3 center, std::vector<Vec3> axes, std::vector<std::size_t> counts,
                              std::vector<double> spacings) {
        ArraySpec s{center, std::move(axes), std::move(counts), std::move(spacings)};
        for (std::size_t j = 0; j < s.axes.size(); ++j) {
            s.origin -= (0.5 * static_cast<double>(s.counts[j] - 1) * s.spacings_lambda[j]) * s.axes[j];
        }
        return s;
    }
};

struct Thresholds {
    double epsilon_lambda = 0.1;
    double floor_db = -40.0;
    double support_db = -20.0;
    double oracle_ratio = 0.5;
    double oracle_floor_db = -30.0;
    std::size_t oversample = 8;
};

enum class Product { image, partial_tx, partial_rx, mask, spectrum, sweep };
enum class SweepParameter { spacing, length, range, dimensionality };

inline const char* to_string(Product p) {
    switch (p) {
        case Product::image: return "image";
        case Product::partial_tx: return "partial_tx";
        case Product::partial_rx: return "partial_rx";
        case Product::mask: return "mask";
        case Product::spectrum: return "spectrum";
        case Product::sweep: return "sweep";
    }
    return "?";
}

inline const char* to_string(SweepParameter p) {
    switch (p) {
        case SweepParameter::spacing: return "spacing";
        case SweepParameter::length: return "length";
        case SweepParameter::range: return "range";
        case SweepParameter::dimensionality: return "dimensionality";
    }
    return "?";
}

inline Product parse_product(const std::string& s) {
    for (auto p : {Product::image, Product::partial_tx, Product::partial_rx, Product::mask, Product::spectrum,
                   Product::sweep}) {
        if (s == to_string(p)) return p;
    }
    throw ConfigError("outputs: unknown product '" + s + "'");
}

inline SweepParameter parse_sweep_parameter(const std::string& s) {
    for (auto p : {SweepParameter::spacing, SweepParameter::length, SweepParameter::range,
                   SweepParameter::dimensionality}) {
        if (s == to_string(p)) return p;
    }
    throw ConfigError("sweep.parameter: unknown parameter '" + s + "' (spacing|length|range|dimensionality)");
}

struct SweepSpec {
    SweepParameter parameter = SweepParameter::spacing;
    std::vector<double> values;
};

/// Fully resolved scenario. Lengths are in wavelengths; the physical
/// wavelength `lambda` scales them when geometry objects are built.
struct RunConfig {
    std::string name = "run";
    double lambda = 1.0;
    ArraySpec tx;
    ArraySpec rx;
    Vec3 scatterer{};
    Complex reflectivity{1.0, 0.0};
    std::vector<double> grid_min;
    std::vector<double> grid_max;
    std::vector<std::size_t> grid_resolution;
    std::vector<Product> outputs;
    Thresholds thresholds;
    std::optional<Vec3> spectrum_tentative;  // defaults to the scatterer
    std::optional<SweepSpec> sweep;

    WaveParams wave() const { return WaveParams(lambda, thresholds.epsilon_lambda); }

    ArrayGeometry array(const ArraySpec& s, ArrayRole role) const {
        std::vector<double> sp;
        for (double d : s.spacings_lambda) sp.push_back(d * lambda);
        return ArrayGeometry(s.origin * lambda, s.axes, s.counts, std::move(sp), role);
    }
    ArrayGeometry tx_array() const { return array(tx, ArrayRole::transmit); }
    ArrayGeometry rx_array() const { return array(rx, ArrayRole::receive); }

    Scene scene() const { return Scene{scatterer * lambda, reflectivity}; }

    EvalGrid grid() const {
        std::vector<double> lo, hi;
        for (double v : grid_min) lo.push_back(v * lambda);
        for (double v : grid_max) hi.push_back(v * lambda);
        return EvalGrid(std::move(lo), std::move(hi), grid_resolution);
    }

    Vec3 spectrum_point() const { return spectrum_tentative.value_or(scatterer) * lambda; }

    bool wants(Product p) const { return std::find(outputs.begin(), outputs.end(), p) != outputs.end(); }
};

namespace detail {

using nlohmann::json;

inline const json& require(const json& obj, const std::string& key, const std::string& path) {
    if (!obj.is_object() || !obj.contains(key)) throw ConfigError(path + key + ": missing required field");
    return obj.at(key);
}

inline double as_number(const json& v, const std::string& path) {
    if (!v.is_number()) throw ConfigError(path + ": expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) throw ConfigError(path + ": must be finite");
    return d;
}

inline std::size_t as_count(const json& v, const std::string& path) {
    if (!v.is_number_integer() || v.get<long long>() < 1) throw ConfigError(path + ": expected a positive integer");
    return v.get<std::size_t>();
}

inline Vec3 as_vec(const json& v, const std::string& path) {
    if (!v.is_array() || v.size() < 2 || v.size() > 3) throw ConfigError(path + ": expected 2 or 3 coordinates");
    Vec3 out{as_number(v[0], path + "[0]"), as_number(v[1], path + "[1]"), 0.0};
    if (v.size() == 3) out.z = as_number(v[2], path + "[2]");
    return out;
}

inline void reject_unknown(const json& obj, const std::set<std::string>& known, const std::string& path) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        if (!known.contains(it.key())) throw ConfigError(path + it.key() + ": unknown field");
    }
}

inline ArraySpec parse_array(const json& j, const std::string& path) {
    if (!j.is_object()) throw ConfigError(path + ": expected an object");
    reject_unknown(j, {"origin", "axes", "counts", "spacings_lambda"}, path + ".");
    ArraySpec s;
    s.origin = as_vec(require(j, "origin", path + "."), path + ".origin");
    const auto& axes = require(j, "axes", path + ".");
    const auto& counts = require(j, "counts", path + ".");
    const auto& spacings = require(j, "spacings_lambda", path + ".");
    if (!axes.is_array() || axes.empty()) throw ConfigError(path + ".axes: expected a non-empty list");
    if (!counts.is_array() || counts.size() != axes.size()) {
        throw ConfigError(path + ".counts: expected one count per axis");
    }
    if (!spacings.is_array() || spacings.size() != axes.size()) {
        throw ConfigError(path + ".spacings_lambda: expected one spacing per axis");
    }
    for (std::size_t i = 0; i < axes.size(); ++i) {
        const std::string idx = "[" + std::to_string(i) + "]";
        s.axes.push_back(as_vec(axes[i], path + ".axes" + idx));
        s.counts.push_back(as_count(counts[i], path + ".counts" + idx));
        s.spacings_lambda.push_back(as_number(spacings[i], path + ".spacings_lambda" + idx));
    }
    return s;
}

inline nlohmann::ordered_json vec_json(const Vec3& v) { return nlohmann::ordered_json::array({v.x, v.y, v.z}); }

inline nlohmann::ordered_json array_json(const ArraySpec& s) {
    auto axes = nlohmann::ordered_json::array();
    for (const auto& a : s.axes) axes.push_back(vec_json(a));
    return {{"origin", vec_json(s.origin)}, {"axes", axes}, {"counts", s.counts}, {"spacings_lambda", s.spacings_lambda}};
}

inline std::pair<std::size_t, std::size_t> line_column(const std::string& text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < text.size() && i + 1 < byte; ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

}  // namespace detail

/// Runs every module-level validation on a config; throws ConfigError naming
/// the offending field.
inline void validate(const RunConfig& c) {
    if (!(c.lambda > 0.0) || !std::isfinite(c.lambda)) throw ConfigError("wave.lambda: must be positive");
    if (c.outputs.empty()) throw ConfigError("outputs: at least one product is required");
    const auto& t = c.thresholds;
    if (!(t.epsilon_lambda > 0.0)) throw ConfigError("thresholds.epsilon_lambda: must be positive");
    if (!(t.floor_db < 0.0)) throw ConfigError("thresholds.floor_db: must be negative");
    if (!(t.support_db < 0.0)) throw ConfigError("thresholds.support_db: must be negative");
    if (!(t.oracle_ratio > 0.0)) throw ConfigError("thresholds.oracle_ratio: must be positive");
    if (!(t.oracle_floor_db < 0.0)) throw ConfigError("thresholds.oracle_floor_db: must be negative");
    if (t.oversample < 4) throw ConfigError("thresholds.oversample: must be at least 4");
    ArrayGeometry tx, rx;
    try {
        tx = c.tx_array();
    } catch (const GeometryError& e) {
        throw ConfigError(std::string("tx: ") + e.what());
    }
    try {
        rx = c.rx_array();
    } catch (const GeometryError& e) {
        throw ConfigError(std::string("rx: ") + e.what());
    }
    try {
        (void)c.grid();
    } catch (const GeometryError& e) {
        throw ConfigError(std::string("grid: ") + e.what());
    }
    const WaveParams wave = c.wave();
    try {
        check_scene(c.scene(), tx, wave);
        check_scene(c.scene(), rx, wave);
    } catch (const SingularityError& e) {
        throw ConfigError(std::string("scene.scatterer: ") + e.what());
    }
    if (c.wants(Product::sweep) && (!c.sweep || c.sweep->values.empty())) {
        throw ConfigError("sweep: the sweep product needs sweep.parameter and a non-empty sweep.values");
    }
}

/// Parses and validates a JSON scenario.
inline RunConfig parse_config(const std::string& text) {
    using detail::json;
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        const auto [line, col] = detail::line_column(text, e.byte);
        throw ConfigError("parse error at line " + std::to_string(line) + ", column " + std::to_string(col) + ": " +
                          e.what());
    }
    if (!j.is_object()) throw ConfigError("top level: expected a JSON object");
    detail::reject_unknown(j, {"name", "wave", "tx", "rx", "scene", "grid", "outputs", "thresholds", "spectrum", "sweep"},
                           "");

    RunConfig c;
    if (j.contains("name")) {
        if (!j["name"].is_string() || j["name"].get<std::string>().empty()) throw ConfigError("name: expected a string");
        c.name = j["name"].get<std::string>();
        if (c.name.find_first_of("/\\") != std::string::npos) throw ConfigError("name: must not contain path separators");
    }
    if (j.contains("wave")) {
        detail::reject_unknown(j["wave"], {"lambda"}, "wave.");
        if (j["wave"].contains("lambda")) c.lambda = detail::as_number(j["wave"]["lambda"], "wave.lambda");
    }
    c.tx = detail::parse_array(detail::require(j, "tx", ""), "tx");
    c.rx = detail::parse_array(detail::require(j, "rx", ""), "rx");

    const auto& scene = detail::require(j, "scene", "");
    detail::reject_unknown(scene, {"scatterer", "reflectivity_re", "reflectivity_im"}, "scene.");
    c.scatterer = detail::as_vec(detail::require(scene, "scatterer", "scene."), "scene.scatterer");
    double re = 1.0, im = 0.0;
    if (scene.contains("reflectivity_re")) re = detail::as_number(scene["reflectivity_re"], "scene.reflectivity_re");
    if (scene.contains("reflectivity_im")) im = detail::as_number(scene["reflectivity_im"], "scene.reflectivity_im");
    c.reflectivity = {re, im};

    const auto& grid = detail::require(j, "grid", "");
    detail::reject_unknown(grid, {"min", "max", "resolution"}, "grid.");
    const auto& gmin = detail::require(grid, "min", "grid.");
    const auto& gmax = detail::require(grid, "max", "grid.");
    const auto& gres = detail::require(grid, "resolution", "grid.");
    if (!gmin.is_array() || (gmin.size() != 2 && gmin.size() != 3)) throw ConfigError("grid.min: expected 2 or 3 numbers");
    if (!gmax.is_array() || gmax.size() != gmin.size()) throw ConfigError("grid.max: must match grid.min in length");
    for (std::size_t i = 0; i < gmin.size(); ++i) {
        c.grid_min.push_back(detail::as_number(gmin[i], "grid.min[" + std::to_string(i) + "]"));
        c.grid_max.push_back(detail::as_number(gmax[i], "grid.max[" + std::to_string(i) + "]"));
    }
    if (gres.is_number_integer()) {
        c.grid_resolution.assign(gmin.size(), detail::as_count(gres, "grid.resolution"));
    } else if (gres.is_array() && gres.size() == gmin.size()) {
        for (std::size_t i = 0; i < gres.size(); ++i) {
            c.grid_resolution.push_back(detail::as_count(gres[i], "grid.resolution[" + std::to_string(i) + "]"));
        }
    } else {
        throw ConfigError("grid.resolution: expected an integer or one integer per axis");
    }

    const auto& outputs = detail::require(j, "outputs", "");
    if (!outputs.is_array()) throw ConfigError("outputs: expected a list");
    for (const auto& o : outputs) {
        if (!o.is_string()) throw ConfigError("outputs: entries must be strings");
        const Product p = parse_product(o.get<std::string>());
        if (!c.wants(p)) c.outputs.push_back(p);
    }

    if (j.contains("thresholds")) {
        const auto& t = j["thresholds"];
        detail::reject_unknown(t, {"epsilon_lambda", "floor_db", "support_db", "oracle_ratio", "oracle_floor_db", "oversample"},
                               "thresholds.");
        auto num = [&](const char* key, double& dst) {
            if (t.contains(key)) dst = detail::as_number(t[key], std::string("thresholds.") + key);
        };
        num("epsilon_lambda", c.thresholds.epsilon_lambda);
        num("floor_db", c.thresholds.floor_db);
        num("support_db", c.thresholds.support_db);
        num("oracle_ratio", c.thresholds.oracle_ratio);
        num("oracle_floor_db", c.thresholds.oracle_floor_db);
        if (t.contains("oversample")) c.thresholds.oversample = detail::as_count(t["oversample"], "thresholds.oversample");
    }
    if (j.contains("spectrum")) {
        detail::reject_unknown(j["spectrum"], {"tentative"}, "spectrum.");
        if (j["spectrum"].contains("tentative")) {
            c.spectrum_tentative = detail::as_vec(j["spectrum"]["tentative"], "spectrum.tentative");
        }
    }
    if (j.contains("sweep")) {
        const auto& s = j["sweep"];
        detail::reject_unknown(s, {"parameter", "values"}, "sweep.");
        const auto& p = detail::require(s, "parameter", "sweep.");
        if (!p.is_string()) throw ConfigError("sweep.parameter: expected a string");
        SweepSpec spec{parse_sweep_parameter(p.get<std::string>()), {}};
        const auto& vals = detail::require(s, "values", "sweep.");
        if (!vals.is_array()) throw ConfigError("sweep.values: expected a list");
        for (std::size_t i = 0; i < vals.size(); ++i) {
            spec.values.push_back(detail::as_number(vals[i], "sweep.values[" + std::to_string(i) + "]"));
        }
        c.sweep = spec;
    }
    validate(c);
    return c;
}

inline RunConfig load_config(const std::filesystem::path& path) {
    std::string text;
    try {
        text = io::read_file(path);
    } catch (const IoError& e) {
        throw ConfigError(e.what());
    }
    return parse_config(text);
}

/// Resolved config with every default written out; parse_config accepts it.
inline nlohmann::ordered_json to_json(const RunConfig& c) {
    using json = nlohmann::ordered_json;
    json outputs = json::array();
    for (auto p : c.outputs) outputs.push_back(to_string(p));
    json j = {
        {"name", c.name},
        {"wave", {{"lambda", c.lambda}}},
        {"tx", detail::array_json(c.tx)},
        {"rx", detail::array_json(c.rx)},
        {"scene",
         {{"scatterer", detail::vec_json(c.scatterer)},
          {"reflectivity_re", c.reflectivity.real()},
          {"reflectivity_im", c.reflectivity.imag()}}},
        {"grid", {{"min", c.grid_min}, {"max", c.grid_max}, {"resolution", c.grid_resolution}}},
        {"outputs", outputs},
        {"thresholds",
         {{"epsilon_lambda", c.thresholds.epsilon_lambda},
          {"floor_db", c.thresholds.floor_db},
          {"support_db", c.thresholds.support_db},
          {"oracle_ratio", c.thresholds.oracle_ratio},
          {"oracle_floor_db", c.thresholds.oracle_floor_db},
          {"oversample", c.thresholds.oversample}}},
        {"spectrum", {{"tentative", detail::vec_json(c.spectrum_tentative.value_or(c.scatterer))}}},
    };
    if (c.sweep) {
        j["sweep"] = {{"parameter", to_string(c.sweep->parameter)}, {"values", c.sweep->values}};
    }
    return j;
}

// ---------------------------------------------------------------------------
// Presets. Arrays follow the "length L with N antennas" convention
// spacing = L / N, so N = 32 over 250 and N = 128 over 1000 share a spacing.

namespace presets {

inline constexpr double kAperture = 500.0;
inline constexpr std::size_t kElements = 64;

/// Linear tx along x centred (500, 0), linear rx along y centred (0, 500),
/// scatterer at (500, 500).
inline RunConfig near_target_base(std::string name) {
    RunConfig c;
    c.name = std::move(name);
    const double d = kAperture / static_cast<double>(kElements);
    c.tx = ArraySpec::centered({500.0, 0.0, 0.0}, {{1.0, 0.0, 0.0}}, {kElements}, {d});
    c.rx = ArraySpec::centered({0.0, 500.0, 0.0}, {{0.0, 1.0, 0.0}}, {kElements}, {d});
    c.scatterer = {500.0, 500.0, 0.0};
    c.grid_min = {50.0, 50.0};
    c.grid_max = {950.0, 950.0};
    c.grid_resolution = {257, 257};
    return c;
}

inline RunConfig fig1() {
    RunConfig c = near_target_base("fig1");
    c.scatterer = {1000.0, 1000.0, 0.0};
    c.grid_min = {100.0, 100.0};
    c.grid_max = {1900.0, 1900.0};
    c.outputs = {Product::partial_tx, Product::partial_rx, Product::image, Product::mask};
    return c;
}

inline RunConfig fig2a() {
    RunConfig c = near_target_base("fig2a");
    c.outputs = {Product::sweep};
    c.sweep = SweepSpec{SweepParameter::spacing, {kAperture / 16.0, kAperture / 64.0}};
    return c;
}

inline RunConfig fig2b() {
    RunConfig c = near_target_base("fig2b");
    c.outputs = {Product::sweep};
    c.sweep = SweepSpec{SweepParameter::length, {250.0, 1000.0}};
    return c;
}

inline RunConfig fig2c() {
    RunConfig c = near_target_base("fig2c");
    c.outputs = {Product::sweep};
    c.sweep = SweepSpec{SweepParameter::dimensionality, {1.0, 2.0}};
    return c;
}

inline RunConfig range() {
    RunConfig c = fig1();
    c.name = "range";
    c.outputs = {Product::sweep};
    c.sweep = SweepSpec{SweepParameter::range, {500.0, 1000.0}};
    return c;
}

/// Half-wavelength spacing: 128-element arrays (aperture 64 wavelengths) in
/// the fig1 arrangement, scatterer at twice the aperture.
inline RunConfig halfwave() {
    RunConfig c;
    c.name = "halfwave";
    const double aperture = 64.0;
    c.tx = ArraySpec::centered({aperture, 0.0, 0.0}, {{1.0, 0.0, 0.0}}, {128}, {0.5});
    c.rx = ArraySpec::centered({0.0, aperture, 0.0}, {{0.0, 1.0, 0.0}}, {128}, {0.5});
    c.scatterer = {2.0 * aperture, 2.0 * aperture, 0.0};
    c.grid_min = {0.25 * aperture, 0.25 * aperture};
    c.grid_max = {3.75 * aperture, 3.75 * aperture};
    c.grid_resolution = {128, 128};
    c.outputs = {Product::mask};
    return c;
}

inline std::vector<std::string> names() { return {"fig1", "fig2a", "fig2b", "fig2c", "range", "halfwave"}; }

inline RunConfig by_name(const std::string& name) {
    RunConfig c;
    if (name == "fig1") c = fig1();
    else if (name == "fig2a") c = fig2a();
    else if (name == "fig2b") c = fig2b();
    else if (name == "fig2c") c = fig2c();
    else if (name == "range") c = range();
    else if (name == "halfwave") c = halfwave();
    else throw ConfigError("unknown preset '" + name + "'");
    validate(c);
    return c;
}

}  // namespace presets

// ---------------------------------------------------------------------------
// Sweep transforms

namespace detail {

inline std::size_t integral_count(double ratio, const std::string& what) {
    const double n = std::round(ratio);
    if (!(n >= 1.0) || std::abs(n - ratio) > 1e-9 * std::max(1.0, ratio)) {
        throw ConfigError("sweep: " + what + " does not give a whole number of elements (" + io::fmt(ratio) + ")");
    }
    return static_cast<std::size_t>(n);
}

inline Vec3 perpendicular_in_plane(const Vec3& a) {
    Vec3 p = cross({0.0, 0.0, 1.0}, a);
    if (norm(p) < 1e-9) p = cross({1.0, 0.0, 0.0}, a);
    return p * (1.0 / norm(p));
}

inline ArraySpec with_spacing(const ArraySpec& s, double spacing) {
    ArraySpec out = s;
    for (std::size_t j = 0; j < s.axes.size(); ++j) {
        if (s.counts[j] < 2) continue;
        const double aperture = static_cast<double>(s.counts[j]) * s.spacings_lambda[j];
        out.counts[j] = integral_count(aperture / spacing, "spacing " + io::fmt(spacing));
        out.spacings_lambda[j] = spacing;
    }
    return ArraySpec::centered(s.center_lambda(), out.axes, out.counts, out.spacings_lambda);
}

inline ArraySpec with_length(const ArraySpec& s, double length) {
    ArraySpec out = s;
    for (std::size_t j = 0; j < s.axes.size(); ++j) {
        if (s.counts[j] < 2) continue;
        out.counts[j] = integral_count(length / s.spacings_lambda[j], "length " + io::fmt(length));
    }
    return ArraySpec::centered(s.center_lambda(), out.axes, out.counts, out.spacings_lambda);
}

inline ArraySpec with_dimension(const ArraySpec& s, std::size_t dim) {
    std::vector<Vec3> axes(s.axes.begin(), s.axes.begin() + static_cast<long>(std::min(dim, s.axes.size())));
    std::vector<std::size_t> counts(s.counts.begin(), s.counts.begin() + static_cast<long>(axes.size()));
    std::vector<double> sp(s.spacings_lambda.begin(), s.spacings_lambda.begin() + static_cast<long>(axes.size()));
    while (axes.size() < dim) {
        axes.push_back(axes.size() == 1 ? perpendicular_in_plane(axes[0]) : cross(axes[0], axes[1]));
        counts.push_back(counts[0]);
        sp.push_back(sp[0]);
    }
    return ArraySpec::centered(s.center_lambda(), axes, counts, sp);
}

}  // namespace detail

/// Base config with one sweep value applied to both arrays (or the scene).
///   spacing        element spacing in wavelengths at fixed aperture N * spacing
///   length         aperture in wavelengths at fixed spacing
///   range          largest scatterer coordinate, moving it along its direction
///   dimensionality number of lattice axes (1..3); new axes reuse axis 0's count and spacing
inline RunConfig apply_sweep_value(const RunConfig& base, SweepParameter parameter, double value) {
    if (!(value > 0.0) || !std::isfinite(value)) {
        throw ConfigError(std::string("sweep: ") + to_string(parameter) + " values must be positive");
    }
    RunConfig c = base;
    switch (parameter) {
        case SweepParameter::spacing:
            c.tx = detail::with_spacing(base.tx, value);
            c.rx = detail::with_spacing(base.rx, value);
            break;
        case SweepParameter::length:
            c.tx = detail::with_length(base.tx, value);
            c.rx = detail::with_length(base.rx, value);
            break;
        case SweepParameter::range: {
            const double cheb = std::max({std::abs(base.scatterer.x), std::abs(base.scatterer.y), std::abs(base.scatterer.z)});
            if (!(cheb > 0.0)) throw ConfigError("sweep: range needs a scatterer away from the coordinate origin");
            c.scatterer = base.scatterer * (value / cheb);
            break;
        }
        case SweepParameter::dimensionality: {
            if (value != std::floor(value) || value > 3.0) throw ConfigError("sweep: dimensionality must be 1, 2 or 3");
            const auto dim = static_cast<std::size_t>(value);
            c.tx = detail::with_dimension(base.tx, dim);
            c.rx = detail::with_dimension(base.rx, dim);
            break;
        }
    }
    c.sweep.reset();
    try {
        c.outputs = {Product::mask};
        validate(c);
    } catch (const ConfigError& e) {
        throw ConfigError(std::string("sweep ") + to_string(parameter) + "=" + io::fmt(value) + ": " + e.what());
    }
    c.outputs = base.outputs;
    return c;
}

}  // namespace nfalias
