#pragma once

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "chirp.hpp"
#include "config.hpp"
#include "error.hpp"
#include "imaging.hpp"
#include "io.hpp"
#include "parallel.hpp"
#include "spectral.hpp"

namespace nfalias {

inline constexpr const char* kToolName = "nf-aliaser";
inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr std::size_t kSpectrumPadFactor = 8;

struct RunOptions {
    std::filesystem::path out_dir = ".";
    Parallelism par{};
};

struct ProductRecord {
    std::string file;
    std::string sha256;
    std::size_t bytes = 0;
};

struct RunResult {
    std::vector<ProductRecord> products;
    std::filesystem::path manifest;
    std::string manifest_sha256;
};

/// One row of a sweep summary.
struct SweepRow {
    double value = 0.0;
    std::size_t tx_elements = 0;
    std::size_t rx_elements = 0;
    std::size_t mask_area = 0;
    Vec3 peak{};                  // cell centre of the |I| maximum, wavelengths
    bool peak_in_mask = false;
    double peak_to_artifact_db = 0.0;  // +inf when every non-excluded cell is in the mask
};

struct SweepPoint {
    SweepRow row;
    RunConfig config;
    AliasingMask mask;
};

/// Image and mask for one resolved config, summarised.
inline SweepPoint evaluate_sweep_point(const RunConfig& c, double value, Parallelism par = {}) {
    const auto tx = c.tx_array();
    const auto rx = c.rx_array();
    const auto scene = c.scene();
    const auto wave = c.wave();
    const auto grid = c.grid();
    const auto image = bistatic_image(partial_image(tx, scene, wave, grid, par), partial_image(rx, scene, wave, grid, par),
                                      scene.reflectivity);
    auto mask = aliasing_mask(tx, rx, scene, wave, grid, par);

    SweepRow row;
    row.value = value;
    row.tx_elements = tx.size();
    row.rx_elements = rx.size();
    row.mask_area = mask.area();
    const auto [peak_idx, peak] = peak_cell(image);
    row.peak = grid.cell_center(peak_idx) * (1.0 / c.lambda);
    row.peak_in_mask = mask.combined[peak_idx] != 0;
    double artifact = 0.0;
    for (std::size_t i = 0; i < image.size(); ++i) {
        if (!image.is_excluded(i) && !mask.combined[i]) artifact = std::max(artifact, std::abs(image.values[i]));
    }
    row.peak_to_artifact_db =
        artifact > 0.0 ? 20.0 * std::log10(peak / artifact) : std::numeric_limits<double>::infinity();
    return {row, c, std::move(mask)};
}

inline std::vector<SweepPoint> sweep(const RunConfig& base, SweepParameter parameter, const std::vector<double>& values,
                                     Parallelism par = {}) {
    if (values.empty()) throw ConfigError("sweep: no values given");
    std::vector<SweepPoint> out;
    out.reserve(values.size());
    for (double v : values) out.push_back(evaluate_sweep_point(apply_sweep_value(base, parameter, v), v, par));
    return out;
}

inline std::string sweep_summary_csv(const std::vector<SweepPoint>& points, SweepParameter parameter,
                                     io::Metadata meta) {
    std::ostringstream os;
    meta.emplace_back("parameter", to_string(parameter));
    meta.emplace_back("columns",
                      "value,tx_elements,rx_elements,mask_area,peak_x,peak_y,peak_z,peak_in_mask,peak_to_artifact_db");
    io::write_metadata(os, meta);
    for (const auto& p : points) {
        const auto& r = p.row;
        os << io::fmt(r.value) << ',' << r.tx_elements << ',' << r.rx_elements << ',' << r.mask_area << ','
           << io::fmt(r.peak.x) << ',' << io::fmt(r.peak.y) << ',' << io::fmt(r.peak.z) << ',' << (r.peak_in_mask ? 1 : 0)
           << ',' << (std::isinf(r.peak_to_artifact_db) ? std::string("inf") : io::fmt(r.peak_to_artifact_db)) << '\n';
    }
    return os.str();
}

namespace detail {

/// Writes products one at a time and remembers their checksums.
class ProductWriter {
  public:
    explicit ProductWriter(std::filesystem::path dir) : dir_(std::move(dir)) {}

    void add(const std::string& file, const std::string& bytes) {
        io::write_file(dir_ / file, bytes);
        records_.push_back({file, io::sha256_hex(bytes), bytes.size()});
    }

    const std::filesystem::path& dir() const noexcept { return dir_; }
    std::vector<ProductRecord>& records() noexcept { return records_; }

  private:
    std::filesystem::path dir_;
    std::vector<ProductRecord> records_;
};

inline std::string vec_text(const Vec3& v) { return io::fmt(v.x) + " " + io::fmt(v.y) + " " + io::fmt(v.z); }

inline io::Metadata base_metadata(const RunConfig& c, const std::string& product) {
    io::Metadata m{{"tool", std::string(kToolName) + " " + kToolVersion},
                   {"config", c.name},
                   {"product", product},
                   {"lambda", io::fmt(c.lambda)},
                   {"scatterer_lambda", vec_text(c.scatterer)},
                   {"reflectivity", io::fmt(c.reflectivity.real()) + " " + io::fmt(c.reflectivity.imag())}};
    return m;
}

inline void write_field(ProductWriter& w, const RunConfig& c, const ComplexField& f, std::size_t elements) {
    const std::string label = f.meta.label;
    auto meta = base_metadata(c, label);
    meta.emplace_back("elements", std::to_string(elements));
    meta.emplace_back("floor_db", io::fmt(c.thresholds.floor_db));
    meta.emplace_back("epsilon_lambda", io::fmt(c.thresholds.epsilon_lambda));
    for (auto& kv : io::grid_metadata(f.grid, c.lambda)) meta.push_back(kv);
    w.add(label + ".csv", io::field_csv(f, c.thresholds.floor_db, meta));
    if (f.grid.dimension() == 2) w.add(label + ".pgm", io::field_pgm(f, c.thresholds.floor_db));
}

inline void write_mask(ProductWriter& w, const RunConfig& c, const AliasingMask& mask, const std::string& stem) {
    auto meta = base_metadata(c, stem);
    meta.emplace_back("mask_area", std::to_string(mask.area()));
    meta.emplace_back("excluded_cells",
                      std::to_string(std::count(mask.excluded.begin(), mask.excluded.end(), std::uint8_t{1})));
    meta.emplace_back("epsilon_lambda", io::fmt(c.thresholds.epsilon_lambda));
    for (auto& kv : io::grid_metadata(mask.grid, c.lambda)) meta.push_back(kv);
    w.add(stem + ".csv", io::mask_csv(mask.grid, mask.combined, meta));
    if (mask.grid.dimension() == 2) w.add(stem + ".pgm", io::mask_pgm(mask.grid, mask.combined));
}

/// Image raster with cells outside the mask drawn at half brightness.
inline std::string overlay_pgm(const ComplexField& image, const AliasingMask& mask, double floor_db) {
    const RealField db = magnitude_db(image, floor_db);
    std::vector<std::uint8_t> px(image.size());
    for (std::size_t i = 0; i < px.size(); ++i) {
        const double t = std::clamp((db.values[i] - floor_db) / -floor_db, 0.0, 1.0);
        const double level = 255.0 * t * (mask.combined[i] ? 1.0 : 0.5);
        px[i] = static_cast<std::uint8_t>(std::lround(level));
    }
    return io::pgm(image.grid, px);
}

inline void write_spectra(ProductWriter& w, const RunConfig& c) {
    const auto wave = c.wave();
    const Vec3 tentative = c.spectrum_point();
    const Vec3 scatterer = c.scene().scatterer;
    for (const auto& array : {c.tx_array(), c.rx_array()}) {
        for (std::size_t j = 0; j < array.lattice_dimension(); ++j) {
            if (!array.samples_axis(j)) continue;
            const auto s = axis_spectrum(array, tentative, scatterer, wave, j, c.thresholds.oversample,
                                         c.thresholds.support_db, Window::hann);
            const double k_max = max_spatial_frequency(array, tentative, scatterer, wave, j);
            const std::string stem = std::string("spectrum_") + to_string(array.role()) + "_axis" + std::to_string(j);
            auto meta = base_metadata(c, stem);
            meta.emplace_back("tentative_lambda", vec_text(c.spectrum_tentative.value_or(c.scatterer)));
            meta.emplace_back("window", "hann");
            meta.emplace_back("pad_factor", std::to_string(kSpectrumPadFactor));
            meta.emplace_back("oversample", std::to_string(c.thresholds.oversample));
            meta.emplace_back("support_db", io::fmt(c.thresholds.support_db));
            meta.emplace_back("support_max_rad_per_lambda", io::fmt(s.support_max * c.lambda));
            meta.emplace_back("max_spatial_frequency_rad_per_lambda", io::fmt(k_max * c.lambda));
            meta.emplace_back("replica_period_rad_per_lambda", io::fmt(replica_period(array, j) * c.lambda));
            meta.emplace_back("aliasing_free", k_max <= replica_period(array, j) ? "true" : "false");
            w.add(stem + ".csv", io::spectrum_csv(s, c.lambda, meta));
        }
    }
}

inline void write_sweep(ProductWriter& w, const RunConfig& c, Parallelism par) {
    const auto& spec = *c.sweep;
    const auto points = sweep(c, spec.parameter, spec.values, par);
    for (std::size_t i = 0; i < points.size(); ++i) {
        const std::string stem = std::string("sweep_") + to_string(spec.parameter) + "_" + std::to_string(i) + "_mask";
        write_mask(w, points[i].config, points[i].mask, stem);
    }
    w.add("sweep_summary.csv", sweep_summary_csv(points, spec.parameter, base_metadata(c, "sweep_summary")));
}

}  // namespace detail

/// Manifest: tool identity, resolved config, fixed processing constants and
/// the checksum of every product. Holds nothing that varies between runs of
/// the same config (no timestamps, no thread counts).
inline nlohmann::ordered_json manifest_json(const RunConfig& c, const std::vector<ProductRecord>& products) {
    auto prods = nlohmann::ordered_json::array();
    for (const auto& p : products) prods.push_back({{"file", p.file}, {"sha256", p.sha256}, {"bytes", p.bytes}});
    return {{"tool", kToolName},
            {"version", kToolVersion},
            {"config", to_json(c)},
            {"constants",
             {{"spectrum_window", "hann"},
              {"spectrum_pad_factor", kSpectrumPadFactor},
              {"grid_cell_sampling", "cell centres"},
              {"csv_float_digits", 17}}},
            {"products", prods}};
}

/// Evaluates every requested product of `c` and writes it to opts.out_dir
/// together with manifest.json.
inline RunResult run(const RunConfig& c, const RunOptions& opts = {}) {
    validate(c);
    std::error_code ec;
    std::filesystem::create_directories(opts.out_dir, ec);
    if (ec) throw IoError("cannot create output directory " + opts.out_dir.string() + ": " + ec.message());

    detail::ProductWriter w(opts.out_dir);
    const bool need_fields = c.wants(Product::partial_tx) || c.wants(Product::partial_rx) || c.wants(Product::image);
    const bool need_mask = c.wants(Product::mask);
    if (need_fields || need_mask) {
        const auto tx = c.tx_array();
        const auto rx = c.rx_array();
        const auto scene = c.scene();
        const auto wave = c.wave();
        const auto grid = c.grid();
        std::optional<AliasingMask> mask;
        if (need_mask) mask = aliasing_mask(tx, rx, scene, wave, grid, opts.par);
        if (need_fields) {
            const auto st = partial_image(tx, scene, wave, grid, opts.par);
            const auto sr = partial_image(rx, scene, wave, grid, opts.par);
            if (c.wants(Product::partial_tx)) detail::write_field(w, c, st, tx.size());
            if (c.wants(Product::partial_rx)) detail::write_field(w, c, sr, rx.size());
            if (c.wants(Product::image)) {
                const auto image = bistatic_image(st, sr, scene.reflectivity);
                detail::write_field(w, c, image, tx.size() * rx.size());
                if (mask && grid.dimension() == 2) {
                    w.add("image_mask_overlay.pgm", detail::overlay_pgm(image, *mask, c.thresholds.floor_db));
                }
            }
        }
        if (mask) detail::write_mask(w, c, *mask, "mask");
    }
    if (c.wants(Product::spectrum)) detail::write_spectra(w, c);
    if (c.wants(Product::sweep)) detail::write_sweep(w, c, opts.par);

    RunResult result;
    result.products = w.records();
    const std::string manifest = manifest_json(c, result.products).dump(2) + "\n";
    result.manifest = opts.out_dir / "manifest.json";
    io::write_file(result.manifest, manifest);
    result.manifest_sha256 = io::sha256_hex(manifest);
    return result;
}

}  // namespace nfalias
