#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "error.hpp"
#include "geometry.hpp"
#include "parallel.hpp"
#include "wavefield.hpp"

namespace nfalias {

struct FieldMeta {
    std::string label;  // e.g. "partial_tx", "image"
    Scene scene{};
    double wavelength = 1.0;
    bool normalized = false;
};

/// Complex value per grid cell. Cells closer than the exclusion radius to an
/// antenna element are flagged in `excluded` and hold zero.
struct ComplexField {
    EvalGrid grid;
    std::vector<Complex> values;
    std::vector<std::uint8_t> excluded;
    FieldMeta meta;

    std::size_t size() const noexcept { return values.size(); }
    bool is_excluded(std::size_t i) const noexcept { return excluded[i] != 0; }
};

/// Real value per grid cell (dB renderings).
struct RealField {
    EvalGrid grid;
    std::vector<double> values;
};

namespace detail {

inline bool near_any(const Vec3& p, const ArrayGeometry& array, double radius) {
    for (const auto& e : array.positions()) {
        if (!(distance(p, e) > radius)) return true;
    }
    return false;
}

inline std::vector<double> scatterer_distances(const ArrayGeometry& array, const Scene& scene, const WaveParams& wave) {
    check_scene(scene, array, wave);
    std::vector<double> out;
    out.reserve(array.size());
    for (const auto& e : array.positions()) out.push_back(distance(e, scene.scatterer));
    return out;
}

}  // namespace detail

/// Monostatic partial image: for every cell, the sum over the array elements
/// of the chirp conj(z(cell, x)) z(scatterer, x), in lattice order.
inline ComplexField partial_image(const ArrayGeometry& array, const Scene& scene, const WaveParams& wave,
                                  const EvalGrid& grid, Parallelism par = {}) {
    if (array.empty()) throw ImagingError("partial_image: array has no elements");
    const auto ds = detail::scatterer_distances(array, scene, wave);
    const auto elements = array.positions();
    const double k = wave.wavenumber();
    const double eps = wave.exclusion_radius();

    ComplexField out{grid, std::vector<Complex>(grid.size()), std::vector<std::uint8_t>(grid.size(), 0),
                     FieldMeta{std::string("partial_") + to_string(array.role()), scene, wave.wavelength(), false}};
    parallel_for(grid.size(), par, [&](std::size_t c) {
        const Vec3 cell = grid.cell_center(c);
        Complex acc{0.0, 0.0};
        for (std::size_t e = 0; e < elements.size(); ++e) {
            const double dt = distance(elements[e], cell);
            if (!(dt > eps)) {
                out.excluded[c] = 1;
                acc = {0.0, 0.0};
                break;
            }
            acc += std::polar(1.0 / (dt * ds[e]), k * (dt - ds[e]));
        }
        out.values[c] = acc;
    });
    if (std::all_of(out.excluded.begin(), out.excluded.end(), [](auto f) { return f != 0; })) {
        throw ImagingError("partial_image: every grid cell is excluded");
    }
    return out;
}

/// Bistatic image as the cell-wise product reflectivity * S_t * S_r.
inline ComplexField bistatic_image(const ComplexField& tx_field, const ComplexField& rx_field, Complex reflectivity) {
    if (!(tx_field.grid == rx_field.grid) || tx_field.values.size() != rx_field.values.size()) {
        throw ImagingError("bistatic_image: fields are on different grids");
    }
    if (!(tx_field.meta.scene.scatterer == rx_field.meta.scene.scatterer)) {
        throw ImagingError("bistatic_image: fields were computed for different scenes");
    }
    ComplexField out{tx_field.grid, std::vector<Complex>(tx_field.size()), std::vector<std::uint8_t>(tx_field.size()),
                     tx_field.meta};
    out.meta.label = "image";
    out.meta.scene.reflectivity = reflectivity;
    for (std::size_t i = 0; i < out.size(); ++i) {
        out.excluded[i] = (tx_field.excluded[i] | rx_field.excluded[i]) ? 1 : 0;
        out.values[i] = out.excluded[i] ? Complex{} : reflectivity * tx_field.values[i] * rx_field.values[i];
    }
    return out;
}

/// Image from the full double sum over (tx, rx) pairs of
/// u(x_r, x_t) conj(z(cell, x_r)) conj(z(cell, x_t)); tx outer, rx inner.
/// Quadratic in the element count, used to cross-check bistatic_image.
inline ComplexField direct_image(const ArrayGeometry& tx, const ArrayGeometry& rx, const Scene& scene,
                                 const WaveParams& wave, const EvalGrid& grid, Parallelism par = {}) {
    if (tx.empty() || rx.empty()) throw ImagingError("direct_image: array has no elements");
    check_scene(scene, tx, wave);
    check_scene(scene, rx, wave);
    const double eps = wave.exclusion_radius();
    ComplexField out{grid, std::vector<Complex>(grid.size()), std::vector<std::uint8_t>(grid.size(), 0),
                     FieldMeta{"direct_image", scene, wave.wavelength(), false}};
    parallel_for(grid.size(), par, [&](std::size_t c) {
        const Vec3 cell = grid.cell_center(c);
        if (detail::near_any(cell, tx, eps) || detail::near_any(cell, rx, eps)) {
            out.excluded[c] = 1;
            return;
        }
        Complex acc{0.0, 0.0};
        for (const auto& xt : tx.positions()) {
            for (const auto& xr : rx.positions()) {
                acc += received_signal(xr, xt, scene, wave) * std::conj(green(cell, xr, wave)) *
                       std::conj(green(cell, xt, wave));
            }
        }
        out.values[c] = acc;
    });
    if (std::all_of(out.excluded.begin(), out.excluded.end(), [](auto f) { return f != 0; })) {
        throw ImagingError("direct_image: every grid cell is excluded");
    }
    return out;
}

/// Largest magnitude over non-excluded cells and the cell attaining it
/// (first in flat order on ties).
inline std::pair<std::size_t, double> peak_cell(const ComplexField& field) {
    std::size_t best = field.size();
    double peak = -1.0;
    for (std::size_t i = 0; i < field.size(); ++i) {
        if (field.is_excluded(i)) continue;
        const double m = std::abs(field.values[i]);
        if (m > peak) {
            peak = m;
            best = i;
        }
    }
    if (best == field.size()) throw ImagingError("field has no non-excluded cell");
    return {best, peak};
}

/// 20 log10(|v| / max|v|), clamped below at floor_db. Excluded cells read floor_db.
inline RealField magnitude_db(const ComplexField& field, double floor_db) {
    const auto [idx, peak] = peak_cell(field);
    (void)idx;
    if (!(peak > 0.0)) throw ImagingError("magnitude_db: field is identically zero");
    RealField out{field.grid, std::vector<double>(field.size(), floor_db)};
    for (std::size_t i = 0; i < field.size(); ++i) {
        if (field.is_excluded(i)) continue;
        const double m = std::abs(field.values[i]);
        const double db = m > 0.0 ? 20.0 * std::log10(m / peak) : -std::numeric_limits<double>::infinity();
        out.values[i] = std::max(db, floor_db);
    }
    return out;
}

}  // namespace nfalias
