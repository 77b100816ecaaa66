#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

#include "error.hpp"
#include "geometry.hpp"
#include "imaging.hpp"
#include "parallel.hpp"
#include "wavefield.hpp"

namespace nfalias {

/// Gradient of the chirp phase with respect to the probe position:
///   k * ( (x - tentative)/|x - tentative| - (x - scatterer)/|x - scatterer| ).
/// Its norm never exceeds 2k.
inline Vec3 local_wavenumber(const Vec3& probe, const Vec3& tentative, const Vec3& scatterer, const WaveParams& wave) {
    const Vec3 to_t = probe - tentative;
    const Vec3 to_s = probe - scatterer;
    const double dt = detail::checked_distance(probe, tentative, wave, "local_wavenumber");
    const double ds = detail::checked_distance(probe, scatterer, wave, "local_wavenumber");
    return wave.wavenumber() * (to_t * (1.0 / dt) - to_s * (1.0 / ds));
}

/// Largest |projection of the local wavenumber on lattice axis `axis`| over
/// the array elements.
inline double max_spatial_frequency(const ArrayGeometry& array, const Vec3& tentative, const Vec3& scatterer,
                                    const WaveParams& wave, std::size_t axis) {
    if (axis >= array.lattice_dimension()) throw GeometryError("max_spatial_frequency: lattice axis out of range");
    const Vec3 dir = array.axes()[axis];
    double best = 0.0;
    for (const auto& x : array.positions()) {
        best = std::max(best, std::abs(dot(local_wavenumber(x, tentative, scatterer, wave), dir)));
    }
    return best;
}

/// Sampling limit 2*pi/spacing of one lattice axis.
inline double replica_period(const ArrayGeometry& array, std::size_t axis) {
    return 2.0 * std::numbers::pi / array.spacings()[axis];
}

struct AliasingVerdict {
    std::vector<bool> per_axis;               // one per lattice axis
    std::vector<double> max_frequency;        // K along each lattice axis
    bool aliasing_free = true;                // conjunction over the axes
};

/// Checks K_axis <= 2*pi/spacing_axis along every lattice axis that carries at
/// least two elements. Single-element axes do not sample and always pass.
/// The comparison is exact; equality counts as aliasing-free.
inline AliasingVerdict aliasing_free(const ArrayGeometry& array, const Vec3& tentative, const Vec3& scatterer,
                                     const WaveParams& wave) {
    const std::size_t d = array.lattice_dimension();
    AliasingVerdict v{std::vector<bool>(d, true), std::vector<double>(d, 0.0), true};
    for (const auto& x : array.positions()) {
        const Vec3 kv = local_wavenumber(x, tentative, scatterer, wave);
        for (std::size_t j = 0; j < d; ++j) {
            v.max_frequency[j] = std::max(v.max_frequency[j], std::abs(dot(kv, array.axes()[j])));
        }
    }
    for (std::size_t j = 0; j < d; ++j) {
        if (array.samples_axis(j)) v.per_axis[j] = v.max_frequency[j] <= replica_period(array, j);
        v.aliasing_free = v.aliasing_free && v.per_axis[j];
    }
    return v;
}

struct MaskLayer {
    ArrayRole role = ArrayRole::transmit;
    std::size_t axis = 0;
    std::vector<std::uint8_t> values;
};

/// Per-array, per-axis aliasing-free predicates over a grid plus their
/// conjunction. Excluded cells (too close to any element) read false in every
/// layer.
struct AliasingMask {
    EvalGrid grid;
    std::vector<MaskLayer> layers;
    std::vector<std::uint8_t> combined;
    std::vector<std::uint8_t> excluded;

    std::size_t area() const noexcept {
        return static_cast<std::size_t>(std::count(combined.begin(), combined.end(), std::uint8_t{1}));
    }

    /// Conjunction of the layers belonging to one array.
    std::vector<std::uint8_t> array_layer(ArrayRole role) const {
        std::vector<std::uint8_t> out(combined.size(), 1);
        for (std::size_t i = 0; i < out.size(); ++i) {
            if (excluded[i]) out[i] = 0;
        }
        for (const auto& l : layers) {
            if (l.role != role) continue;
            for (std::size_t i = 0; i < out.size(); ++i) out[i] = out[i] & l.values[i];
        }
        return out;
    }
};

inline AliasingMask aliasing_mask(const ArrayGeometry& tx, const ArrayGeometry& rx, const Scene& scene,
                                  const WaveParams& wave, const EvalGrid& grid, Parallelism par = {}) {
    if (tx.empty() || rx.empty()) throw ImagingError("aliasing_mask: array has no elements");
    check_scene(scene, tx, wave);
    check_scene(scene, rx, wave);
    const std::size_t n = grid.size();
    AliasingMask mask{grid, {}, std::vector<std::uint8_t>(n, 0), std::vector<std::uint8_t>(n, 0)};
    for (const ArrayGeometry* a : {&tx, &rx}) {
        for (std::size_t j = 0; j < a->lattice_dimension(); ++j) {
            mask.layers.push_back({a->role(), j, std::vector<std::uint8_t>(n, 0)});
        }
    }
    const double eps = wave.exclusion_radius();
    parallel_for(n, par, [&](std::size_t c) {
        const Vec3 cell = grid.cell_center(c);
        if (detail::near_any(cell, tx, eps) || detail::near_any(cell, rx, eps)) {
            mask.excluded[c] = 1;
            return;
        }
        std::size_t layer = 0;
        bool all = true;
        for (const ArrayGeometry* a : {&tx, &rx}) {
            const auto v = aliasing_free(*a, cell, scene.scatterer, wave);
            for (std::size_t j = 0; j < v.per_axis.size(); ++j, ++layer) {
                mask.layers[layer].values[c] = v.per_axis[j] ? 1 : 0;
            }
            all = all && v.aliasing_free;
        }
        mask.combined[c] = all ? 1 : 0;
    });
    return mask;
}

}  // namespace nfalias
