#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "error.hpp"
#include "vec.hpp"

namespace nfalias {

using Complex = std::complex<double>;

/// Narrowband wave description. The wavenumber is always derived from the
/// wavelength; the exclusion radius is the distance below which a point is
/// treated as coincident with a source (the 1/r factor diverges there).
class WaveParams {
  public:
    explicit WaveParams(double wavelength = 1.0, double exclusion_in_wavelengths = 0.1)
        : wavelength_(wavelength), exclusion_(exclusion_in_wavelengths * wavelength) {
        if (!(wavelength > 0.0) || !std::isfinite(wavelength)) {
            throw GeometryError("wavelength must be positive and finite");
        }
        if (!(exclusion_in_wavelengths > 0.0) || !std::isfinite(exclusion_in_wavelengths)) {
            throw GeometryError("exclusion radius must be positive and finite");
        }
    }

    double wavelength() const noexcept { return wavelength_; }
    double wavenumber() const noexcept { return 2.0 * std::numbers::pi / wavelength_; }
    double exclusion_radius() const noexcept { return exclusion_; }

  private:
    double wavelength_;
    double exclusion_;
};

enum class ArrayRole { transmit, receive };

inline const char* to_string(ArrayRole role) noexcept { return role == ArrayRole::transmit ? "tx" : "rx"; }

/// Regular lattice of antenna elements:
///   origin + sum_j n_j * spacing_j * axis_j,   n_j in [0, counts_j).
/// Elements enumerate with the first lattice axis slowest.
class ArrayGeometry {
  public:
    /// Empty geometry (no elements); only useful as a placeholder.
    ArrayGeometry() = default;

    ArrayGeometry(Vec3 origin, std::vector<Vec3> axes, std::vector<std::size_t> counts,
                  std::vector<double> spacings, ArrayRole role)
        : origin_(origin), axes_(std::move(axes)), counts_(std::move(counts)), spacings_(std::move(spacings)), role_(role) {
        validate();
        positions_ = enumerate();
    }

    const Vec3& origin() const noexcept { return origin_; }
    std::span<const Vec3> axes() const noexcept { return axes_; }
    std::span<const std::size_t> counts() const noexcept { return counts_; }
    std::span<const double> spacings() const noexcept { return spacings_; }
    ArrayRole role() const noexcept { return role_; }

    /// Number of lattice axes (1 to 3); 0 for an empty geometry.
    std::size_t lattice_dimension() const noexcept { return axes_.size(); }
    std::size_t size() const noexcept { return positions_.size(); }
    bool empty() const noexcept { return positions_.empty(); }

    /// Element positions in lattice order.
    std::span<const Vec3> positions() const noexcept { return positions_; }

    /// Position of the element with the given lattice index.
    Vec3 position(std::span<const std::size_t> index) const {
        if (index.size() != axes_.size()) {
            throw GeometryError("lattice index has wrong dimension");
        }
        Vec3 p = origin_;
        for (std::size_t j = 0; j < axes_.size(); ++j) {
            p += (static_cast<double>(index[j]) * spacings_[j]) * axes_[j];
        }
        return p;
    }

    Vec3 center() const noexcept {
        Vec3 c = origin_;
        for (std::size_t j = 0; j < axes_.size(); ++j) {
            c += (0.5 * static_cast<double>(counts_[j] - 1) * spacings_[j]) * axes_[j];
        }
        return c;
    }

    /// A lattice axis with a single element does not sample anything.
    bool samples_axis(std::size_t axis) const noexcept { return axis < counts_.size() && counts_[axis] >= 2; }

  private:
    void validate() const {
        const std::size_t d = axes_.size();
        if (d < 1 || d > 3) {
            throw GeometryError("array needs 1 to 3 lattice axes, got " + std::to_string(d));
        }
        if (counts_.size() != d || spacings_.size() != d) {
            throw GeometryError("axes, counts and spacings must have the same length");
        }
        constexpr double tol = 1e-12;
        for (std::size_t i = 0; i < d; ++i) {
            if (std::abs(norm(axes_[i]) - 1.0) > tol) {
                throw GeometryError("lattice axis " + std::to_string(i) + " is not unit-norm");
            }
            for (std::size_t j = i + 1; j < d; ++j) {
                if (std::abs(dot(axes_[i], axes_[j])) > tol) {
                    throw GeometryError("lattice axes " + std::to_string(i) + " and " + std::to_string(j) +
                                        " are not orthogonal");
                }
            }
            if (counts_[i] < 1) {
                throw GeometryError("element count along axis " + std::to_string(i) + " must be at least 1");
            }
            if (!(spacings_[i] > 0.0) || !std::isfinite(spacings_[i])) {
                throw GeometryError("spacing along axis " + std::to_string(i) + " must be positive and finite");
            }
        }
        if (!std::isfinite(origin_.x) || !std::isfinite(origin_.y) || !std::isfinite(origin_.z)) {
            throw GeometryError("array origin must be finite");
        }
    }

    std::vector<Vec3> enumerate() const {
        std::size_t total = 1;
        for (auto c : counts_) total *= c;
        std::vector<Vec3> out;
        out.reserve(total);
        std::array<std::size_t, 3> idx{};
        const std::size_t d = axes_.size();
        for (std::size_t flat = 0; flat < total; ++flat) {
            out.push_back(position(std::span<const std::size_t>(idx.data(), d)));
            // odometer increment, last axis fastest
            for (std::size_t j = d; j-- > 0;) {
                if (++idx[j] < counts_[j]) break;
                idx[j] = 0;
            }
        }
        return out;
    }

    Vec3 origin_{};
    std::vector<Vec3> axes_;
    std::vector<std::size_t> counts_;
    std::vector<double> spacings_;
    ArrayRole role_ = ArrayRole::transmit;
    std::vector<Vec3> positions_;
};

inline ArrayGeometry build_uniform_array(Vec3 origin, std::vector<Vec3> axes, std::vector<std::size_t> counts,
                                         std::vector<double> spacings, ArrayRole role) {
    return ArrayGeometry(origin, std::move(axes), std::move(counts), std::move(spacings), role);
}

/// Same lattice, placed so that its centre lands on `center`.
inline ArrayGeometry build_centered_array(Vec3 center, std::vector<Vec3> axes, std::vector<std::size_t> counts,
                                          std::vector<double> spacings, ArrayRole role) {
    Vec3 origin = center;
    for (std::size_t j = 0; j < axes.size() && j < counts.size() && j < spacings.size(); ++j) {
        if (counts[j] >= 1) origin -= (0.5 * static_cast<double>(counts[j] - 1) * spacings[j]) * axes[j];
    }
    return ArrayGeometry(origin, std::move(axes), std::move(counts), std::move(spacings), role);
}

inline std::vector<Vec3> element_positions(const ArrayGeometry& geometry) {
    return {geometry.positions().begin(), geometry.positions().end()};
}

struct Scene {
    Vec3 scatterer{};
    Complex reflectivity{1.0, 0.0};
};

/// Throws SingularityError if the scatterer sits within the exclusion radius
/// of any element.
inline void check_scene(const Scene& scene, const ArrayGeometry& array, const WaveParams& wave) {
    for (const auto& p : array.positions()) {
        if (!(distance(p, scene.scatterer) > wave.exclusion_radius())) {
            throw SingularityError(std::string("scatterer lies within the exclusion radius of a ") +
                                   to_string(array.role()) + " element");
        }
    }
}

/// Rectangular grid of tentative scatterer locations, evaluated at cell
/// centres. Two- or three-dimensional; a 2-D grid lies in the z = 0 plane.
/// Flat index is row-major with x fastest: ((iz * ny) + iy) * nx + ix.
class EvalGrid {
  public:
    EvalGrid() = default;

    EvalGrid(std::vector<double> corner_min, std::vector<double> corner_max, std::vector<std::size_t> resolution)
        : min_(std::move(corner_min)), max_(std::move(corner_max)), res_(std::move(resolution)) {
        const std::size_t d = res_.size();
        if (d < 2 || d > 3) throw GeometryError("grid must be 2-D or 3-D");
        if (min_.size() != d || max_.size() != d) {
            throw GeometryError("grid corners and resolution must have the same dimension");
        }
        for (std::size_t i = 0; i < d; ++i) {
            if (!std::isfinite(min_[i]) || !std::isfinite(max_[i]) || !(min_[i] < max_[i])) {
                throw GeometryError("grid corner_min must be below corner_max on axis " + std::to_string(i));
            }
            if (res_[i] < 2) throw GeometryError("grid resolution must be at least 2 on axis " + std::to_string(i));
        }
    }

    std::size_t dimension() const noexcept { return res_.size(); }
    std::span<const double> corner_min() const noexcept { return min_; }
    std::span<const double> corner_max() const noexcept { return max_; }
    std::span<const std::size_t> resolution() const noexcept { return res_; }

    std::size_t nx() const noexcept { return res_.empty() ? 0 : res_[0]; }
    std::size_t ny() const noexcept { return res_.size() < 2 ? 1 : res_[1]; }
    std::size_t nz() const noexcept { return res_.size() < 3 ? 1 : res_[2]; }
    std::size_t size() const noexcept { return res_.empty() ? 0 : nx() * ny() * nz(); }

    double step(std::size_t axis) const noexcept {
        return (max_[axis] - min_[axis]) / static_cast<double>(res_[axis]);
    }

    double center_coordinate(std::size_t axis, std::size_t i) const noexcept {
        return min_[axis] + (static_cast<double>(i) + 0.5) * step(axis);
    }

    std::size_t flat_index(std::size_t ix, std::size_t iy, std::size_t iz = 0) const noexcept {
        return (iz * ny() + iy) * nx() + ix;
    }

    std::array<std::size_t, 3> cell_index(std::size_t flat) const noexcept {
        const std::size_t ix = flat % nx();
        const std::size_t rest = flat / nx();
        return {ix, rest % ny(), rest / ny()};
    }

    Vec3 cell_center(std::size_t flat) const noexcept {
        const auto [ix, iy, iz] = cell_index(flat);
        return {center_coordinate(0, ix), center_coordinate(1, iy), dimension() == 3 ? center_coordinate(2, iz) : 0.0};
    }

    /// Index of the half-open cell [lo, hi) containing p, clamped to the grid.
    std::size_t cell_containing(const Vec3& p) const noexcept {
        auto locate = [&](std::size_t axis, double v) {
            double f = (v - min_[axis]) / step(axis);
            auto i = static_cast<long long>(std::floor(f));
            i = std::clamp<long long>(i, 0, static_cast<long long>(res_[axis]) - 1);
            return static_cast<std::size_t>(i);
        };
        return flat_index(locate(0, p.x), locate(1, p.y), dimension() == 3 ? locate(2, p.z) : 0);
    }

    friend bool operator==(const EvalGrid&, const EvalGrid&) = default;

  private:
    std::vector<double> min_;
    std::vector<double> max_;
    std::vector<std::size_t> res_;
};

}  // namespace nfalias
