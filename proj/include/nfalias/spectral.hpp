#pragma once

#include <fftw3.h>

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <mutex>
#include <numbers>
#include <span>
#include <vector>

#include "error.hpp"
#include "geometry.hpp"
#include "wavefield.hpp"

namespace nfalias {

/// Samples the spatial chirp along one lattice axis on a lattice refined by
/// `oversample`, spanning the same aperture. The remaining lattice indices are
/// held at their middle element ((N - 1) / 2, rounded down). With
/// oversample == 1 the samples are exactly the per-element chirp values.
inline std::vector<Complex> sample_chirp_along_axis(const ArrayGeometry& array, const Vec3& tentative,
                                                    const Vec3& scatterer, const WaveParams& wave, std::size_t axis,
                                                    std::size_t oversample) {
    if (axis >= array.lattice_dimension()) throw SpectralError("lattice axis out of range");
    if (!array.samples_axis(axis)) throw SpectralError("lattice axis has a single element; nothing to sample");
    if (oversample < 1) throw SpectralError("oversample must be at least 1");

    const std::size_t d = array.lattice_dimension();
    const auto counts = array.counts();
    const auto spacings = array.spacings();
    const auto axes = array.axes();
    const std::size_t n = (counts[axis] - 1) * oversample + 1;

    std::vector<Complex> out;
    out.reserve(n);
    for (std::size_t s = 0; s < n; ++s) {
        Vec3 p = array.origin();
        for (std::size_t j = 0; j < d; ++j) {
            if (j == axis) {
                p += (static_cast<double>(s) * spacings[j] / static_cast<double>(oversample)) * axes[j];
            } else {
                p += (static_cast<double>((counts[j] - 1) / 2) * spacings[j]) * axes[j];
            }
        }
        out.push_back(chirp_value(p, tentative, scatterer, wave));
    }
    return out;
}

enum class Window { rectangular, hann };

/// Discrete spatial spectrum of a uniformly sampled sequence.
struct SpectralSupport {
    std::size_t axis = 0;
    std::vector<double> frequencies;  // rad/length, ascending, spanning [-pi/spacing, pi/spacing)
    std::vector<double> magnitude;    // |G| per bin
    double support_max = 0.0;         // largest |k| whose magnitude reaches threshold * peak
    double peak = 0.0;
    double resolution = 0.0;          // 2*pi / (n * spacing), the unpadded bin width
    Complex zero_bin{};               // windowed sum of the samples (k = 0)
};

namespace detail {

inline std::mutex& fftw_planner_mutex() {
    static std::mutex m;
    return m;
}

/// In-place forward DFT, sum_n x_n e^{-2 pi i b n / M}. Runs on an
/// fftw_malloc buffer so the chosen codelets, and therefore the rounding, do
/// not depend on the caller's allocation.
inline void forward_dft(std::vector<Complex>& data) {
    const std::size_t m = data.size();
    auto* buf = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * m));
    if (buf == nullptr) throw SpectralError("FFTW allocation failed");
    fftw_plan plan;
    {
        std::lock_guard lock(fftw_planner_mutex());
        plan = fftw_plan_dft_1d(static_cast<int>(m), buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
    }
    if (plan == nullptr) {
        fftw_free(buf);
        throw SpectralError("FFTW could not create a plan");
    }
    for (std::size_t i = 0; i < m; ++i) {
        buf[i][0] = data[i].real();
        buf[i][1] = data[i].imag();
    }
    fftw_execute(plan);
    for (std::size_t i = 0; i < m; ++i) data[i] = {buf[i][0], buf[i][1]};
    {
        std::lock_guard lock(fftw_planner_mutex());
        fftw_destroy_plan(plan);
    }
    fftw_free(buf);
}

}  // namespace detail

/// Windowed, zero-padded DFT magnitude of `samples` taken at `spacing`.
/// support_max is the largest |k| bin whose magnitude is at least
/// peak * 10^(threshold_db / 20). With a rectangular window the k = 0 bin is the
/// plain sum of the samples.
inline SpectralSupport spectral_support(std::span<const Complex> samples, double spacing, double threshold_db,
                                        Window window = Window::hann, std::size_t pad_factor = 8) {
    const std::size_t n = samples.size();
    if (n < 8) throw SpectralError("spectral_support needs at least 8 samples");
    if (!(threshold_db < 0.0)) throw SpectralError("threshold_db must be negative");
    if (!(spacing > 0.0)) throw SpectralError("spacing must be positive");
    if (pad_factor < 1) throw SpectralError("pad_factor must be at least 1");

    const std::size_t m = std::bit_ceil(std::max<std::size_t>(n * pad_factor, 16));
    std::vector<Complex> buf(m, Complex{});
    for (std::size_t i = 0; i < n; ++i) {
        double w = 1.0;
        if (window == Window::hann) {
            w = 0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n - 1)));
        }
        buf[i] = w * samples[i];
    }
    detail::forward_dft(buf);

    SpectralSupport out;
    out.zero_bin = buf[0];
    out.resolution = 2.0 * std::numbers::pi / (static_cast<double>(n) * spacing);
    out.frequencies.resize(m);
    out.magnitude.resize(m);
    const double dk = 2.0 * std::numbers::pi / (static_cast<double>(m) * spacing);
    const std::size_t half = m / 2;
    for (std::size_t i = 0; i < m; ++i) {
        // ascending order: bins m/2 .. m-1 (negative), then 0 .. m/2-1
        const std::size_t b = (i + half) % m;
        const auto signed_bin = static_cast<double>(b) - (b >= half ? static_cast<double>(m) : 0.0);
        out.frequencies[i] = signed_bin * dk;
        out.magnitude[i] = std::abs(buf[b]);
    }
    out.peak = *std::max_element(out.magnitude.begin(), out.magnitude.end());
    const double level = out.peak * std::pow(10.0, threshold_db / 20.0);
    for (std::size_t i = 0; i < m; ++i) {
        if (out.magnitude[i] >= level) out.support_max = std::max(out.support_max, std::abs(out.frequencies[i]));
    }
    return out;
}

/// Spectrum of the chirp along one lattice axis of an array.
inline SpectralSupport axis_spectrum(const ArrayGeometry& array, const Vec3& tentative, const Vec3& scatterer,
                                     const WaveParams& wave, std::size_t axis, std::size_t oversample,
                                     double threshold_db, Window window = Window::hann) {
    const auto samples = sample_chirp_along_axis(array, tentative, scatterer, wave, axis, oversample);
    auto s = spectral_support(samples, array.spacings()[axis] / static_cast<double>(oversample), threshold_db, window);
    s.axis = axis;
    return s;
}

struct OracleOptions {
    double ratio = 0.5;                // discrepancy above which a point is aliased
    double floor_db = -30.0;           // reference floor, relative to the matched dense value
    double reference_spacing = 0.25;   // dense lattice spacing, in wavelengths
};

struct OracleVerdict {
    double actual = 0.0;       // |integral estimate| with the real spacing
    double reference = 0.0;    // |integral estimate| on the dense lattice
    double matched = 0.0;      // dense estimate at tentative == scatterer
    double discrepancy = 0.0;
    bool aliased = false;
};

namespace detail {

/// Trapezoid-weighted lattice sum of the chirp times the cell volume: an
/// estimate of the aperture integral whose error is, by Poisson summation,
/// the spectral replicas evaluated at k = 0.
inline Complex aperture_integral(const ArrayGeometry& array, const Vec3& tentative, const Vec3& scatterer,
                                 const WaveParams& wave) {
    const std::size_t d = array.lattice_dimension();
    const auto counts = array.counts();
    double volume = 1.0;
    for (std::size_t j = 0; j < d; ++j) {
        if (array.samples_axis(j)) volume *= array.spacings()[j];
    }
    std::array<std::size_t, 3> idx{};
    Complex acc{};
    const auto pos = array.positions();
    for (std::size_t e = 0; e < pos.size(); ++e) {
        double w = 1.0;
        for (std::size_t j = 0; j < d; ++j) {
            if (counts[j] >= 2 && (idx[j] == 0 || idx[j] + 1 == counts[j])) w *= 0.5;
        }
        acc += w * chirp_value(pos[e], tentative, scatterer, wave);
        for (std::size_t j = d; j-- > 0;) {
            if (++idx[j] < counts[j]) break;
            idx[j] = 0;
        }
    }
    return acc * volume;
}

}  // namespace detail

/// Same aperture, sampled at `reference_spacing` wavelengths or finer along
/// every sampled axis.
inline ArrayGeometry dense_reference_array(const ArrayGeometry& array, const WaveParams& wave,
                                           double reference_spacing = 0.25) {
    const std::size_t d = array.lattice_dimension();
    std::vector<Vec3> axes(array.axes().begin(), array.axes().end());
    std::vector<std::size_t> counts(d);
    std::vector<double> spacings(d);
    const double target = reference_spacing * wave.wavelength();
    for (std::size_t j = 0; j < d; ++j) {
        if (!array.samples_axis(j)) {
            counts[j] = 1;
            spacings[j] = array.spacings()[j];
            continue;
        }
        const double aperture = static_cast<double>(array.counts()[j] - 1) * array.spacings()[j];
        const auto intervals = static_cast<std::size_t>(std::ceil(aperture / target - 1e-9));
        counts[j] = std::max<std::size_t>(intervals, 1) + 1;
        spacings[j] = aperture / static_cast<double>(counts[j] - 1);
    }
    return ArrayGeometry(array.origin(), std::move(axes), std::move(counts), std::move(spacings), array.role());
}

/// Brute-force aliasing check at one tentative point: compares the aperture
/// integral estimated with the real element spacing against a dense lattice
/// over the same aperture. Aliased when
///   | |actual| - |reference| | / max(|reference|, floor * |matched|) > ratio.
inline OracleVerdict aliasing_oracle(const ArrayGeometry& array, const Vec3& tentative, const Vec3& scatterer,
                                     const WaveParams& wave, const OracleOptions& opt = {}) {
    if (array.empty()) throw ImagingError("aliasing_oracle: array has no elements");
    if (!(opt.ratio > 0.0)) throw SpectralError("oracle ratio must be positive");
    const ArrayGeometry dense = dense_reference_array(array, wave, opt.reference_spacing);
    OracleVerdict v;
    v.actual = std::abs(detail::aperture_integral(array, tentative, scatterer, wave));
    v.reference = std::abs(detail::aperture_integral(dense, tentative, scatterer, wave));
    v.matched = std::abs(detail::aperture_integral(dense, scatterer, scatterer, wave));
    const double denom = std::max(v.reference, std::pow(10.0, opt.floor_db / 20.0) * v.matched);
    v.discrepancy = denom > 0.0 ? std::abs(v.actual - v.reference) / denom : 0.0;
    v.aliased = v.discrepancy > opt.ratio;
    return v;
}

}  // namespace nfalias
