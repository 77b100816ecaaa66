#pragma once

#include <cmath>
#include <complex>

#include "error.hpp"
#include "geometry.hpp"

namespace nfalias {

namespace detail {

inline double checked_distance(const Vec3& a, const Vec3& b, const WaveParams& wave, const char* what) {
    const double d = distance(a, b);
    if (!(d > wave.exclusion_radius())) {
        throw SingularityError(std::string(what) + ": points closer than the exclusion radius");
    }
    return d;
}

}  // namespace detail

/// Spherical-wave Green's factor e^{-jk r} / r between a source and a probe.
inline Complex green(const Vec3& source, const Vec3& probe, const WaveParams& wave) {
    const double r = detail::checked_distance(source, probe, wave, "green");
    return std::polar(1.0 / r, -wave.wavenumber() * r);
}

/// Noise-free bistatic sample for one (rx, tx) pair and a point scatterer.
inline Complex received_signal(const Vec3& rx, const Vec3& tx, const Scene& scene, const WaveParams& wave) {
    return scene.reflectivity * green(scene.scatterer, rx, wave) * green(scene.scatterer, tx, wave);
}

/// Unwrapped phase of the spatial chirp, k (|x - tentative| - |x - scatterer|).
inline double chirp_phase(const Vec3& probe, const Vec3& tentative, const Vec3& scatterer, const WaveParams& wave) {
    const double dt = detail::checked_distance(probe, tentative, wave, "chirp_phase");
    const double ds = detail::checked_distance(probe, scatterer, wave, "chirp_phase");
    return wave.wavenumber() * (dt - ds);
}

/// Spatial chirp conj(z(tentative, x)) * z(scatterer, x). The phase is formed
/// from the distance difference before exponentiation, which keeps it accurate
/// when both distances are many wavelengths.
inline Complex chirp_value(const Vec3& probe, const Vec3& tentative, const Vec3& scatterer, const WaveParams& wave) {
    const double dt = detail::checked_distance(probe, tentative, wave, "chirp_value");
    const double ds = detail::checked_distance(probe, scatterer, wave, "chirp_value");
    return std::polar(1.0 / (dt * ds), wave.wavenumber() * (dt - ds));
}

}  // namespace nfalias
