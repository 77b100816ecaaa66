#pragma once

// Reference evaluations for the tests. Everything here is written from the
// formulas directly, in long double, without calling into the library's
// numeric kernels.

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "nfalias/vec.hpp"

namespace oracle {

using LD = long double;
using CLD = std::complex<long double>;

struct P {
    LD x = 0, y = 0, z = 0;
};

inline P lift(const nfalias::Vec3& v) { return {v.x, v.y, v.z}; }

inline LD dist(const P& a, const P& b) {
    const LD dx = a.x - b.x, dy = a.y - b.y, dz = a.z - b.z;
    return std::sqrt(dx * dx + dy * dy + dz * dz);
}

inline LD wavenumber(LD lambda) { return 2.0L * std::numbers::pi_v<long double> / lambda; }

inline CLD green(const P& s, const P& x, LD lambda) {
    const LD r = dist(s, x);
    const LD ph = -wavenumber(lambda) * r;
    return CLD(std::cos(ph), std::sin(ph)) / r;
}

inline CLD chirp(const P& x, const P& tentative, const P& scatterer, LD lambda) {
    return std::conj(green(tentative, x, lambda)) * green(scatterer, x, lambda);
}

inline CLD partial_sum(const std::vector<nfalias::Vec3>& elements, const nfalias::Vec3& tentative,
                       const nfalias::Vec3& scatterer, LD lambda) {
    CLD acc = 0;
    for (const auto& e : elements) acc += chirp(lift(e), lift(tentative), lift(scatterer), lambda);
    return acc;
}

/// Local wavenumber vector in long double.
inline P local_k(const P& x, const P& t, const P& s, LD lambda) {
    const LD dt = dist(x, t), ds = dist(x, s), k = wavenumber(lambda);
    return {k * ((x.x - t.x) / dt - (x.x - s.x) / ds), k * ((x.y - t.y) / dt - (x.y - s.y) / ds),
            k * ((x.z - t.z) / dt - (x.z - s.z) / ds)};
}

inline LD max_projection(const std::vector<nfalias::Vec3>& elements, const nfalias::Vec3& axis, const nfalias::Vec3& t,
                         const nfalias::Vec3& s, LD lambda) {
    LD best = 0;
    for (const auto& e : elements) {
        const P kv = local_k(lift(e), lift(t), lift(s), lambda);
        best = std::max(best, std::abs(kv.x * axis.x + kv.y * axis.y + kv.z * axis.z));
    }
    return best;
}

/// Explicit nested loops over up to three lattice axes, first axis outermost.
inline std::vector<nfalias::Vec3> lattice(const nfalias::Vec3& origin, const std::vector<nfalias::Vec3>& axes,
                                          const std::vector<std::size_t>& counts, const std::vector<double>& spacing) {
    std::vector<nfalias::Vec3> out;
    const std::size_t n0 = counts[0];
    const std::size_t n1 = counts.size() > 1 ? counts[1] : 1;
    const std::size_t n2 = counts.size() > 2 ? counts[2] : 1;
    for (std::size_t a = 0; a < n0; ++a) {
        for (std::size_t b = 0; b < n1; ++b) {
            for (std::size_t c = 0; c < n2; ++c) {
                const std::size_t idx[3] = {a, b, c};
                nfalias::Vec3 p = origin;
                for (std::size_t j = 0; j < axes.size(); ++j) p = p + (static_cast<double>(idx[j]) * spacing[j]) * axes[j];
                out.push_back(p);
            }
        }
    }
    return out;
}

/// Uniformly random rotation of the canonical frame, returned as three
/// orthonormal vectors (Gram-Schmidt on Gaussian draws).
inline std::vector<nfalias::Vec3> random_frame(std::mt19937_64& rng) {
    std::normal_distribution<double> n(0.0, 1.0);
    auto unit = [](nfalias::Vec3 v) { return v * (1.0 / nfalias::norm(v)); };
    const nfalias::Vec3 a = unit({n(rng), n(rng), n(rng)});
    nfalias::Vec3 b{n(rng), n(rng), n(rng)};
    b = unit(b - nfalias::dot(a, b) * a);
    nfalias::Vec3 c = nfalias::cross(a, b);
    c = unit(c);
    return {a, b, c};
}

/// In-plane (z = 0) frame rotated by a random angle.
inline std::vector<nfalias::Vec3> random_planar_frame(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 2.0 * std::numbers::pi);
    const double th = u(rng);
    return {{std::cos(th), std::sin(th), 0.0}, {-std::sin(th), std::cos(th), 0.0}, {0.0, 0.0, 1.0}};
}

inline double rel(std::complex<double> a, CLD ref) {
    const LD d = std::abs(CLD(a.real(), a.imag()) - ref);
    return static_cast<double>(d / std::abs(ref));
}

}  // namespace oracle
