#pragma once

#include <openssl/evp.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "chirp.hpp"
#include "error.hpp"
#include "imaging.hpp"
#include "spectral.hpp"

namespace nfalias::io {

/// Float format used in every CSV: 17 significant digits.
inline std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

using Metadata = std::vector<std::pair<std::string, std::string>>;

inline void write_metadata(std::ostream& os, const Metadata& meta) {
    for (const auto& [key, value] : meta) os << "# " << key << ": " << value << '\n';
}

inline std::string sha256_hex(const std::string& bytes) {
    std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), md.data(), &len, EVP_sha256(), nullptr) != 1) {
        throw IoError("SHA-256 computation failed");
    }
    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned int i = 0; i < len; ++i) {
        out.push_back(hex[md[i] >> 4]);
        out.push_back(hex[md[i] & 0xF]);
    }
    return out;
}

inline void write_file(const std::filesystem::path& path, const std::string& bytes) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot open " + path.string() + " for writing");
    f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!f) throw IoError("write failed for " + path.string());
}

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open " + path.string());
    return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

inline Metadata grid_metadata(const EvalGrid& grid, double wavelength) {
    auto join = [&](auto span, bool scale) {
        std::string s;
        for (std::size_t i = 0; i < span.size(); ++i) {
            if (i) s += ' ';
            s += scale ? fmt(static_cast<double>(span[i]) / wavelength) : std::to_string(span[i]);
        }
        return s;
    };
    return {{"grid_min_lambda", join(grid.corner_min(), true)},
            {"grid_max_lambda", join(grid.corner_max(), true)},
            {"grid_resolution", join(grid.resolution(), false)}};
}

/// Long-format CSV of a complex field, one cell per row in flat (row-major)
/// order: coordinates in wavelengths, re, im, peak-normalised dB, excluded flag.
inline std::string field_csv(const ComplexField& field, double floor_db, Metadata meta) {
    const RealField db = magnitude_db(field, floor_db);
    const bool three_d = field.grid.dimension() == 3;
    const double lam = field.meta.wavelength;
    std::ostringstream os;
    meta.emplace_back("columns", three_d ? "x,y,z,re,im,magnitude_db,excluded" : "x,y,re,im,magnitude_db,excluded");
    write_metadata(os, meta);
    for (std::size_t i = 0; i < field.size(); ++i) {
        const Vec3 c = field.grid.cell_center(i);
        os << fmt(c.x / lam) << ',' << fmt(c.y / lam) << ',';
        if (three_d) os << fmt(c.z / lam) << ',';
        os << fmt(field.values[i].real()) << ',' << fmt(field.values[i].imag()) << ',' << fmt(db.values[i]) << ','
           << (field.is_excluded(i) ? 1 : 0) << '\n';
    }
    return os.str();
}

/// 0/1 grid: one CSV row per grid row (ascending y), one column per x cell.
/// 3-D grids emit one block per z slice, each preceded by a "# z_index" line.
inline std::string mask_csv(const EvalGrid& grid, const std::vector<std::uint8_t>& values, Metadata meta) {
    std::ostringstream os;
    meta.emplace_back("layout", "rows ascending y, columns ascending x");
    write_metadata(os, meta);
    for (std::size_t iz = 0; iz < grid.nz(); ++iz) {
        if (grid.dimension() == 3) os << "# z_index: " << iz << '\n';
        for (std::size_t iy = 0; iy < grid.ny(); ++iy) {
            for (std::size_t ix = 0; ix < grid.nx(); ++ix) {
                if (ix) os << ',';
                os << (values[grid.flat_index(ix, iy, iz)] ? 1 : 0);
            }
            os << '\n';
        }
    }
    return os.str();
}

/// Binary 8-bit PGM (P5) of a 2-D grid; the top raster row is the largest y.
inline std::string pgm(const EvalGrid& grid, const std::vector<std::uint8_t>& pixels) {
    if (grid.dimension() != 2) throw IoError("PGM output needs a 2-D grid");
    std::string out = "P5\n" + std::to_string(grid.nx()) + " " + std::to_string(grid.ny()) + "\n255\n";
    out.reserve(out.size() + grid.size());
    for (std::size_t row = 0; row < grid.ny(); ++row) {
        const std::size_t iy = grid.ny() - 1 - row;
        for (std::size_t ix = 0; ix < grid.nx(); ++ix) out.push_back(static_cast<char>(pixels[grid.flat_index(ix, iy)]));
    }
    return out;
}

/// Peak-normalised magnitude mapped linearly from [floor_db, 0] to [0, 255].
inline std::string field_pgm(const ComplexField& field, double floor_db) {
    const RealField db = magnitude_db(field, floor_db);
    std::vector<std::uint8_t> px(field.size());
    for (std::size_t i = 0; i < px.size(); ++i) {
        const double t = std::clamp((db.values[i] - floor_db) / -floor_db, 0.0, 1.0);
        px[i] = static_cast<std::uint8_t>(std::lround(255.0 * t));
    }
    return pgm(field.grid, px);
}

inline std::string mask_pgm(const EvalGrid& grid, const std::vector<std::uint8_t>& values) {
    std::vector<std::uint8_t> px(values.size());
    for (std::size_t i = 0; i < px.size(); ++i) px[i] = values[i] ? 255 : 0;
    return pgm(grid, px);
}

/// Two-column spectrum CSV: wavenumber (rad per wavelength), magnitude in dB
/// relative to the spectral peak (floored at -300 dB).
inline std::string spectrum_csv(const SpectralSupport& s, double wavelength, Metadata meta) {
    std::ostringstream os;
    meta.emplace_back("columns", "wavenumber_rad_per_lambda,magnitude_db");
    write_metadata(os, meta);
    for (std::size_t i = 0; i < s.frequencies.size(); ++i) {
        const double m = std::max(s.magnitude[i], s.peak * 1e-15);
        const double db = s.peak > 0.0 ? 20.0 * std::log10(m / s.peak) : -300.0;
        os << fmt(s.frequencies[i] * wavelength) << ',' << fmt(db) << '\n';
    }
    return os.str();
}

}  // namespace nfalias::io
