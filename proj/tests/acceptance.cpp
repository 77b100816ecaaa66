// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <functional>
#include <random>
#include <string>

#include "nfalias/nfalias.hpp"
#include "oracles.hpp"

using namespace nfalias;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

int failures = 0;

void criterion(const char* id, const char* title, double budget_s, const std::function<Outcome()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    char timing[96];
    if (budget_s > 0) {
        std::snprintf(timing, sizeof timing, "%.2fs of %.0fs", secs, budget_s);
        if (secs >= budget_s) {
            o.pass = false;
            o.detail += "; over time budget";
        }
    } else {
        std::snprintf(timing, sizeof timing, "%.2fs", secs);
    }
    if (!o.pass) ++failures;
    std::printf("%s %-3s %s: %s [%s]\n", o.pass ? "PASS" : "FAIL", id, title, o.detail.c_str(), timing);
    std::fflush(stdout);
}

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

const Vec3 X{1, 0, 0}, Y{0, 1, 0};

// Random 1-D or 2-D lattice with at most 16 elements in the z = 0 plane.
ArrayGeometry random_small_array(std::mt19937_64& rng, ArrayRole role, Vec3 center) {
    std::uniform_int_distribution<int> coin(0, 1);
    std::uniform_real_distribution<double> sp(0.3, 8.0);
    const auto f = oracle::random_planar_frame(rng);
    if (coin(rng) == 0) {
        std::uniform_int_distribution<std::size_t> n(1, 16);
        return build_centered_array(center, {f[0]}, {n(rng)}, {sp(rng)}, role);
    }
    std::uniform_int_distribution<std::size_t> n(1, 4);
    return build_centered_array(center, {f[0], f[1]}, {n(rng), n(rng)}, {sp(rng), sp(rng)}, role);
}

double min_distance(const ArrayGeometry& a, const Vec3& p) {
    double d = 1e300;
    for (const auto& e : a.positions()) d = std::min(d, distance(e, p));
    return d;
}

// ---------------------------------------------------------------------------

Outcome separability() {
    std::mt19937_64 rng(101);
    std::uniform_real_distribution<double> u(-150, 150), side(20, 200);
    const WaveParams w(1.0);
    double worst = 0.0;
    int cells = 0;
    for (int trial = 0; trial < 50; ++trial) {
        const auto tx = random_small_array(rng, ArrayRole::transmit, {u(rng), u(rng), 0});
        const auto rx = random_small_array(rng, ArrayRole::receive, {u(rng), u(rng), 0});
        Vec3 xs;
        do {
            xs = {u(rng), u(rng), 0};
        } while (min_distance(tx, xs) < 10 || min_distance(rx, xs) < 10);
        const Scene scene{xs, std::polar(1.0, u(rng))};
        const double s = side(rng);
        const Vec3 c{xs.x + u(rng) / 3, xs.y + u(rng) / 3, 0};
        const EvalGrid g({c.x - s / 2, c.y - s / 2}, {c.x + s / 2, c.y + s / 2}, {16, 16});
        const auto direct = direct_image(tx, rx, scene, w, g);
        const auto product =
            bistatic_image(partial_image(tx, scene, w, g), partial_image(rx, scene, w, g), scene.reflectivity);
        for (std::size_t i = 0; i < g.size(); ++i) {
            if (direct.is_excluded(i)) continue;
            ++cells;
            worst = std::max(worst, std::abs(direct.values[i] - product.values[i]) / std::abs(direct.values[i]));
        }
    }
    return {worst <= 1e-10, fmt("max cell-wise relative error %.3g over %d cells (tol 1e-10)", worst, cells)};
}

Outcome gradient() {
    std::mt19937_64 rng(202);
    std::uniform_real_distribution<double> u(-200, 200);
    const WaveParams w(1.0);
    const double h = 1e-4;
    double worst = 0.0;
    int n = 0;
    while (n < 1000) {
        const Vec3 x{u(rng), u(rng), u(rng)}, t{u(rng), u(rng), u(rng)}, s{u(rng), u(rng), u(rng)};
        if (distance(x, t) <= w.exclusion_radius() + h || distance(x, s) <= w.exclusion_radius() + h) continue;
        const Vec3 k = local_wavenumber(x, t, s, w);
        Vec3 fd;
        const Vec3 ex{h, 0, 0}, ey{0, h, 0}, ez{0, 0, h};
        fd.x = (chirp_phase(x + ex, t, s, w) - chirp_phase(x - ex, t, s, w)) / (2 * h);
        fd.y = (chirp_phase(x + ey, t, s, w) - chirp_phase(x - ey, t, s, w)) / (2 * h);
        fd.z = (chirp_phase(x + ez, t, s, w) - chirp_phase(x - ez, t, s, w)) / (2 * h);
        worst = std::max(worst, norm(fd - k) / norm(k));
        ++n;
    }
    return {worst <= 1e-5, fmt("max relative error %.3g over %d triples (tol 1e-5)", worst, n)};
}

Outcome matched_point() {
    std::mt19937_64 rng(303);
    std::uniform_real_distribution<double> u(-300, 300);
    const WaveParams w(1.0);
    const auto fig1 = presets::fig1();
    double worst_k = 0.0, worst_im = 0.0;
    bool positive = true;
    auto check = [&](const ArrayGeometry& a, const Vec3& xs) {
        for (std::size_t j = 0; j < a.lattice_dimension(); ++j) {
            worst_k = std::max(worst_k, max_spatial_frequency(a, xs, xs, w, j) / w.wavenumber());
        }
        const EvalGrid g({xs.x - 0.5, xs.y - 0.5}, {xs.x + 1.5, xs.y + 1.5}, {2, 2});
        const Vec3 at = g.cell_center(0);
        const Complex S = partial_image(a, Scene{at}, w, g).values[0];
        positive = positive && S.real() > 0.0;
        worst_im = std::max(worst_im, std::abs(S.imag()) / std::abs(S));
    };
    check(fig1.tx_array(), fig1.scene().scatterer);
    check(fig1.rx_array(), fig1.scene().scatterer);
    for (int i = 0; i < 50; ++i) {
        const auto a = random_small_array(rng, i % 2 ? ArrayRole::transmit : ArrayRole::receive, {u(rng), u(rng), 0});
        Vec3 xs;
        do {
            xs = {u(rng), u(rng), 0};
        } while (min_distance(a, xs) < 5);
        check(a, xs);
    }
    const bool ok = worst_k <= 1e-12 && worst_im <= 1e-10 && positive;
    return {ok, fmt("max K/k %.3g (tol 1e-12), max |Im S|/|S| %.3g (tol 1e-10), Re S > 0: %s", worst_k, worst_im,
                    positive ? "yes" : "no")};
}

Outcome half_wavelength() {
    const auto c = presets::halfwave();
    const auto tx = c.tx_array(), rx = c.rx_array();
    const auto grid = c.grid();
    const auto wave = c.wave();
    const auto mask = aliasing_mask(tx, rx, c.scene(), wave, grid);
    std::size_t valid = 0, free_cells = 0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (mask.excluded[i]) continue;
        ++valid;
        free_cells += mask.combined[i];
    }
    std::mt19937_64 rng(404);
    std::uniform_int_distribution<std::size_t> pick(0, grid.size() - 1);
    int tested = 0, aliased = 0;
    const OracleOptions opt{c.thresholds.oracle_ratio, c.thresholds.oracle_floor_db, 0.25};
    while (tested < 100) {
        const std::size_t i = pick(rng);
        if (mask.excluded[i]) continue;
        const Vec3 t = grid.cell_center(i);
        if (aliasing_oracle(tx, t, c.scene().scatterer, wave, opt).aliased ||
            aliasing_oracle(rx, t, c.scene().scatterer, wave, opt).aliased) {
            ++aliased;
        }
        ++tested;
    }
    const bool ok = free_cells == valid && aliased == 0;
    return {ok, fmt("mask true on %zu of %zu non-excluded cells (%zux%zu grid, %zu-element arrays); oracle aliased at %d of %d "
                    "cells",
                    free_cells, valid, grid.nx(), grid.ny(), tx.size(), aliased, tested)};
}

Outcome zero_bin() {
    std::mt19937_64 rng(505);
    std::uniform_real_distribution<double> u(-400, 400), sp(0.3, 12.0);
    std::uniform_int_distribution<std::size_t> n(8, 96);
    const WaveParams w(1.0);
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        const auto f = oracle::random_planar_frame(rng);
        const auto a = build_uniform_array({u(rng), u(rng) - 900, 0}, {f[0]}, {n(rng)}, {sp(rng)}, ArrayRole::transmit);
        const Vec3 xs{u(rng), u(rng) + 900, 0}, near{u(rng), u(rng) + 900, 0};
        const EvalGrid g({near.x - 0.5, near.y - 0.5}, {near.x + 1.5, near.y + 1.5}, {2, 2});
        const Vec3 t = g.cell_center(0);
        const Complex S = partial_image(a, Scene{xs}, w, g).values[0];
        const auto spec = spectral_support(sample_chirp_along_axis(a, t, xs, w, 0, 1), a.spacings()[0], -20.0,
                                           Window::rectangular);
        worst = std::max(worst, std::abs(spec.zero_bin - S) / std::abs(S));
    }
    return {worst <= 1e-10, fmt("max relative difference %.3g over 20 pairs (tol 1e-10)", worst)};
}

Outcome fig1_structure() {
    const auto c = presets::fig1();
    const auto tx = c.tx_array(), rx = c.rx_array();
    const auto scene = c.scene();
    const auto wave = c.wave();
    const auto grid = c.grid();
    const auto st = partial_image(tx, scene, wave, grid);
    const auto sr = partial_image(rx, scene, wave, grid);
    const auto image = bistatic_image(st, sr, scene.reflectivity);
    const auto mask = aliasing_mask(tx, rx, scene, wave, grid);

    const std::size_t xs_cell = grid.cell_containing(scene.scatterer);
    const bool a = peak_cell(image).first == xs_cell;
    const bool b = mask.combined[xs_cell] != 0;

    auto local_maxima = [&](const ComplexField& f) {
        const double top = peak_cell(f).second;
        const double level = top * std::pow(10.0, -10.0 / 20.0);
        int count = 0;
        for (std::size_t iy = 1; iy + 1 < grid.ny(); ++iy) {
            for (std::size_t ix = 1; ix + 1 < grid.nx(); ++ix) {
                const std::size_t i = grid.flat_index(ix, iy);
                if (f.is_excluded(i) || mask.combined[i]) continue;
                const double m = std::abs(f.values[i]);
                if (m < level) continue;
                bool is_max = true;
                for (int dy = -1; dy <= 1 && is_max; ++dy) {
                    for (int dx = -1; dx <= 1; ++dx) {
                        if (!dx && !dy) continue;
                        if (std::abs(f.values[grid.flat_index(ix + dx, iy + dy)]) >= m) {
                            is_max = false;
                            break;
                        }
                    }
                }
                count += is_max;
            }
        }
        return count;
    };
    const int peaks_t = local_maxima(st), peaks_r = local_maxima(sr);
    const bool cc = peaks_t >= 3 && peaks_r >= 3;

    const OracleOptions opt{c.thresholds.oracle_ratio, c.thresholds.oracle_floor_db, 0.25};
    int agree = 0, total = 0;
    for (int jy = 0; jy < 64; ++jy) {
        for (int jx = 0; jx < 64; ++jx) {
            const auto ix = static_cast<std::size_t>(std::lround(jx * 256.0 / 63.0));
            const auto iy = static_cast<std::size_t>(std::lround(jy * 256.0 / 63.0));
            const std::size_t i = grid.flat_index(ix, iy);
            if (mask.excluded[i]) continue;
            const Vec3 t = grid.cell_center(i);
            const bool aliased = aliasing_oracle(tx, t, scene.scatterer, wave, opt).aliased ||
                                 aliasing_oracle(rx, t, scene.scatterer, wave, opt).aliased;
            agree += (mask.combined[i] != 0) == !aliased;
            ++total;
        }
    }
    const double agreement = double(agree) / double(total);
    const bool d = agreement >= 0.90;
    return {a && b && cc && d,
            fmt("(a) |I| max at x_s cell: %s; (b) x_s cell in mask: %s; (c) local maxima outside mask above -10 dB "
                "S_t=%d S_r=%d (need >=3); (d) mask/oracle agreement %.1f%% over %d cells (need >=90%%)",
                a ? "yes" : "no", b ? "yes" : "no", peaks_t, peaks_r, 100.0 * agreement, total)};
}

Outcome trends() {
    auto areas = [](const RunConfig& base, SweepParameter p, std::vector<double> values) {
        const auto pts = sweep(base, p, values);
        return std::make_pair(pts[0].row.mask_area, pts[1].row.mask_area);
    };
    const auto [a16, a64] = areas(presets::fig2a(), SweepParameter::spacing, {500.0 / 16.0, 500.0 / 64.0});
    const auto [l250, l1000] = areas(presets::fig2b(), SweepParameter::length, {250.0, 1000.0});
    const auto [r500, r1000] = areas(presets::range(), SweepParameter::range, {500.0, 1000.0});
    const auto [d1, d2] = areas(presets::fig2c(), SweepParameter::dimensionality, {1.0, 2.0});
    const bool a = a16 < a64, b = l1000 < l250, c = r500 < r1000, d = d2 < d1;
    return {a && b && c && d,
            fmt("(a) N=16 %zu < N=64 %zu: %s; (b) L=1000 %zu < L=250 %zu: %s; (c) x_s@500 %zu < x_s@1000 %zu: %s; "
                "(d) 2D %zu < 1D %zu: %s",
                a16, a64, a ? "yes" : "no", l1000, l250, b ? "yes" : "no", r500, r1000, c ? "yes" : "no", d2, d1,
                d ? "yes" : "no")};
}

Outcome monotonicity() {
    std::mt19937_64 rng(808);
    std::uniform_real_distribution<double> u(-300, 300), sp(0.4, 10.0);
    std::uniform_int_distribution<std::size_t> cnt(2, 24);
    const WaveParams w(1.0);

    int growth_violations = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const auto f = oracle::random_planar_frame(rng);
        const bool planar = trial % 2;
        std::vector<Vec3> axes{f[0]};
        std::vector<std::size_t> counts{cnt(rng)};
        std::vector<double> spacings{sp(rng)};
        if (planar) {
            axes.push_back(f[1]);
            counts.push_back(std::min<std::size_t>(cnt(rng), 8));
            spacings.push_back(sp(rng));
        }
        const Vec3 origin{u(rng), u(rng) - 600, 0};
        const auto big = build_uniform_array(origin, axes, counts, spacings, ArrayRole::transmit);
        // sub-block: a contiguous index range, optionally strided, along every axis
        Vec3 sub_origin = origin;
        std::vector<std::size_t> sub_counts;
        std::vector<double> sub_spacings;
        for (std::size_t j = 0; j < axes.size(); ++j) {
            std::uniform_int_distribution<std::size_t> stride_d(1, 2);
            const std::size_t stride = counts[j] >= 3 ? stride_d(rng) : 1;
            std::uniform_int_distribution<std::size_t> start_d(0, counts[j] - 1);
            const std::size_t start = start_d(rng);
            const std::size_t room = (counts[j] - 1 - start) / stride + 1;
            std::uniform_int_distribution<std::size_t> len_d(1, room);
            sub_counts.push_back(len_d(rng));
            sub_spacings.push_back(spacings[j] * double(stride));
            sub_origin += (double(start) * spacings[j]) * axes[j];
        }
        const auto small = build_uniform_array(sub_origin, axes, sub_counts, sub_spacings, ArrayRole::transmit);
        Vec3 xs, t;
        do {
            xs = {u(rng), u(rng) + 400, 0};
            t = {u(rng), u(rng) + 400, 0};
        } while (min_distance(big, xs) < 1 || min_distance(big, t) < 1);
        for (std::size_t j = 0; j < axes.size(); ++j) {
            // sub-block positions come from their own lattice, equal to the
            // big array's only up to rounding
            const double ks = max_spatial_frequency(small, t, xs, w, j);
            const double kb = max_spatial_frequency(big, t, xs, w, j);
            if (ks > kb * (1 + 1e-9)) ++growth_violations;
        }
    }

    int flips = 0;
    std::size_t cells = 0;
    for (int trial = 0; trial < 20; ++trial) {
        const auto f = oracle::random_planar_frame(rng);
        std::uniform_int_distribution<std::size_t> n(4, 20);
        const std::size_t nt = n(rng), nr = n(rng);
        const double dt = sp(rng) * 3, dr = sp(rng) * 3;
        const Vec3 ct{u(rng), -500, 0}, cr{-500, u(rng), 0};
        const auto tx = build_centered_array(ct, {f[0]}, {nt}, {dt}, ArrayRole::transmit);
        const auto rx = build_centered_array(cr, {f[1]}, {nr}, {dr}, ArrayRole::receive);
        const auto tx2 = build_centered_array(ct, {f[0]}, {2 * nt - 1}, {dt / 2}, ArrayRole::transmit);
        const auto rx2 = build_centered_array(cr, {f[1]}, {2 * nr - 1}, {dr / 2}, ArrayRole::receive);
        const Scene scene{{u(rng) / 2, u(rng) / 2, 0}};
        const EvalGrid g({-300, -300}, {300, 300}, {48, 48});
        const auto coarse = aliasing_mask(tx, rx, scene, w, g);
        const auto fine = aliasing_mask(tx2, rx2, scene, w, g);
        for (std::size_t i = 0; i < g.size(); ++i) {
            if (coarse.excluded[i] || fine.excluded[i]) continue;
            ++cells;
            if (coarse.combined[i] && !fine.combined[i]) ++flips;
        }
    }
    return {growth_violations == 0 && flips == 0,
            fmt("superset K decreases: %d of 100 pairs; refinement true->false flips: %d of %zu cells in 20 configs",
                growth_violations, flips, cells)};
}

Outcome determinism(const fs::path& out) {
    const auto c = presets::fig1();
    const auto a = run(c, {out / "fig1_threads1", Parallelism{1}});
    const auto b = run(c, {out / "fig1_threads4", Parallelism{4}});
    const bool same_manifest = io::read_file(a.manifest) == io::read_file(b.manifest);
    bool same_products = a.products.size() == b.products.size();
    for (std::size_t i = 0; same_products && i < a.products.size(); ++i) {
        same_products = a.products[i].sha256 == b.products[i].sha256 &&
                        io::read_file(out / "fig1_threads1" / a.products[i].file) ==
                            io::read_file(out / "fig1_threads4" / b.products[i].file);
    }
    return {same_manifest && same_products,
            fmt("threads 1 vs 4: manifest %s (sha256 %.12s...), %zu products %s", same_manifest ? "identical" : "DIFFERS",
                a.manifest_sha256.c_str(), a.products.size(), same_products ? "byte-identical" : "DIFFER")};
}

}  // namespace

int main(int argc, char** argv) {
    fs::path out = fs::temp_directory_path() / "nfalias_acceptance";
    for (int i = 1; i + 1 < argc; ++i) {
        if (std::strcmp(argv[i], "--out") == 0) out = argv[i + 1];
    }
    fs::remove_all(out);
    fs::create_directories(out);

    criterion("1", "separability (direct double sum vs zeta*S_t*S_r)", 10, separability);
    criterion("2", "local wavenumber vs finite-difference phase gradient", 1, gradient);
    criterion("3", "matched-point K = 0 and real positive S", 0, matched_point);
    criterion("4", "half-wavelength guarantee (mask and oracle)", 0, half_wavelength);
    criterion("5", "rectangular zero bin equals partial image", 0, zero_bin);
    criterion("6", "fig1 structure", 60, fig1_structure);
    criterion("7", "mask-area trends", 300, trends);
    criterion("8", "monotonicity (array growth, lattice refinement)", 0, monotonicity);
    criterion("9", "determinism across thread counts", 0, [&] { return determinism(out); });

    std::printf("%s: %d criteria failed\n", failures ? "FAILED" : "ALL PASSED", failures);
    return failures ? 1 : 0;
}
