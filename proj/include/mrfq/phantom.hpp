#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "mrfq/common.hpp"
#include "mrfq/grid.hpp"
#include "mrfq/rng.hpp"

namespace mrfq {

/// Ground-truth parameter maps plus the tissue/background segmentation.
/// Background pixels carry 0 in every map.
struct ParameterMapSet {
    int width = 0;
    int height = 0;
    RealImage t1_map;  // ms
    RealImage t2_map;  // ms
    RealImage df_map;  // Hz
    BoolImage background;  // true = no tissue
};

/// Snapping mode for simulated parameters relative to the dictionary grid.
/// Train phantoms sit exactly on grid points; test phantoms sit on the
/// midpoints between neighbouring entries, the worst case for dictionary
/// resolution.
enum class PhantomPreset { Train, Test };

struct TissueClass {
    std::string name;
    double t1_ms;
    double t2_ms;
};

struct PhantomSpec {
    int width = 64;
    int height = 64;
    PhantomPreset preset = PhantomPreset::Train;
    // Nominal class parameters; snapped per preset against the grid.
    std::vector<TissueClass> classes = {
        {"rim", 1000.0, 60.0},   {"white-matter", 900.0, 50.0}, {"gray-matter", 1300.0, 90.0},
        {"csf", 1900.0, 280.0},  {"lesion-a", 1600.0, 150.0},   {"lesion-b", 1150.0, 110.0},
        {"lesion-c", 1750.0, 210.0},
    };
    /// Reject (rather than warn about) class parameters outside the grid.
    bool strict = false;
};

namespace detail {

struct Ellipse {
    double cx, cy, rx, ry;
    bool contains(double x, double y) const {
        const double dx = (x - cx) / rx;
        const double dy = (y - cy) / ry;
        return dx * dx + dy * dy <= 1.0;
    }
};

inline double snap_for_preset(const std::vector<double>& grid_values, double x,
                              PhantomPreset preset) {
    return preset == PhantomPreset::Train ? snap_to_grid(grid_values, x)
                                          : snap_to_midpoint(grid_values, x);
}

}  // namespace detail

/// Piecewise-constant tissue phantom (nested ellipses plus small lesions)
/// with a smooth polynomial off-resonance field. (T1, T2) per class and the
/// df field are snapped onto grid points (train preset) or onto grid
/// midpoints (test preset). Deterministic given (spec, seed).
inline ParameterMapSet make_phantom(const PhantomSpec& spec, std::uint64_t seed,
                                    const ParameterGrid& grid,
                                    std::vector<std::string>* warnings = nullptr) {
    if (spec.width < 16 || spec.height < 16)
        throw std::invalid_argument("make_phantom: dimensions must be at least 16x16");
    if (spec.classes.size() < 4)
        throw std::invalid_argument("make_phantom: need at least 4 tissue classes");

    for (const auto& cls : spec.classes) {
        const bool t1_out = cls.t1_ms < grid.t1_values.front() || cls.t1_ms > grid.t1_values.back();
        const bool t2_out = cls.t2_ms < grid.t2_values.front() || cls.t2_ms > grid.t2_values.back();
        if (t1_out || t2_out) {
            const std::string msg = "class '" + cls.name + "' has parameters outside the grid";
            if (spec.strict) throw std::invalid_argument("make_phantom: " + msg);
            if (warnings) warnings->push_back(msg);
        }
    }

    Rng rng(seed);
    const auto jitter = [&rng](double amount) { return rng.uniform(-amount, amount); };

    // Geometry in normalized [-1, 1] coordinates.
    const detail::Ellipse head{jitter(0.04), jitter(0.04), 0.90 + jitter(0.03), 0.93 + jitter(0.03)};
    const detail::Ellipse brain{head.cx, head.cy, head.rx * 0.85, head.ry * 0.85};
    const detail::Ellipse gray{head.cx + jitter(0.05), head.cy + 0.05 + jitter(0.05),
                               brain.rx * 0.62, brain.ry * 0.66};
    const detail::Ellipse csf{head.cx + jitter(0.04), head.cy - 0.10 + jitter(0.05),
                              brain.rx * 0.22, brain.ry * 0.30};
    std::vector<detail::Ellipse> lesions;
    for (std::size_t i = 0; i + 4 < spec.classes.size(); ++i) {
        const double angle = rng.uniform(0.0, 2.0 * kPi);
        const double rad = rng.uniform(0.30, 0.55);
        const double size = rng.uniform(0.06, 0.11);
        lesions.push_back({brain.cx + rad * std::cos(angle), brain.cy + rad * std::sin(angle),
                           size, size});
    }

    // Smooth off-resonance field: linear + quadratic polynomial, rescaled to
    // sit inside the df grid span with a small margin.
    const double a0 = rng.uniform(-1.0, 1.0), ax = rng.uniform(-1.0, 1.0),
                 ay = rng.uniform(-1.0, 1.0), axx = rng.uniform(-1.0, 1.0),
                 ayy = rng.uniform(-1.0, 1.0), axy = rng.uniform(-1.0, 1.0);
    const auto poly = [&](double x, double y) {
        return a0 + ax * x + ay * y + axx * x * x + ayy * y * y + axy * x * y;
    };

    ParameterMapSet maps;
    maps.width = spec.width;
    maps.height = spec.height;
    maps.t1_map = RealImage::Zero(spec.height, spec.width);
    maps.t2_map = RealImage::Zero(spec.height, spec.width);
    maps.df_map = RealImage::Zero(spec.height, spec.width);
    maps.background = BoolImage::Constant(spec.height, spec.width, true);

    const auto norm_x = [&](int c) { return 2.0 * (c + 0.5) / spec.width - 1.0; };
    const auto norm_y = [&](int r) { return 2.0 * (r + 0.5) / spec.height - 1.0; };

    double poly_min = std::numeric_limits<double>::infinity();
    double poly_max = -std::numeric_limits<double>::infinity();
    for (int r = 0; r < spec.height; ++r)
        for (int c = 0; c < spec.width; ++c) {
            if (!head.contains(norm_x(c), norm_y(r))) continue;
            const double v = poly(norm_x(c), norm_y(r));
            poly_min = std::min(poly_min, v);
            poly_max = std::max(poly_max, v);
        }
    const double df_lo = grid.df_values.front();
    const double df_hi = grid.df_values.back();
    const double margin = 0.05 * (df_hi - df_lo);
    const double span = poly_max > poly_min ? poly_max - poly_min : 1.0;
    const auto df_field = [&](double x, double y) {
        const double u = (poly(x, y) - poly_min) / span;  // [0, 1]
        return (df_lo + margin) + u * ((df_hi - margin) - (df_lo + margin));
    };

    // Snapped class parameters per preset.
    std::vector<double> t1_snapped, t2_snapped;
    for (const auto& cls : spec.classes) {
        t1_snapped.push_back(detail::snap_for_preset(grid.t1_values, cls.t1_ms, spec.preset));
        t2_snapped.push_back(detail::snap_for_preset(grid.t2_values, cls.t2_ms, spec.preset));
    }

    for (int r = 0; r < spec.height; ++r) {
        for (int c = 0; c < spec.width; ++c) {
            const double x = norm_x(c);
            const double y = norm_y(r);
            if (!head.contains(x, y)) continue;
            std::size_t cls = 0;  // rim
            if (brain.contains(x, y)) {
                cls = 1;  // white matter
                if (gray.contains(x, y)) cls = 2;
                if (csf.contains(x, y)) cls = 3;
                for (std::size_t l = 0; l < lesions.size(); ++l)
                    if (lesions[l].contains(x, y)) cls = 4 + l;
            }
            maps.background(r, c) = false;
            maps.t1_map(r, c) = t1_snapped[cls];
            maps.t2_map(r, c) = t2_snapped[cls];
            maps.df_map(r, c) = detail::snap_for_preset(grid.df_values, df_field(x, y), spec.preset);
        }
    }
    return maps;
}

}  // namespace mrfq
