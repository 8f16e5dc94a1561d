#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "mrfq/common.hpp"

namespace mrfq {

/// One axis of the parameter grid: a union of uniform segments
/// (start, step, stop), e.g. the off-resonance axis mixes a dense inner
/// band with coarse outer bands.
struct AxisSpec {
    struct Segment {
        double start;
        double step;
        double stop;
    };
    std::vector<Segment> segments;

    static AxisSpec uniform(double start, double step, double stop) {
        return AxisSpec{{{start, step, stop}}};
    }
};

struct GridSpec {
    AxisSpec t1;
    AxisSpec t2;
    AxisSpec df;
};

struct ParameterGrid {
    std::vector<double> t1_values;
    std::vector<double> t2_values;
    std::vector<double> df_values;
};

namespace detail {

inline std::vector<double> expand_axis(const AxisSpec& axis, const char* name) {
    if (axis.segments.empty())
        throw std::invalid_argument(std::string(name) + ": axis has no segments");
    std::vector<double> values;
    for (const auto& seg : axis.segments) {
        if (!(seg.step > 0.0))
            throw std::invalid_argument(std::string(name) + ": step must be positive");
        if (seg.stop < seg.start)
            throw std::invalid_argument(std::string(name) + ": inverted range");
        const auto count = static_cast<long>(std::floor((seg.stop - seg.start) / seg.step + 1e-9)) + 1;
        for (long i = 0; i < count; ++i) values.push_back(seg.start + static_cast<double>(i) * seg.step);
    }
    std::sort(values.begin(), values.end());
    for (std::size_t i = 1; i < values.size(); ++i)
        if (!(values[i] > values[i - 1]))
            throw std::invalid_argument(std::string(name) + ": segments produce duplicate values");
    return values;
}

}  // namespace detail

inline ParameterGrid build_grid(const GridSpec& spec) {
    ParameterGrid g;
    g.t1_values = detail::expand_axis(spec.t1, "t1");
    g.t2_values = detail::expand_axis(spec.t2, "t2");
    g.df_values = detail::expand_axis(spec.df, "df");
    return g;
}

/// Full-resolution grid: T1 800:20:2000 (61), T2 20:10:300 (29; step 10
/// honours the stated 61 x 29 x 115 dictionary dimensions), df dense 2 Hz in
/// [-80, 80] plus 10 Hz outer bands reaching +-250 (115 total).
inline GridSpec paper_grid_spec() {
    GridSpec s;
    s.t1 = AxisSpec::uniform(800.0, 20.0, 2000.0);
    s.t2 = AxisSpec::uniform(20.0, 10.0, 300.0);
    s.df.segments = {{-250.0, 10.0, -90.0}, {-80.0, 2.0, 80.0}, {90.0, 10.0, 250.0}};
    return s;
}

/// Reduced 16 x 8 x 21 grid for quick runs and CI.
inline GridSpec desk_grid_spec() {
    GridSpec s;
    s.t1 = AxisSpec::uniform(800.0, 80.0, 2000.0);
    s.t2 = AxisSpec::uniform(20.0, 40.0, 300.0);
    s.df = AxisSpec::uniform(-100.0, 10.0, 100.0);
    return s;
}

/// Index of the grid value nearest to x (lowest index wins ties).
inline std::size_t nearest_index(const std::vector<double>& values, double x) {
    const auto it = std::lower_bound(values.begin(), values.end(), x);
    if (it == values.begin()) return 0;
    if (it == values.end()) return values.size() - 1;
    const auto hi = static_cast<std::size_t>(it - values.begin());
    const std::size_t lo = hi - 1;
    return (x - values[lo] <= values[hi] - x) ? lo : hi;
}

inline double snap_to_grid(const std::vector<double>& values, double x) {
    return values[nearest_index(values, x)];
}

/// Nearest midpoint between consecutive grid values; for a single-value axis
/// the value itself (no midpoints exist).
inline double snap_to_midpoint(const std::vector<double>& values, double x) {
    if (values.size() < 2) return values.front();
    double best = 0.0;
    double best_dist = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i + 1 < values.size(); ++i) {
        const double mid = 0.5 * (values[i] + values[i + 1]);
        const double d = std::abs(x - mid);
        if (d < best_dist) {
            best_dist = d;
            best = mid;
        }
    }
    return best;
}

/// Width of the grid interval containing x (right interval when x sits
/// exactly on an interior entry; nearest interval beyond the ends).
inline double local_step(const std::vector<double>& values, double x) {
    if (values.size() < 2) return 0.0;
    if (x <= values.front()) return values[1] - values[0];
    if (x >= values[values.size() - 2]) return values[values.size() - 1] - values[values.size() - 2];
    auto it = std::upper_bound(values.begin(), values.end(), x);
    const auto hi = static_cast<std::size_t>(it - values.begin());
    return values[hi] - values[hi - 1];
}

/// Distance from x to the nearest grid entry, in units of the local step.
inline double distance_in_steps(const std::vector<double>& values, double x) {
    const double step = local_step(values, x);
    if (step == 0.0) return 0.0;
    return std::abs(x - snap_to_grid(values, x)) / step;
}

}  // namespace mrfq
