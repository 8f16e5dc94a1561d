#pragma once

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <vector>

#include "mrfq/array_io.hpp"
#include "mrfq/common.hpp"
#include "mrfq/rng.hpp"

namespace mrfq {

/// Acquisition schedule: per-time-point flip angle (degrees) and repetition
/// time (ms). Immutable after construction.
struct Schedule {
    int n_points = 0;
    std::vector<double> flip_angles_deg;
    std::vector<double> repetition_times_ms;
    std::uint64_t seed = 0;
};

/// Noise-free flip-angle curve. Three segments over [0, n):
///   t in [0, n/2]:               10 + sin(2 pi t / n) * 50
///   t in (n/2, 3n/5]:            0   (pause, no excitation)
///   t in (3n/5, n):              5 + sin(2 pi t / (0.4 n)) * 25
/// At n = 500 the boundaries are exactly [0,250], [251,300], [301,499].
inline double schedule_base_fa(int t, int n_points) {
    const double n = static_cast<double>(n_points);
    const int half = n_points / 2;
    const int pause_end = static_cast<int>(std::floor(0.6 * n));
    if (t <= half) return 10.0 + std::sin(2.0 * kPi * t / n) * 50.0;
    if (t <= pause_end) return 0.0;
    return 5.0 + std::sin(2.0 * kPi * t / (0.4 * n)) * 25.0;
}

inline bool schedule_is_pause_index(int t, int n_points) {
    const int half = n_points / 2;
    const int pause_end = static_cast<int>(std::floor(0.6 * n_points));
    return t > half && t <= pause_end;
}

/// Pseudorandomized schedule. Gaussian flip-angle noise (sigma = 5 deg) is
/// redrawn per non-pause time point; negative draws clamp to 0 so the RF
/// phase alternation convention stays intact. TR is uniform in [10.5, 14] ms.
/// Draw order: all flip-angle noise first (one gaussian per non-pause index,
/// ascending t), then all TR values (ascending t).
inline Schedule generate_schedule(std::uint64_t seed, int n_points) {
    if (n_points < 1) throw std::invalid_argument("generate_schedule: n_points must be >= 1");
    Schedule s;
    s.n_points = n_points;
    s.seed = seed;
    s.flip_angles_deg.resize(static_cast<std::size_t>(n_points));
    s.repetition_times_ms.resize(static_cast<std::size_t>(n_points));
    Rng rng(seed);
    for (int t = 0; t < n_points; ++t) {
        if (schedule_is_pause_index(t, n_points)) {
            s.flip_angles_deg[static_cast<std::size_t>(t)] = 0.0;
        } else {
            const double fa = schedule_base_fa(t, n_points) + rng.gaussian(0.0, 5.0);
            s.flip_angles_deg[static_cast<std::size_t>(t)] = fa < 0.0 ? 0.0 : fa;
        }
    }
    for (int t = 0; t < n_points; ++t)
        s.repetition_times_ms[static_cast<std::size_t>(t)] = rng.uniform(10.5, 14.0);
    return s;
}

inline ArrayData to_array(const Schedule& s) {
    ArrayData a;
    a.type = ElementType::Real64;
    a.dims = {2, static_cast<std::uint64_t>(s.n_points)};
    a.reals = s.flip_angles_deg;
    a.reals.insert(a.reals.end(), s.repetition_times_ms.begin(), s.repetition_times_ms.end());
    return a;
}

inline Schedule schedule_from(const ArrayData& a, std::uint64_t seed = 0) {
    if (a.type != ElementType::Real64 || a.dims.size() != 2 || a.dims[0] != 2)
        throw format_error("expected 2 x N real64 schedule array");
    Schedule s;
    s.n_points = static_cast<int>(a.dims[1]);
    s.seed = seed;
    s.flip_angles_deg.assign(a.reals.begin(), a.reals.begin() + s.n_points);
    s.repetition_times_ms.assign(a.reals.begin() + s.n_points, a.reals.end());
    return s;
}

inline void write_schedule_csv(const Schedule& s, const std::filesystem::path& path) {
    std::ofstream f(path, std::ios::trunc);
    if (!f) throw format_error("cannot open for writing: " + path.string());
    f << "index,FA_deg,TR_ms\n";
    for (int t = 0; t < s.n_points; ++t) {
        f.precision(17);
        f << t << ',' << s.flip_angles_deg[static_cast<std::size_t>(t)] << ','
          << s.repetition_times_ms[static_cast<std::size_t>(t)] << '\n';
    }
}

}  // namespace mrfq
