#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "mrfq/grid.hpp"
#include "mrfq/parallel.hpp"
#include "mrfq/schedule.hpp"
#include "mrfq/sequence.hpp"

namespace mrfq {

/// Simulated fingerprint dictionary. Atoms are stored as the columns of an
/// N x K column-major matrix, so each atom occupies a contiguous block and
/// the whole store is one contiguous K x N row-major region.
///
/// Atom ordering is lexicographic over (t1, t2, df) with df fastest-varying.
/// Grid points with t2 > t1 are physically invalid and not stored; the index
/// tables map retained atom index <-> grid coordinates.
struct FingerprintDictionary {
    Eigen::MatrixXcd atoms;  // N x K, unit-norm columns
    ParameterGrid grid;
    std::vector<std::array<int, 3>> coords;  // retained k -> (i_t1, i_t2, i_df)
    std::vector<int> flat_to_atom;           // full lexicographic index -> atom index or -1
    std::string schedule_id;
    std::uint64_t schedule_seed = 0;

    int size() const { return static_cast<int>(atoms.cols()); }
    int n_points() const { return static_cast<int>(atoms.rows()); }
};

inline std::string schedule_digest(const Schedule& s) {
    return array_digest_hex(to_array(s));
}

inline FingerprintDictionary build_dictionary(const ParameterGrid& grid, const Schedule& schedule,
                                              unsigned n_threads = 0,
                                              std::vector<std::string>* warnings = nullptr) {
    const int n1 = static_cast<int>(grid.t1_values.size());
    const int n2 = static_cast<int>(grid.t2_values.size());
    const int n3 = static_cast<int>(grid.df_values.size());
    if (n1 == 0 || n2 == 0 || n3 == 0) throw std::invalid_argument("build_dictionary: empty grid");

    FingerprintDictionary dict;
    dict.grid = grid;
    dict.schedule_seed = schedule.seed;
    dict.schedule_id = schedule_digest(schedule);
    dict.flat_to_atom.assign(static_cast<std::size_t>(n1) * n2 * n3, -1);

    for (int i1 = 0; i1 < n1; ++i1)
        for (int i2 = 0; i2 < n2; ++i2) {
            if (grid.t2_values[static_cast<std::size_t>(i2)] >
                grid.t1_values[static_cast<std::size_t>(i1)])
                continue;
            for (int i3 = 0; i3 < n3; ++i3) {
                const std::size_t flat =
                    (static_cast<std::size_t>(i1) * n2 + i2) * static_cast<std::size_t>(n3) + i3;
                dict.flat_to_atom[flat] = static_cast<int>(dict.coords.size());
                dict.coords.push_back({i1, i2, i3});
            }
        }

    const auto k_total = static_cast<Eigen::Index>(dict.coords.size());
    dict.atoms.resize(schedule.n_points, k_total);

    std::vector<std::uint8_t> zero_flag(static_cast<std::size_t>(k_total), 0);
    parallel_for(
        static_cast<std::size_t>(k_total),
        [&](std::size_t k) {
            const auto& c = dict.coords[k];
            TissueParams p{grid.t1_values[static_cast<std::size_t>(c[0])],
                           grid.t2_values[static_cast<std::size_t>(c[1])],
                           grid.df_values[static_cast<std::size_t>(c[2])]};
            const SignalEvolution evo = simulate_evolution(p, schedule);
            const double norm = evo.samples.norm();
            if (norm == 0.0) {
                zero_flag[k] = 1;
                dict.atoms.col(static_cast<Eigen::Index>(k)).setZero();
            } else {
                dict.atoms.col(static_cast<Eigen::Index>(k)) = evo.samples / norm;
            }
        },
        n_threads);

    // Grid points yielding an all-zero evolution are dropped; can't happen
    // with any nonzero-pulse schedule but the index tables must stay honest.
    if (std::find(zero_flag.begin(), zero_flag.end(), 1) != zero_flag.end()) {
        std::vector<std::array<int, 3>> kept_coords;
        std::vector<Eigen::Index> kept_cols;
        for (std::size_t k = 0; k < zero_flag.size(); ++k) {
            if (zero_flag[k]) {
                if (warnings) {
                    const auto& c = dict.coords[k];
                    warnings->push_back("excluded all-zero atom at grid coords (" +
                                        std::to_string(c[0]) + "," + std::to_string(c[1]) + "," +
                                        std::to_string(c[2]) + ")");
                }
                continue;
            }
            kept_coords.push_back(dict.coords[k]);
            kept_cols.push_back(static_cast<Eigen::Index>(k));
        }
        Eigen::MatrixXcd kept(schedule.n_points, static_cast<Eigen::Index>(kept_cols.size()));
        for (std::size_t j = 0; j < kept_cols.size(); ++j) kept.col(static_cast<Eigen::Index>(j)) = dict.atoms.col(kept_cols[j]);
        dict.atoms.swap(kept);
        dict.coords = std::move(kept_coords);
        std::fill(dict.flat_to_atom.begin(), dict.flat_to_atom.end(), -1);
        for (std::size_t k = 0; k < dict.coords.size(); ++k) {
            const auto& c = dict.coords[k];
            const std::size_t flat =
                (static_cast<std::size_t>(c[0]) * n2 + c[1]) * static_cast<std::size_t>(n3) + c[2];
            dict.flat_to_atom[flat] = static_cast<int>(k);
        }
    }
    return dict;
}

/// Gamma mapping: atom index -> tissue parameters.
inline TissueParams index_to_params(const FingerprintDictionary& dict, int k) {
    if (k < 0 || k >= dict.size())
        throw std::out_of_range("index_to_params: atom index " + std::to_string(k) +
                                " outside [0, " + std::to_string(dict.size()) + ")");
    const auto& c = dict.coords[static_cast<std::size_t>(k)];
    return TissueParams{dict.grid.t1_values[static_cast<std::size_t>(c[0])],
                        dict.grid.t2_values[static_cast<std::size_t>(c[1])],
                        dict.grid.df_values[static_cast<std::size_t>(c[2])]};
}

namespace detail {

inline int exact_axis_index(const std::vector<double>& values, double x, const char* name) {
    const std::size_t i = nearest_index(values, x);
    const double tol = 1e-9 * std::max(1.0, std::abs(x));
    if (std::abs(values[i] - x) > tol)
        throw std::invalid_argument(std::string("params_to_index: ") + name +
                                    " value is not a grid point");
    return static_cast<int>(i);
}

}  // namespace detail

/// Inverse Gamma for exact grid points (retained ones only).
inline int params_to_index(const FingerprintDictionary& dict, const TissueParams& p) {
    const int i1 = detail::exact_axis_index(dict.grid.t1_values, p.t1_ms, "t1");
    const int i2 = detail::exact_axis_index(dict.grid.t2_values, p.t2_ms, "t2");
    const int i3 = detail::exact_axis_index(dict.grid.df_values, p.df_hz, "df");
    const std::size_t n2 = dict.grid.t2_values.size();
    const std::size_t n3 = dict.grid.df_values.size();
    const std::size_t flat = (static_cast<std::size_t>(i1) * n2 + i2) * n3 + i3;
    const int atom = dict.flat_to_atom[flat];
    if (atom < 0)
        throw std::invalid_argument("params_to_index: grid point excluded (t2 > t1)");
    return atom;
}

}  // namespace mrfq
