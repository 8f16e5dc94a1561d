#pragma once

// Independent reference implementations used only by tests. These stay
// deliberately naive (dense matrices, direct sums, definition-level formulas)
// so they exercise different code paths than the library.

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <vector>

#include "mrfq/common.hpp"
#include "mrfq/schedule.hpp"
#include "mrfq/sequence.hpp"

namespace oracle {

using mrfq::cplx;

inline Eigen::Matrix3d rotation_y(double angle) {
    Eigen::Matrix3d r;
    r << std::cos(angle), 0.0, std::sin(angle),  //
        0.0, 1.0, 0.0,                           //
        -std::sin(angle), 0.0, std::cos(angle);
    return r;
}

inline Eigen::Matrix3d rotation_z(double angle) {
    Eigen::Matrix3d r;
    r << std::cos(angle), -std::sin(angle), 0.0,  //
        std::sin(angle), std::cos(angle), 0.0,    //
        0.0, 0.0, 1.0;
    return r;
}

/// Dense 3x3 matrix-product Bloch recursion: same conventions as the library
/// (y-axis pulses with 180-degree phase alternation, half-TR propagation,
/// echo at TR/2), but every step is an explicit matrix product.
inline Eigen::VectorXcd simulate_evolution_dense(const mrfq::TissueParams& p,
                                                 const mrfq::Schedule& s) {
    Eigen::Vector3d m(0.0, 0.0, -1.0);  // after ideal inversion
    Eigen::VectorXcd samples(s.n_points);
    for (int i = 0; i < s.n_points; ++i) {
        const double sign = (i % 2 == 0) ? 1.0 : -1.0;
        const double alpha = sign * s.flip_angles_deg[static_cast<std::size_t>(i)] * mrfq::kPi / 180.0;
        m = rotation_y(alpha) * m;

        const double dt = s.repetition_times_ms[static_cast<std::size_t>(i)] / 2.0;
        const double e1 = std::exp(-dt / p.t1_ms);
        const double e2 = std::exp(-dt / p.t2_ms);
        const double phi = 2.0 * mrfq::kPi * p.df_hz * (dt / 1000.0);
        Eigen::Matrix3d relax = Eigen::Vector3d(e2, e2, e1).asDiagonal();
        const Eigen::Matrix3d step = relax * rotation_z(phi);
        const Eigen::Vector3d recover(0.0, 0.0, 1.0 - e1);

        m = step * m + recover;
        samples[i] = cplx(m.x(), m.y());
        m = step * m + recover;
    }
    return samples;
}

/// One-atom-at-a-time Eq.-style similarity: s_k = D_k^H x + x^H D_k.
inline std::vector<double> similarity_naive(const Eigen::MatrixXcd& atoms,
                                            const Eigen::VectorXcd& x) {
    std::vector<double> s(static_cast<std::size_t>(atoms.cols()));
    for (Eigen::Index k = 0; k < atoms.cols(); ++k) {
        cplx inner(0.0, 0.0);
        for (Eigen::Index n = 0; n < atoms.rows(); ++n) inner += std::conj(atoms(n, k)) * x(n);
        s[static_cast<std::size_t>(k)] = (inner + std::conj(inner)).real();
    }
    return s;
}

/// Shannon entropy in bits of a two-class split.
inline double entropy2(double n_a, double n_b) {
    const double n = n_a + n_b;
    if (n == 0.0) return 0.0;
    double h = 0.0;
    for (double c : {n_a, n_b}) {
        if (c > 0.0) {
            const double p = c / n;
            h -= p * std::log2(p);
        }
    }
    return h;
}

/// Information gain of threshold t on feature f, straight from the
/// definition.
inline double info_gain_direct(const std::vector<std::array<double, 8>>& features,
                               const std::vector<int>& labels, int feature, double threshold) {
    double n_left[2] = {0, 0}, n_right[2] = {0, 0};
    for (std::size_t i = 0; i < features.size(); ++i) {
        if (features[i][static_cast<std::size_t>(feature)] <= threshold)
            n_left[labels[i]] += 1.0;
        else
            n_right[labels[i]] += 1.0;
    }
    const double nl = n_left[0] + n_left[1];
    const double nr = n_right[0] + n_right[1];
    const double n = nl + nr;
    const double h_root = entropy2(n_left[0] + n_right[0], n_left[1] + n_right[1]);
    return h_root - (nl / n) * entropy2(n_left[0], n_left[1]) -
           (nr / n) * entropy2(n_right[0], n_right[1]);
}

/// Centered unitary 2-d DFT by direct O(n^2) summation per output sample.
inline mrfq::ComplexImage dft2_centered_direct(const mrfq::ComplexImage& img) {
    const auto rows = img.rows();
    const auto cols = img.cols();
    mrfq::ComplexImage out(rows, cols);
    const double scale = 1.0 / std::sqrt(static_cast<double>(rows * cols));
    for (Eigen::Index kr = 0; kr < rows; ++kr) {
        for (Eigen::Index kc = 0; kc < cols; ++kc) {
            // Centered frequency coordinates.
            const double fr = static_cast<double>(kr) - std::floor(rows / 2.0);
            const double fc = static_cast<double>(kc) - std::floor(cols / 2.0);
            cplx acc(0.0, 0.0);
            for (Eigen::Index r = 0; r < rows; ++r)
                for (Eigen::Index c = 0; c < cols; ++c) {
                    const double phase =
                        -2.0 * mrfq::kPi * (fr * r / static_cast<double>(rows) +
                                            fc * c / static_cast<double>(cols));
                    acc += img(r, c) * cplx(std::cos(phase), std::sin(phase));
                }
            out(kr, kc) = acc * scale;
        }
    }
    return out;
}

}  // namespace oracle
