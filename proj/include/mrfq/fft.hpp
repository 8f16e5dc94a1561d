#pragma once

#include <cmath>
#include <vector>

#include <unsupported/Eigen/FFT>

#include "mrfq/common.hpp"

namespace mrfq {

/// Centered unitary 2-d DFT pair. Forward places DC at
/// (floor(rows/2), floor(cols/2)); the pair is an exact inverse and preserves
/// energy (Parseval) up to roundoff.

namespace detail {

// out[k] = in[(k - floor(n/2)) mod n]: frequency bin q lands at q + floor(n/2).
inline Eigen::Index shifted_source(Eigen::Index k, Eigen::Index n) {
    const Eigen::Index half = n / 2;
    Eigen::Index src = k - half;
    if (src < 0) src += n;
    return src;
}

}  // namespace detail

inline ComplexImage fft2_centered(const ComplexImage& img) {
    const auto rows = img.rows();
    const auto cols = img.cols();
    Eigen::FFT<double> fft;
    Eigen::MatrixXcd work(rows, cols);

    std::vector<cplx> line_in(static_cast<std::size_t>(cols));
    std::vector<cplx> line_out(static_cast<std::size_t>(cols));
    for (Eigen::Index r = 0; r < rows; ++r) {
        for (Eigen::Index c = 0; c < cols; ++c) line_in[static_cast<std::size_t>(c)] = img(r, c);
        fft.fwd(line_out, line_in);
        for (Eigen::Index c = 0; c < cols; ++c) work(r, c) = line_out[static_cast<std::size_t>(c)];
    }
    std::vector<cplx> col_in(static_cast<std::size_t>(rows));
    std::vector<cplx> col_out(static_cast<std::size_t>(rows));
    for (Eigen::Index c = 0; c < cols; ++c) {
        for (Eigen::Index r = 0; r < rows; ++r) col_in[static_cast<std::size_t>(r)] = work(r, c);
        fft.fwd(col_out, col_in);
        for (Eigen::Index r = 0; r < rows; ++r) work(r, c) = col_out[static_cast<std::size_t>(r)];
    }

    const double scale = 1.0 / std::sqrt(static_cast<double>(rows) * static_cast<double>(cols));
    ComplexImage out(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r)
        for (Eigen::Index c = 0; c < cols; ++c)
            out(r, c) =
                work(detail::shifted_source(r, rows), detail::shifted_source(c, cols)) * scale;
    return out;
}

inline ComplexImage ifft2_centered(const ComplexImage& kspace) {
    const auto rows = kspace.rows();
    const auto cols = kspace.cols();
    // Undo the centering shift first.
    Eigen::MatrixXcd work(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r)
        for (Eigen::Index c = 0; c < cols; ++c)
            work(detail::shifted_source(r, rows), detail::shifted_source(c, cols)) = kspace(r, c);

    Eigen::FFT<double> fft;
    std::vector<cplx> col_in(static_cast<std::size_t>(rows));
    std::vector<cplx> col_out(static_cast<std::size_t>(rows));
    for (Eigen::Index c = 0; c < cols; ++c) {
        for (Eigen::Index r = 0; r < rows; ++r) col_in[static_cast<std::size_t>(r)] = work(r, c);
        fft.inv(col_out, col_in);
        for (Eigen::Index r = 0; r < rows; ++r) work(r, c) = col_out[static_cast<std::size_t>(r)];
    }
    std::vector<cplx> line_in(static_cast<std::size_t>(cols));
    std::vector<cplx> line_out(static_cast<std::size_t>(cols));
    ComplexImage out(rows, cols);
    const double scale = std::sqrt(static_cast<double>(rows) * static_cast<double>(cols));
    for (Eigen::Index r = 0; r < rows; ++r) {
        for (Eigen::Index c = 0; c < cols; ++c) line_in[static_cast<std::size_t>(c)] = work(r, c);
        fft.inv(line_out, line_in);
        for (Eigen::Index c = 0; c < cols; ++c)
            out(r, c) = line_out[static_cast<std::size_t>(c)] * scale;
    }
    return out;
}

}  // namespace mrfq
