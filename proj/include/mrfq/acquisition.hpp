#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "mrfq/fft.hpp"
#include "mrfq/parallel.hpp"
#include "mrfq/phantom.hpp"
#include "mrfq/rng.hpp"
#include "mrfq/schedule.hpp"
#include "mrfq/sequence.hpp"

namespace mrfq {

enum class FrameDomain { Image, KSpace };

struct FrameSequence {
    std::vector<ComplexImage> frames;
    FrameDomain domain = FrameDomain::Image;

    int n_frames() const { return static_cast<int>(frames.size()); }
};

struct SamplingMask {
    std::vector<BoolImage> masks;  // true = k-space sample retained
    double target_retained_fraction = 1.0;

    int n_frames() const { return static_cast<int>(masks.size()); }
};

struct MaskOptions {
    double density_power = 3.0;  // acceptance probability ~ (1 - r/r_max)^p
    int center_block = 8;        // fully sampled center size (pixels)
    bool per_frame = true;       // false: same mask reused for every frame
    double tolerance = 0.02;     // realized-fraction tolerance per frame
};

/// Render the per-time-point complex image sequence for a phantom. Each
/// pixel's time series is simulate_evolution at its parameters; evolutions
/// are memoized per distinct (t1, t2, df) triple, which the piecewise
/// constant phantom makes a large win. Background pixels stay zero.
inline FrameSequence render_frames(const ParameterMapSet& maps, const Schedule& schedule,
                                   unsigned n_threads = 0) {
    const int h = maps.height;
    const int w = maps.width;
    const int n = schedule.n_points;

    // Collect distinct parameter triples first so workers share the table.
    std::map<std::tuple<double, double, double>, int> triple_ids;
    Eigen::ArrayXXi pixel_triple = Eigen::ArrayXXi::Constant(h, w, -1);
    for (int r = 0; r < h; ++r)
        for (int c = 0; c < w; ++c) {
            if (maps.background(r, c)) continue;
            const auto key = std::make_tuple(maps.t1_map(r, c), maps.t2_map(r, c), maps.df_map(r, c));
            auto [it, inserted] = triple_ids.emplace(key, static_cast<int>(triple_ids.size()));
            pixel_triple(r, c) = it->second;
        }

    std::vector<std::tuple<double, double, double>> triples(triple_ids.size());
    for (const auto& [key, id] : triple_ids) triples[static_cast<std::size_t>(id)] = key;

    Eigen::MatrixXcd evolutions(n, static_cast<Eigen::Index>(triples.size()));
    parallel_for(
        triples.size(),
        [&](std::size_t i) {
            const auto& [t1, t2, df] = triples[i];
            evolutions.col(static_cast<Eigen::Index>(i)) =
                simulate_evolution(TissueParams{t1, t2, df}, schedule).samples;
        },
        n_threads);

    FrameSequence seq;
    seq.domain = FrameDomain::Image;
    seq.frames.assign(static_cast<std::size_t>(n), ComplexImage::Zero(h, w));
    parallel_for(
        static_cast<std::size_t>(n),
        [&](std::size_t i) {
            ComplexImage& frame = seq.frames[i];
            for (int r = 0; r < h; ++r)
                for (int c = 0; c < w; ++c) {
                    const int id = pixel_triple(r, c);
                    if (id >= 0) frame(r, c) = evolutions(static_cast<Eigen::Index>(i), id);
                }
        },
        n_threads);
    return seq;
}

/// Variable-density random retention mask. Acceptance probability follows
/// (1 - r/r_max)^density_power, scaled so the expected retained fraction hits
/// the target; the central center_block^2 block is always retained; the
/// realized per-frame fraction is corrected into +-tolerance of the target by
/// randomly topping up (density-weighted) or dropping retained points.
inline SamplingMask make_mask(int width, int height, int n_frames, double retained_fraction,
                              std::uint64_t seed, const MaskOptions& opts = {}) {
    if (!(retained_fraction > 0.0) || retained_fraction > 1.0)
        throw std::invalid_argument("make_mask: retained_fraction must be in (0, 1]");
    if (width < opts.center_block || height < opts.center_block)
        throw std::invalid_argument("make_mask: image smaller than the forced center block");
    const double total = static_cast<double>(width) * height;
    const double center_count = static_cast<double>(opts.center_block) * opts.center_block;
    if (retained_fraction * total < center_count)
        throw std::invalid_argument(
            "make_mask: retained fraction smaller than the forced center block");

    const int r0 = height / 2 - opts.center_block / 2;
    const int c0 = width / 2 - opts.center_block / 2;
    const auto in_center = [&](int r, int c) {
        return r >= r0 && r < r0 + opts.center_block && c >= c0 && c < c0 + opts.center_block;
    };

    // Density weight per pixel from the centered k-space radius.
    RealImage weight(height, width);
    const double cy = (height - 1) / 2.0;
    const double cx = (width - 1) / 2.0;
    const double r_max = std::sqrt(cy * cy + cx * cx);
    for (int r = 0; r < height; ++r)
        for (int c = 0; c < width; ++c) {
            const double rad = std::sqrt((r - cy) * (r - cy) + (c - cx) * (c - cx));
            weight(r, c) = std::pow(std::max(0.0, 1.0 - rad / r_max), opts.density_power);
        }

    // Scale c so that sum(min(1, c * w)) + forced center = target count.
    const double target_count = retained_fraction * total;
    double lo = 0.0, hi = 1.0;
    const auto expected = [&](double scale) {
        double e = 0.0;
        for (int r = 0; r < height; ++r)
            for (int c = 0; c < width; ++c)
                e += in_center(r, c) ? 1.0 : std::min(1.0, scale * weight(r, c));
        return e;
    };
    while (expected(hi) < target_count && hi < 1e12) hi *= 2.0;
    for (int iter = 0; iter < 60; ++iter) {
        const double mid = 0.5 * (lo + hi);
        (expected(mid) < target_count ? lo : hi) = mid;
    }
    const double scale = 0.5 * (lo + hi);

    Rng rng(seed);
    SamplingMask out;
    out.target_retained_fraction = retained_fraction;
    const int n_realized = opts.per_frame ? n_frames : 1;
    out.masks.reserve(static_cast<std::size_t>(n_frames));
    const long target_n = std::lround(target_count);

    for (int f = 0; f < n_realized; ++f) {
        BoolImage mask(height, width);
        for (int r = 0; r < height; ++r)
            for (int c = 0; c < width; ++c)
                mask(r, c) =
                    in_center(r, c) || rng.uniform01() < std::min(1.0, scale * weight(r, c));

        long count = 0;
        for (int r = 0; r < height; ++r)
            for (int c = 0; c < width; ++c) count += mask(r, c) ? 1 : 0;

        const long tol = std::lround(opts.tolerance * target_count);
        if (std::labs(count - target_n) > tol) {
            while (count < target_n) {  // top up, density-weighted rejection sampling
                const int r = static_cast<int>(rng.below(static_cast<std::uint64_t>(height)));
                const int c = static_cast<int>(rng.below(static_cast<std::uint64_t>(width)));
                if (mask(r, c)) continue;
                // Floor keeps zero-weight edge pixels reachable (needed when
                // the target approaches full sampling).
                if (rng.uniform01() >= std::max(weight(r, c), 0.02)) continue;
                mask(r, c) = true;
                ++count;
            }
            while (count > target_n) {
                const int r = static_cast<int>(rng.below(static_cast<std::uint64_t>(height)));
                const int c = static_cast<int>(rng.below(static_cast<std::uint64_t>(width)));
                if (!mask(r, c) || in_center(r, c)) continue;
                mask(r, c) = false;
                --count;
            }
        }
        out.masks.push_back(std::move(mask));
    }
    if (!opts.per_frame) {
        const BoolImage shared = out.masks.front();
        out.masks.assign(static_cast<std::size_t>(n_frames), shared);
    }
    return out;
}

inline double realized_fraction(const BoolImage& mask) {
    long count = 0;
    for (Eigen::Index r = 0; r < mask.rows(); ++r)
        for (Eigen::Index c = 0; c < mask.cols(); ++c) count += mask(r, c) ? 1 : 0;
    return static_cast<double>(count) / static_cast<double>(mask.size());
}

/// Forward model: centered unitary FFT per frame, then zero the non-retained
/// samples.
inline FrameSequence undersample(const FrameSequence& images, const SamplingMask& mask,
                                 unsigned n_threads = 0) {
    if (images.domain != FrameDomain::Image)
        throw std::invalid_argument("undersample: input must be image-domain frames");
    if (images.n_frames() != mask.n_frames())
        throw std::invalid_argument("undersample: frame count mismatch");
    FrameSequence out;
    out.domain = FrameDomain::KSpace;
    out.frames.resize(images.frames.size());
    parallel_for(
        images.frames.size(),
        [&](std::size_t i) {
            const ComplexImage& img = images.frames[i];
            const BoolImage& m = mask.masks[i];
            if (img.rows() != m.rows() || img.cols() != m.cols())
                throw std::invalid_argument("undersample: mask/frame dimension mismatch");
            ComplexImage k = fft2_centered(img);
            for (Eigen::Index r = 0; r < k.rows(); ++r)
                for (Eigen::Index c = 0; c < k.cols(); ++c)
                    if (!m(r, c)) k(r, c) = cplx(0.0, 0.0);
            out.frames[i] = std::move(k);
        },
        n_threads);
    return out;
}

/// Optional measurement noise: complex Gaussian added to retained k-space
/// samples. Off by default in the pipeline.
inline void add_kspace_noise(FrameSequence& kspace, const SamplingMask& mask, double sigma,
                             std::uint64_t seed) {
    if (sigma <= 0.0) return;
    Rng rng(seed);
    for (std::size_t i = 0; i < kspace.frames.size(); ++i) {
        ComplexImage& k = kspace.frames[i];
        const BoolImage& m = mask.masks[i];
        for (Eigen::Index r = 0; r < k.rows(); ++r)
            for (Eigen::Index c = 0; c < k.cols(); ++c)
                if (m(r, c)) k(r, c) += cplx(rng.gaussian(0.0, sigma), rng.gaussian(0.0, sigma));
    }
}

/// Zero-filled reconstruction: inverse unitary transform of the (zero-filled)
/// k-space data. This is the MRF baseline input to the matcher.
inline FrameSequence zero_fill_recon(const FrameSequence& kspace, unsigned n_threads = 0) {
    if (kspace.domain != FrameDomain::KSpace)
        throw std::invalid_argument("zero_fill_recon: input must be k-space frames");
    FrameSequence out;
    out.domain = FrameDomain::Image;
    out.frames.resize(kspace.frames.size());
    parallel_for(
        kspace.frames.size(),
        [&](std::size_t i) { out.frames[i] = ifft2_centered(kspace.frames[i]); }, n_threads);
    return out;
}

}  // namespace mrfq
