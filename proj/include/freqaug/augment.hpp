#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "freqaug/image.hpp"

namespace freqaug {

/// Uniform integer distribution the per-image threshold X is drawn from.
/// Defaults to U[0, 50], both ends inclusive.
struct ThresholdDistribution {
    int low = 0;
    int high = 50;
};

struct AugmentConfig {
    ThresholdDistribution distribution;
    double clamp_low = 0.0;
    double clamp_high = 255.0;
    uint64_t rng_seed = 0;
};

struct ThresholdSample {
    int x = 0;
    std::string image_id;
};

/// Draws one threshold X from the distribution. Deterministic under a fixed
/// seed; each image gets its own stream (see augment_batch).
int sample_threshold(const ThresholdDistribution& dist, uint64_t stream_seed);

/// Zeroes every coefficient whose absolute value lies strictly under x.
/// Ties survive. Operates on a coefficient plane in place.
void zero_coefficients_below(Plane& coeffs, double x);

/// The augmentation primitive: per channel, forward DCT on the full-size
/// plane, zero |B| < X, inverse DCT, then clamp to [0, 255]. The same X is
/// applied to every channel of one image. X == 0 leaves the image untouched
/// (nothing can lie strictly under zero, so the transform is skipped).
Image apply_dct_threshold(const Image& image, int x,
                          double clamp_low = 0.0, double clamp_high = 255.0);

/// Applies an independent fresh threshold to each image in the batch, order
/// preserved. Per-image streams are derived from (seed, epoch, index), so
/// results do not depend on traversal order. Returns the drawn thresholds.
std::vector<int> augment_batch(std::vector<Image>& batch, const AugmentConfig& cfg,
                               uint64_t epoch = 0, uint64_t index_offset = 0);

}  // namespace freqaug
