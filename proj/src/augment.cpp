#include "freqaug/augment.hpp"

#include <cmath>
#include <stdexcept>

#include "freqaug/dct.hpp"
#include "freqaug/rng.hpp"

namespace freqaug {

int sample_threshold(const ThresholdDistribution& dist, uint64_t stream_seed) {
    if (dist.low < 0 || dist.low > dist.high)
        throw std::invalid_argument("threshold distribution requires 0 <= low <= high");
    auto rng = make_rng(stream_seed);
    return std::uniform_int_distribution<int>(dist.low, dist.high)(rng);
}

void zero_coefficients_below(Plane& coeffs, double x) {
    for (double& c : coeffs.v)
        if (std::abs(c) < x) c = 0.0;
}

Image apply_dct_threshold(const Image& image, int x, double clamp_low,
                          double clamp_high) {
    if (x < 0) throw std::invalid_argument("threshold must be >= 0");
    if (!all_finite(image.values))
        throw std::invalid_argument("apply_dct_threshold: non-finite pixels");
    if (x == 0) return image;  // drawn 0: the input is fed forward as-is

    Image out = image;
    for (int c = 0; c < image.channels; ++c) {
        auto plane = out.plane(c);
        fdct2(plane.data(), plane.data(), image.height, image.width);
        for (double& v : plane)
            if (std::abs(v) < x) v = 0.0;
        idct2(plane.data(), plane.data(), image.height, image.width);
    }
    clamp_values(out, clamp_low, clamp_high);
    return out;
}

std::vector<int> augment_batch(std::vector<Image>& batch, const AugmentConfig& cfg,
                               uint64_t epoch, uint64_t index_offset) {
    if (batch.empty()) throw std::invalid_argument("augment_batch: empty batch");
    std::vector<int> thresholds(batch.size());
    for (size_t i = 0; i < batch.size(); ++i) {
        uint64_t stream = derive_seed(cfg.rng_seed, {epoch, index_offset + i});
        thresholds[i] = sample_threshold(cfg.distribution, stream);
        try {
            batch[i] = apply_dct_threshold(batch[i], thresholds[i], cfg.clamp_low,
                                           cfg.clamp_high);
        } catch (const std::exception& e) {
            throw std::runtime_error("augment_batch: image " + std::to_string(i) +
                                     ": " + e.what());
        }
    }
    return thresholds;
}

}  // namespace freqaug
