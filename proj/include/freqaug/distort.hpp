#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "freqaug/image.hpp"

namespace freqaug {

enum class DistortionKind { GaussianNoise, GaussianBlur, SaltPepper, MotionBlur, Speckle };

constexpr std::array<DistortionKind, 5> kAllDistortions = {
    DistortionKind::GaussianNoise, DistortionKind::GaussianBlur,
    DistortionKind::SaltPepper, DistortionKind::MotionBlur, DistortionKind::Speckle};

std::string to_string(DistortionKind kind);
DistortionKind distortion_from_string(const std::string& name);

/// One distortion family plus its level. Level units per kind:
///   GaussianNoise / Speckle  variance on [0,1]-scaled intensities
///   GaussianBlur             standard deviation in pixels
///   SaltPepper               per-pixel corruption probability
///   MotionBlur               blur angle in degrees
struct DistortionSpec {
    DistortionKind kind = DistortionKind::GaussianNoise;
    double level = 0.0;
};

/// Dataset-scale parameter ranges. The small profile covers 32x32-class
/// inputs, the large profile covers full-size photos; they differ in the
/// blur ranges and in the motion-blur kernel length, which is a free
/// parameter here (the level only sets the angle).
struct DatasetProfile {
    std::string name = "small";
    double noise_var_lo = 0.1, noise_var_hi = 0.5;
    double blur_sigma_lo = 0.0, blur_sigma_hi = 5.0;
    double salt_pepper_lo = 0.0, salt_pepper_hi = 0.5;
    double motion_angle_lo = 0.0, motion_angle_hi = 22.5;
    double speckle_var_lo = 0.1, speckle_var_hi = 0.5;
    int motion_kernel_len = 9;

    static DatasetProfile small();
    static DatasetProfile large();
    static DatasetProfile from_name(const std::string& name);

    std::pair<double, double> range(DistortionKind kind) const;
};

/// Applies one distortion. Pure in its (image, spec, seed) inputs; output
/// is clamped to [0, 255]. Throws if the level is negative or outside the
/// profile's configured range.
Image distort(const Image& image, const DistortionSpec& spec,
              const DatasetProfile& profile, uint64_t stream_seed);

/// Five evenly spaced evaluation levels spanning the configured range. For
/// ranges starting at 0 the identity endpoint is excluded: {r/5, ..., r}.
std::vector<DistortionSpec> level_grid(DistortionKind kind, const DatasetProfile& profile);

// Exposed pieces, unit-testable on their own -----------------------------

/// Truncated, renormalized Gaussian taps; smallest odd length >= 6*sigma+1.
/// The taps sum to exactly 1.0. sigma == 0 gives the delta kernel {1}.
std::vector<double> gaussian_kernel(double sigma);

/// Length-len line kernel at `angle_deg` degrees, bilinearly rasterized and
/// normalized to sum exactly 1.0.
Plane motion_kernel(double angle_deg, int len);

/// Separable 2D convolution with reflect padding, per channel.
Image convolve_separable(const Image& img, const std::vector<double>& kernel);

/// Dense 2D convolution with reflect padding, per channel.
Image convolve_2d(const Image& img, const Plane& kernel);

/// The zero-mean Gaussian field (sigma^2 = variance) sampled for additive
/// noise, on the [0,1] intensity scale. Exposed so its statistics can be
/// checked before any clamping.
std::vector<double> gaussian_field(size_t n, double variance, uint64_t stream_seed);

}  // namespace freqaug
