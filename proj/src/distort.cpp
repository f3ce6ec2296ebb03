#include "freqaug/distort.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "freqaug/rng.hpp"

namespace freqaug {

namespace {

// Reflect (symmetric) boundary: ... c b a | a b c d | d c b ...
// Folds any integer into [0, n), also when the kernel is wider than the image.
int reflect_index(int i, int n) {
    if (n == 1) return 0;
    int period = 2 * n;
    int m = i % period;
    if (m < 0) m += period;
    return m < n ? m : period - 1 - m;
}

// Rescales taps so their left-to-right sum is exactly 1.0, which makes
// blurring a constant image return it unchanged. After the division the
// last nonzero tap is replaced by the exact complement of the prefix sum:
// 1 - prefix is exact for prefix in [0.5, 2] and prefix + (1 - prefix)
// rounds to exactly 1.0.
void normalize_exact(std::vector<double>& taps) {
    double s = 0.0;
    for (double t : taps) s += t;
    if (s <= 0.0) throw std::logic_error("kernel with non-positive mass");
    for (double& t : taps) t /= s;

    size_t last = taps.size();
    for (size_t i = 0; i < taps.size(); ++i)
        if (taps[i] != 0.0) last = i;
    double prefix = 0.0;
    for (size_t i = 0; i < last; ++i) prefix += taps[i];
    taps[last] = 1.0 - prefix;
}

}  // namespace

std::string to_string(DistortionKind kind) {
    switch (kind) {
        case DistortionKind::GaussianNoise: return "gaussian-noise";
        case DistortionKind::GaussianBlur: return "gaussian-blur";
        case DistortionKind::SaltPepper: return "salt-pepper";
        case DistortionKind::MotionBlur: return "motion-blur";
        case DistortionKind::Speckle: return "speckle";
    }
    return "unknown";
}

DistortionKind distortion_from_string(const std::string& name) {
    for (DistortionKind k : kAllDistortions)
        if (to_string(k) == name) return k;
    throw std::invalid_argument("unknown distortion kind: " + name);
}

DatasetProfile DatasetProfile::small() { return DatasetProfile{}; }

DatasetProfile DatasetProfile::large() {
    DatasetProfile p;
    p.name = "large";
    p.blur_sigma_hi = 10.0;
    p.motion_angle_hi = 45.0;
    p.motion_kernel_len = 19;
    return p;
}

DatasetProfile DatasetProfile::from_name(const std::string& name) {
    if (name == "small") return small();
    if (name == "large") return large();
    throw std::invalid_argument("unknown profile: " + name);
}

std::pair<double, double> DatasetProfile::range(DistortionKind kind) const {
    switch (kind) {
        case DistortionKind::GaussianNoise: return {noise_var_lo, noise_var_hi};
        case DistortionKind::GaussianBlur: return {blur_sigma_lo, blur_sigma_hi};
        case DistortionKind::SaltPepper: return {salt_pepper_lo, salt_pepper_hi};
        case DistortionKind::MotionBlur: return {motion_angle_lo, motion_angle_hi};
        case DistortionKind::Speckle: return {speckle_var_lo, speckle_var_hi};
    }
    throw std::invalid_argument("unknown distortion kind");
}

std::vector<double> gaussian_kernel(double sigma) {
    if (sigma < 0) throw std::invalid_argument("gaussian_kernel: sigma < 0");
    if (sigma == 0.0) return {1.0};
    int len = static_cast<int>(std::ceil(6.0 * sigma + 1.0));
    if (len % 2 == 0) ++len;
    int half = len / 2;
    std::vector<double> taps(len);
    for (int i = -half; i <= half; ++i)
        taps[i + half] = std::exp(-0.5 * (i * i) / (sigma * sigma));
    normalize_exact(taps);
    return taps;
}

Plane motion_kernel(double angle_deg, int len) {
    if (len < 1) throw std::invalid_argument("motion_kernel: len < 1");
    Plane k(len, len);
    if (len == 1) {
        k.at(0, 0) = 1.0;
        return k;
    }
    double theta = angle_deg * M_PI / 180.0;
    double half = (len - 1) / 2.0;
    // Bilinear splat of evenly spaced samples along the line segment.
    // Positive angles rotate counterclockwise in image coordinates.
    int samples = len * 32;
    for (int s = 0; s < samples; ++s) {
        double t = -half + (len - 1) * static_cast<double>(s) / (samples - 1);
        double x = half + t * std::cos(theta);
        double y = half - t * std::sin(theta);
        int x0 = static_cast<int>(std::floor(x));
        int y0 = static_cast<int>(std::floor(y));
        double wx = x - x0, wy = y - y0;
        for (int dy = 0; dy <= 1; ++dy)
            for (int dx = 0; dx <= 1; ++dx) {
                int xi = x0 + dx, yi = y0 + dy;
                if (xi < 0 || xi >= len || yi < 0 || yi >= len) continue;
                double w = (dx ? wx : 1 - wx) * (dy ? wy : 1 - wy);
                k.at(yi, xi) += w;
            }
    }
    // drop bilinear dust from trig rounding (e.g. cos(pi/2) != 0)
    double peak = *std::max_element(k.v.begin(), k.v.end());
    for (double& v : k.v)
        if (v < peak * 1e-9) v = 0.0;
    normalize_exact(k.v);
    return k;
}

Image convolve_separable(const Image& img, const std::vector<double>& kernel) {
    if (kernel.size() % 2 == 0) throw std::invalid_argument("kernel length must be odd");
    int half = static_cast<int>(kernel.size()) / 2;
    Image tmp(img.height, img.width, img.channels);
    Image out(img.height, img.width, img.channels);
    for (int c = 0; c < img.channels; ++c) {
        // rows
        for (int y = 0; y < img.height; ++y)
            for (int x = 0; x < img.width; ++x) {
                double sum = 0.0;
                for (int k = 0; k < static_cast<int>(kernel.size()); ++k)
                    sum += kernel[k] * img.at(c, y, reflect_index(x + k - half, img.width));
                tmp.at(c, y, x) = sum;
            }
        // columns
        for (int y = 0; y < img.height; ++y)
            for (int x = 0; x < img.width; ++x) {
                double sum = 0.0;
                for (int k = 0; k < static_cast<int>(kernel.size()); ++k)
                    sum += kernel[k] * tmp.at(c, reflect_index(y + k - half, img.height), x);
                out.at(c, y, x) = sum;
            }
    }
    return out;
}

Image convolve_2d(const Image& img, const Plane& kernel) {
    if (kernel.rows % 2 == 0 || kernel.cols % 2 == 0)
        throw std::invalid_argument("kernel dimensions must be odd");
    int hr = kernel.rows / 2, hc = kernel.cols / 2;
    Image out(img.height, img.width, img.channels);
    for (int c = 0; c < img.channels; ++c)
        for (int y = 0; y < img.height; ++y)
            for (int x = 0; x < img.width; ++x) {
                double sum = 0.0;
                for (int ky = 0; ky < kernel.rows; ++ky) {
                    int yy = reflect_index(y + ky - hr, img.height);
                    for (int kx = 0; kx < kernel.cols; ++kx) {
                        int xx = reflect_index(x + kx - hc, img.width);
                        sum += kernel.at(ky, kx) * img.at(c, yy, xx);
                    }
                }
                out.at(c, y, x) = sum;
            }
    return out;
}

std::vector<double> gaussian_field(size_t n, double variance, uint64_t stream_seed) {
    std::vector<double> field(n, 0.0);
    if (variance == 0.0) return field;
    auto rng = make_rng(stream_seed);
    std::normal_distribution<double> normal(0.0, std::sqrt(variance));
    for (double& f : field) f = normal(rng);
    return field;
}

Image distort(const Image& image, const DistortionSpec& spec,
              const DatasetProfile& profile, uint64_t stream_seed) {
    auto [lo, hi] = profile.range(spec.kind);
    if (spec.level < 0 || spec.level < lo || spec.level > hi)
        throw std::out_of_range("distortion level " + std::to_string(spec.level) +
                                " outside profile range [" + std::to_string(lo) + ", " +
                                std::to_string(hi) + "]");
    if (!all_finite(image.values))
        throw std::invalid_argument("distort: non-finite pixels");

    Image out;
    switch (spec.kind) {
        case DistortionKind::GaussianNoise: {
            // variance is defined on [0,1]-scaled intensities
            auto field = gaussian_field(image.size(), spec.level, stream_seed);
            out = image;
            for (size_t i = 0; i < out.values.size(); ++i)
                out.values[i] += 255.0 * field[i];
            break;
        }
        case DistortionKind::Speckle: {
            auto field = gaussian_field(image.size(), spec.level, stream_seed);
            out = image;
            for (size_t i = 0; i < out.values.size(); ++i)
                out.values[i] *= 1.0 + field[i];
            break;
        }
        case DistortionKind::SaltPepper: {
            out = image;
            if (spec.level > 0.0) {
                auto rng = make_rng(stream_seed);
                std::uniform_real_distribution<double> unit(0.0, 1.0);
                std::bernoulli_distribution coin(0.5);
                // impulse per pixel location: all channels go together
                for (int y = 0; y < out.height; ++y)
                    for (int x = 0; x < out.width; ++x)
                        if (unit(rng) < spec.level) {
                            double v = coin(rng) ? 255.0 : 0.0;
                            for (int c = 0; c < out.channels; ++c) out.at(c, y, x) = v;
                        }
            }
            break;
        }
        case DistortionKind::GaussianBlur: {
            if (spec.level == 0.0) return image;
            out = convolve_separable(image, gaussian_kernel(spec.level));
            break;
        }
        case DistortionKind::MotionBlur: {
            out = convolve_2d(image, motion_kernel(spec.level, profile.motion_kernel_len));
            break;
        }
    }
    clamp_values(out);
    return out;
}

std::vector<DistortionSpec> level_grid(DistortionKind kind, const DatasetProfile& profile) {
    auto [lo, hi] = profile.range(kind);
    std::vector<DistortionSpec> grid;
    grid.reserve(5);
    for (int i = 1; i <= 5; ++i) {
        double level = lo == 0.0 ? hi * i / 5.0 : lo + (hi - lo) * (i - 1) / 4.0;
        grid.push_back({kind, level});
    }
    return grid;
}

}  // namespace freqaug
