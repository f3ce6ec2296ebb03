#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace freqaug {

/// H×W×C raster of real-valued pixel intensities, nominally in [0, 255].
/// Storage is channel-planar: values[c*H*W + y*W + x], so each channel is a
/// contiguous row-major plane.
struct Image {
    int height = 0;
    int width = 0;
    int channels = 0;
    std::vector<double> values;

    Image() = default;
    Image(int h, int w, int c, double fill = 0.0)
        : height(h), width(w), channels(c),
          values(static_cast<size_t>(h) * w * c, fill) {}

    size_t plane_size() const { return static_cast<size_t>(height) * width; }
    size_t size() const { return values.size(); }

    double& at(int c, int y, int x) {
        return values[(static_cast<size_t>(c) * height + y) * width + x];
    }
    double at(int c, int y, int x) const {
        return values[(static_cast<size_t>(c) * height + y) * width + x];
    }

    std::span<double> plane(int c) {
        return {values.data() + c * plane_size(), plane_size()};
    }
    std::span<const double> plane(int c) const {
        return {values.data() + c * plane_size(), plane_size()};
    }
};

/// Single-channel row-major matrix. Used both for pixel planes and for DCT
/// coefficient planes (same dimensions by construction).
struct Plane {
    int rows = 0;
    int cols = 0;
    std::vector<double> v;

    Plane() = default;
    Plane(int r, int c, double fill = 0.0)
        : rows(r), cols(c), v(static_cast<size_t>(r) * c, fill) {}

    double& at(int r, int c) { return v[static_cast<size_t>(r) * cols + c]; }
    double at(int r, int c) const { return v[static_cast<size_t>(r) * cols + c]; }
    size_t size() const { return v.size(); }
};

/// Clamps every value to [lo, hi] in place.
void clamp_values(Image& img, double lo = 0.0, double hi = 255.0);

bool all_finite(std::span<const double> values);

/// Largest absolute difference between two equally-shaped images.
double max_abs_diff(const Image& a, const Image& b);

/// Bilinear resize (used for image-directory ingestion with --resize).
Image resize_bilinear(const Image& src, int out_h, int out_w);

// --- PPM/PGM I/O --------------------------------------------------------
//
// Readers accept binary (P5/P6) and ASCII (P2/P3) variants with maxval 255.
// Writers emit binary; values are rounded to the nearest integer and
// clamped to [0, 255].

Image read_pnm(const std::string& path);
void write_pnm(const Image& img, const std::string& path);

/// Round-and-clamp to the 8-bit grid without leaving double storage.
Image quantize_u8(const Image& img);

}  // namespace freqaug
