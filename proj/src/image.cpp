#include "freqaug/image.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace freqaug {

void clamp_values(Image& img, double lo, double hi) {
    for (double& v : img.values) v = std::clamp(v, lo, hi);
}

bool all_finite(std::span<const double> values) {
    return std::all_of(values.begin(), values.end(),
                       [](double v) { return std::isfinite(v); });
}

double max_abs_diff(const Image& a, const Image& b) {
    if (a.height != b.height || a.width != b.width || a.channels != b.channels)
        throw std::invalid_argument("max_abs_diff: shape mismatch");
    double m = 0.0;
    for (size_t i = 0; i < a.values.size(); ++i)
        m = std::max(m, std::abs(a.values[i] - b.values[i]));
    return m;
}

Image resize_bilinear(const Image& src, int out_h, int out_w) {
    if (out_h < 1 || out_w < 1) throw std::invalid_argument("resize: empty target");
    Image dst(out_h, out_w, src.channels);
    const double sy = static_cast<double>(src.height) / out_h;
    const double sx = static_cast<double>(src.width) / out_w;
    for (int c = 0; c < src.channels; ++c) {
        for (int y = 0; y < out_h; ++y) {
            double fy = std::max(0.0, (y + 0.5) * sy - 0.5);
            int y0 = std::min(static_cast<int>(fy), src.height - 1);
            int y1 = std::min(y0 + 1, src.height - 1);
            double wy = fy - y0;
            for (int x = 0; x < out_w; ++x) {
                double fx = std::max(0.0, (x + 0.5) * sx - 0.5);
                int x0 = std::min(static_cast<int>(fx), src.width - 1);
                int x1 = std::min(x0 + 1, src.width - 1);
                double wx = fx - x0;
                double top = src.at(c, y0, x0) * (1 - wx) + src.at(c, y0, x1) * wx;
                double bot = src.at(c, y1, x0) * (1 - wx) + src.at(c, y1, x1) * wx;
                dst.at(c, y, x) = top * (1 - wy) + bot * wy;
            }
        }
    }
    return dst;
}

namespace {

// Skips whitespace and '#' comment lines between PNM header tokens.
std::string next_token(std::istream& in) {
    std::string tok;
    while (in) {
        int ch = in.peek();
        if (ch == '#') {
            std::string line;
            std::getline(in, line);
        } else if (std::isspace(ch)) {
            in.get();
        } else {
            break;
        }
    }
    in >> tok;
    return tok;
}

}  // namespace

Image read_pnm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open image: " + path);

    std::string magic = next_token(in);
    bool binary = magic == "P5" || magic == "P6";
    bool ascii = magic == "P2" || magic == "P3";
    if (!binary && !ascii)
        throw std::runtime_error("unsupported image format '" + magic + "': " + path);
    int channels = (magic == "P6" || magic == "P3") ? 3 : 1;

    int w = std::stoi(next_token(in));
    int h = std::stoi(next_token(in));
    int maxval = std::stoi(next_token(in));
    if (w < 1 || h < 1) throw std::runtime_error("bad image dimensions: " + path);
    if (maxval != 255)
        throw std::runtime_error("only maxval 255 supported: " + path);

    Image img(h, w, channels);
    size_t n = static_cast<size_t>(h) * w * channels;
    if (binary) {
        in.get();  // single whitespace after maxval
        std::vector<unsigned char> buf(n);
        in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(n));
        if (!in) throw std::runtime_error("truncated image: " + path);
        // interleaved on disk -> planar in memory
        size_t i = 0;
        for (int y = 0; y < h; ++y)
            for (int x = 0; x < w; ++x)
                for (int c = 0; c < channels; ++c) img.at(c, y, x) = buf[i++];
    } else {
        for (int y = 0; y < h; ++y)
            for (int x = 0; x < w; ++x)
                for (int c = 0; c < channels; ++c) {
                    int v;
                    if (!(in >> v)) throw std::runtime_error("truncated image: " + path);
                    img.at(c, y, x) = v;
                }
    }
    return img;
}

void write_pnm(const Image& img, const std::string& path) {
    if (img.channels != 1 && img.channels != 3)
        throw std::invalid_argument("write_pnm: only 1 or 3 channels");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write image: " + path);
    out << (img.channels == 3 ? "P6" : "P5") << "\n"
        << img.width << " " << img.height << "\n255\n";
    std::vector<unsigned char> buf;
    buf.reserve(img.size());
    for (int y = 0; y < img.height; ++y)
        for (int x = 0; x < img.width; ++x)
            for (int c = 0; c < img.channels; ++c) {
                double v = std::round(img.at(c, y, x));
                buf.push_back(static_cast<unsigned char>(std::clamp(v, 0.0, 255.0)));
            }
    out.write(reinterpret_cast<const char*>(buf.data()),
              static_cast<std::streamsize>(buf.size()));
}

Image quantize_u8(const Image& img) {
    Image out = img;
    for (double& v : out.values) v = std::clamp(std::round(v), 0.0, 255.0);
    return out;
}

}  // namespace freqaug
