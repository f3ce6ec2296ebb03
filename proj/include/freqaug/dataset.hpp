#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "freqaug/image.hpp"

namespace freqaug {

/// In-memory labeled image set. Pixels are stored as 8-bit values in the
/// same channel-planar order as Image; labels are dense 0..K-1.
struct Dataset {
    int height = 0;
    int width = 0;
    int channels = 0;
    std::vector<uint8_t> pixels;  // size() * channels * height * width
    std::vector<int> labels;
    std::vector<std::string> ids;
    std::vector<std::string> class_names;

    size_t size() const { return labels.size(); }
    size_t image_bytes() const {
        return static_cast<size_t>(channels) * height * width;
    }
    int num_classes() const { return static_cast<int>(class_names.size()); }

    Image image(size_t i) const;
    void append(const Image& img, int label, std::string id);
    void validate() const;
};

// --- loaders --------------------------------------------------------------

/// CIFAR-style binary: records of 1 label byte + C*H*W pixel bytes, planar
/// channels. Geometry defaults to 32x32x3 (3073-byte records). `take`
/// limits the record count; 0 reads the whole file.
Dataset load_cifar_binary(const std::string& path, size_t take = 0, int height = 32,
                          int width = 32, int channels = 3,
                          std::vector<std::string> class_names = {});

/// Manifest-driven CIFAR subset: JSON with geometry, class names, and a
/// per-split list of {file, take} entries (paths relative to the manifest).
Dataset load_cifar_manifest(const std::string& manifest_path, const std::string& split);

/// IDX image/label file pair (big-endian magic headers, u8 payloads).
Dataset load_idx(const std::string& images_path, const std::string& labels_path);

/// Directory with one subdirectory per class. Decoders are looked up by
/// file extension; PPM/PGM come registered. Unknown extensions are skipped
/// unless no decodable file exists at all.
Dataset load_image_directory(const std::string& dir,
                             std::optional<std::pair<int, int>> resize = {});

using ImageDecoder = std::function<Image(const std::string& path)>;

/// Hook for additional formats (extension without the dot).
void register_image_decoder(const std::string& extension, ImageDecoder decoder);

/// Dispatch by the handle's format name: "cifar-binary" (file or manifest),
/// "idx" ("images:labels" pair), or "image-directory".
struct DatasetHandle {
    std::string format;
    std::string path;
    std::optional<std::pair<int, int>> resize;
};

Dataset load_dataset(const DatasetHandle& handle);

}  // namespace freqaug
