#include "freqaug/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>

#include <json.hpp>

#include "freqaug/errors.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace freqaug {

Image Dataset::image(size_t i) const {
    Image img(height, width, channels);
    const uint8_t* src = pixels.data() + i * image_bytes();
    for (size_t j = 0; j < img.values.size(); ++j) img.values[j] = src[j];
    return img;
}

void Dataset::append(const Image& img, int label, std::string id) {
    if (size() == 0 && pixels.empty()) {
        height = img.height;
        width = img.width;
        channels = img.channels;
    }
    if (img.height != height || img.width != width || img.channels != channels)
        throw DataError("dataset: image geometry mismatch for " + id);
    for (double v : img.values)
        pixels.push_back(static_cast<uint8_t>(std::clamp(std::round(v), 0.0, 255.0)));
    labels.push_back(label);
    ids.push_back(std::move(id));
}

void Dataset::validate() const {
    if (labels.empty()) throw DataError("dataset: empty");
    if (pixels.size() != size() * image_bytes())
        throw DataError("dataset: pixel buffer size mismatch");
    int k = num_classes();
    for (int l : labels)
        if (l < 0 || l >= k) throw DataError("dataset: label outside 0.." + std::to_string(k - 1));
}

Dataset load_cifar_binary(const std::string& path, size_t take, int height, int width,
                          int channels, std::vector<std::string> class_names) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open dataset file: " + path);

    Dataset ds;
    ds.height = height;
    ds.width = width;
    ds.channels = channels;
    const size_t record = 1 + ds.image_bytes();

    in.seekg(0, std::ios::end);
    size_t bytes = static_cast<size_t>(in.tellg());
    in.seekg(0);
    if (bytes == 0 || bytes % record != 0)
        throw DataError("file size is not a whole number of records: " + path);
    size_t count = bytes / record;
    if (take > 0) count = std::min(count, take);

    std::vector<uint8_t> buf(record);
    int max_label = 0;
    for (size_t i = 0; i < count; ++i) {
        in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(record));
        if (!in) throw DataError("truncated record in " + path);
        ds.labels.push_back(buf[0]);
        max_label = std::max(max_label, static_cast<int>(buf[0]));
        ds.pixels.insert(ds.pixels.end(), buf.begin() + 1, buf.end());
        ds.ids.push_back(fs::path(path).filename().string() + "#" + std::to_string(i));
    }
    if (!class_names.empty())
        ds.class_names = std::move(class_names);
    else
        for (int c = 0; c <= max_label; ++c) ds.class_names.push_back(std::to_string(c));
    ds.validate();
    return ds;
}

Dataset load_cifar_manifest(const std::string& manifest_path, const std::string& split) {
    std::ifstream in(manifest_path);
    if (!in) throw DataError("cannot open manifest: " + manifest_path);
    json m;
    try {
        in >> m;
    } catch (const json::exception& e) {
        throw DataError("malformed manifest " + manifest_path + ": " + e.what());
    }
    if (!m.contains(split)) throw DataError("manifest has no '" + split + "' split");

    int h = m.value("height", 32), w = m.value("width", 32), c = m.value("channels", 3);
    std::vector<std::string> classes = m.value("classes", std::vector<std::string>{});
    fs::path base = fs::path(manifest_path).parent_path();

    Dataset ds;
    bool first = true;
    for (const auto& entry : m.at(split)) {
        std::string file = (base / entry.at("file").get<std::string>()).string();
        size_t take = entry.value("take", 0);
        Dataset part = load_cifar_binary(file, take, h, w, c, classes);
        if (first) {
            ds = std::move(part);
            first = false;
        } else {
            ds.pixels.insert(ds.pixels.end(), part.pixels.begin(), part.pixels.end());
            ds.labels.insert(ds.labels.end(), part.labels.begin(), part.labels.end());
            ds.ids.insert(ds.ids.end(), part.ids.begin(), part.ids.end());
        }
    }
    if (first) throw DataError("manifest split '" + split + "' lists no files");
    ds.validate();
    return ds;
}

namespace {

uint32_t read_be32(std::istream& in, const std::string& path) {
    uint8_t b[4];
    in.read(reinterpret_cast<char*>(b), 4);
    if (!in) throw DataError("truncated IDX header: " + path);
    return (uint32_t(b[0]) << 24) | (uint32_t(b[1]) << 16) | (uint32_t(b[2]) << 8) | b[3];
}

}  // namespace

Dataset load_idx(const std::string& images_path, const std::string& labels_path) {
    std::ifstream imgs(images_path, std::ios::binary);
    if (!imgs) throw DataError("cannot open IDX images: " + images_path);
    std::ifstream lbls(labels_path, std::ios::binary);
    if (!lbls) throw DataError("cannot open IDX labels: " + labels_path);

    uint32_t magic = read_be32(imgs, images_path);
    if ((magic & 0xffffff00) != 0x00000800)
        throw DataError("not a u8 IDX file: " + images_path);
    int ndim = magic & 0xff;
    if (ndim != 3 && ndim != 4) throw DataError("unsupported IDX rank: " + images_path);
    uint32_t n = read_be32(imgs, images_path);
    uint32_t h = read_be32(imgs, images_path);
    uint32_t w = read_be32(imgs, images_path);
    uint32_t c = ndim == 4 ? read_be32(imgs, images_path) : 1;
    if (n == 0 || h == 0 || w == 0 || c == 0) throw DataError("empty IDX: " + images_path);

    uint32_t lmagic = read_be32(lbls, labels_path);
    if (lmagic != 0x00000801) throw DataError("not an IDX label file: " + labels_path);
    uint32_t ln = read_be32(lbls, labels_path);
    if (ln != n) throw DataError("IDX image/label counts differ");

    Dataset ds;
    ds.height = static_cast<int>(h);
    ds.width = static_cast<int>(w);
    ds.channels = static_cast<int>(c);

    std::vector<uint8_t> img(ds.image_bytes());
    int max_label = 0;
    for (uint32_t i = 0; i < n; ++i) {
        imgs.read(reinterpret_cast<char*>(img.data()), static_cast<std::streamsize>(img.size()));
        uint8_t label;
        lbls.read(reinterpret_cast<char*>(&label), 1);
        if (!imgs || !lbls) throw DataError("truncated IDX payload");
        if (c == 1) {
            ds.pixels.insert(ds.pixels.end(), img.begin(), img.end());
        } else {
            // interleaved (h, w, c) on disk -> planar in memory
            for (uint32_t ch = 0; ch < c; ++ch)
                for (uint32_t p = 0; p < h * w; ++p)
                    ds.pixels.push_back(img[p * c + ch]);
        }
        ds.labels.push_back(label);
        max_label = std::max(max_label, static_cast<int>(label));
        ds.ids.push_back("idx#" + std::to_string(i));
    }
    for (int k = 0; k <= max_label; ++k) ds.class_names.push_back(std::to_string(k));
    ds.validate();
    return ds;
}

namespace {

std::map<std::string, ImageDecoder>& decoder_registry() {
    static std::map<std::string, ImageDecoder> registry = {
        {"ppm", read_pnm}, {"pgm", read_pnm}, {"pnm", read_pnm}};
    return registry;
}

}  // namespace

void register_image_decoder(const std::string& extension, ImageDecoder decoder) {
    decoder_registry()[extension] = std::move(decoder);
}

Dataset load_image_directory(const std::string& dir,
                             std::optional<std::pair<int, int>> resize) {
    if (!fs::is_directory(dir)) throw DataError("not a directory: " + dir);

    std::vector<std::string> classes;
    for (const auto& entry : fs::directory_iterator(dir))
        if (entry.is_directory()) classes.push_back(entry.path().filename().string());
    std::sort(classes.begin(), classes.end());
    if (classes.empty()) throw DataError("no class subdirectories in " + dir);

    Dataset ds;
    ds.class_names = classes;
    for (size_t label = 0; label < classes.size(); ++label) {
        std::vector<fs::path> files;
        for (const auto& entry : fs::directory_iterator(fs::path(dir) / classes[label]))
            if (entry.is_regular_file()) files.push_back(entry.path());
        std::sort(files.begin(), files.end());
        for (const auto& file : files) {
            std::string ext = file.extension().string();
            if (!ext.empty()) ext = ext.substr(1);
            auto it = decoder_registry().find(ext);
            if (it == decoder_registry().end()) continue;
            Image img;
            try {
                img = it->second(file.string());
            } catch (const std::exception& e) {
                throw DataError(std::string("decode failed: ") + e.what());
            }
            if (resize) img = resize_bilinear(img, resize->first, resize->second);
            ds.append(img, static_cast<int>(label),
                      classes[label] + "/" + file.filename().string());
        }
    }
    if (ds.size() == 0) throw DataError("no decodable images under " + dir);
    ds.validate();
    return ds;
}

Dataset load_dataset(const DatasetHandle& handle) {
    if (handle.format == "cifar-binary") {
        if (fs::path(handle.path).extension() == ".json")
            throw DataError("cifar-binary expects a .bin file; use format cifar-manifest");
        return load_cifar_binary(handle.path);
    }
    if (handle.format == "cifar-manifest") {
        throw DataError("cifar-manifest requires a split; use load_cifar_manifest");
    }
    if (handle.format == "idx") {
        auto colon = handle.path.find(':');
        if (colon == std::string::npos)
            throw DataError("idx format expects 'images_path:labels_path'");
        return load_idx(handle.path.substr(0, colon), handle.path.substr(colon + 1));
    }
    if (handle.format == "image-directory")
        return load_image_directory(handle.path, handle.resize);
    throw DataError("unknown dataset format: " + handle.format);
}

}  // namespace freqaug
