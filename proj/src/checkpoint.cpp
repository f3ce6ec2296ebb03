#include "freqaug/checkpoint.hpp"

#include <cstring>
#include <fstream>

#include "freqaug/errors.hpp"

using nlohmann::json;

namespace freqaug {

namespace nn {

void to_json(json& j, const NetworkConfig& cfg) {
    j = {{"input_height", cfg.input_height},
         {"input_width", cfg.input_width},
         {"input_channels", cfg.input_channels},
         {"conv_blocks", cfg.conv_blocks},
         {"fc_units", cfg.fc_units},
         {"num_classes", cfg.num_classes}};
}

void from_json(const json& j, NetworkConfig& cfg) {
    cfg.input_height = j.at("input_height").get<int>();
    cfg.input_width = j.at("input_width").get<int>();
    cfg.input_channels = j.at("input_channels").get<int>();
    cfg.conv_blocks = j.at("conv_blocks").get<std::vector<std::vector<int>>>();
    cfg.fc_units = j.at("fc_units").get<int>();
    cfg.num_classes = j.at("num_classes").get<int>();
}

}  // namespace nn

namespace {

constexpr char kMagic[8] = {'F', 'Q', 'A', 'U', 'G', 'C', 'K', 'P'};
constexpr uint32_t kVersion = 1;

template <typename T>
void write_raw(std::ostream& out, const T& v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T read_raw(std::istream& in, const std::string& path) {
    T v{};
    in.read(reinterpret_cast<char*>(&v), sizeof(T));
    if (!in) throw DataError("truncated checkpoint: " + path);
    return v;
}

}  // namespace

void save_checkpoint(const std::string& path, nn::Network<float>& net,
                     const json& manifest) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write checkpoint: " + path);

    json header = {{"net_config", net.config()}, {"manifest", manifest}};
    std::string header_str = header.dump();

    out.write(kMagic, sizeof(kMagic));
    write_raw(out, kVersion);
    write_raw(out, static_cast<uint64_t>(header_str.size()));
    out.write(header_str.data(), static_cast<std::streamsize>(header_str.size()));

    auto params = net.params();
    write_raw(out, static_cast<uint32_t>(params.size()));
    for (auto& p : params) {
        write_raw(out, static_cast<uint32_t>(p.name.size()));
        out.write(p.name.data(), static_cast<std::streamsize>(p.name.size()));
        write_raw(out, static_cast<uint8_t>(0));  // float32
        write_raw(out, static_cast<uint32_t>(p.value->shape.size()));
        for (int d : p.value->shape) write_raw(out, static_cast<uint64_t>(d));
        out.write(reinterpret_cast<const char*>(p.value->data.data()),
                  static_cast<std::streamsize>(p.value->data.size() * sizeof(float)));
    }
    if (!out) throw DataError("failed writing checkpoint: " + path);
}

nn::Network<float> load_checkpoint(const std::string& path, json* manifest_out) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open checkpoint: " + path);

    char magic[8];
    in.read(magic, sizeof(magic));
    if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
        throw DataError("not a checkpoint file: " + path);
    uint32_t version = read_raw<uint32_t>(in, path);
    if (version != kVersion)
        throw DataError("unsupported checkpoint version " + std::to_string(version));

    uint64_t header_len = read_raw<uint64_t>(in, path);
    std::string header_str(header_len, '\0');
    in.read(header_str.data(), static_cast<std::streamsize>(header_len));
    if (!in) throw DataError("truncated checkpoint header: " + path);

    json header;
    try {
        header = json::parse(header_str);
    } catch (const json::exception& e) {
        throw DataError("malformed checkpoint header: " + std::string(e.what()));
    }
    nn::NetworkConfig cfg = header.at("net_config").get<nn::NetworkConfig>();
    if (manifest_out) *manifest_out = header.value("manifest", json());

    nn::Network<float> net(cfg);
    auto params = net.params();
    uint32_t count = read_raw<uint32_t>(in, path);
    if (count != params.size())
        throw DataError("checkpoint tensor count does not match architecture");

    for (auto& p : params) {
        uint32_t name_len = read_raw<uint32_t>(in, path);
        std::string name(name_len, '\0');
        in.read(name.data(), name_len);
        if (!in || name != p.name)
            throw DataError("checkpoint tensor order mismatch at '" + name + "'");
        uint8_t dtype = read_raw<uint8_t>(in, path);
        if (dtype != 0) throw DataError("unsupported tensor dtype in " + path);
        uint32_t rank = read_raw<uint32_t>(in, path);
        std::vector<int> dims(rank);
        for (auto& d : dims) d = static_cast<int>(read_raw<uint64_t>(in, path));
        if (dims != p.value->shape)
            throw DataError("checkpoint tensor shape mismatch at '" + name + "'");
        in.read(reinterpret_cast<char*>(p.value->data.data()),
                static_cast<std::streamsize>(p.value->data.size() * sizeof(float)));
        if (!in) throw DataError("truncated tensor data: " + path);
    }
    return net;
}

}  // namespace freqaug
