#pragma once

#include <string>

#include <json.hpp>

#include "freqaug/nn/network.hpp"

namespace freqaug {

namespace nn {
void to_json(nlohmann::json& j, const NetworkConfig& cfg);
void from_json(const nlohmann::json& j, NetworkConfig& cfg);
}  // namespace nn

// Checkpoint file layout (little-endian):
//   8 bytes   magic "FQAUGCKP"
//   u32       format version (1)
//   u64       length of the UTF-8 JSON header
//   ...       header: {"net_config": ..., "manifest": ...}
//   u32       tensor count
//   per tensor: u32 name length, name bytes, u8 dtype (0 = float32),
//               u32 rank, u64 dims..., raw data

void save_checkpoint(const std::string& path, nn::Network<float>& net,
                     const nlohmann::json& manifest);

/// Restores the network (architecture from the header, weights from the
/// tensor records). The manifest is returned through `manifest_out` when
/// non-null.
nn::Network<float> load_checkpoint(const std::string& path,
                                   nlohmann::json* manifest_out = nullptr);

}  // namespace freqaug
