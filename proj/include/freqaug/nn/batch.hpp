#pragma once

#include <vector>

#include "freqaug/image.hpp"
#include "freqaug/nn/tensor.hpp"

namespace freqaug::nn {

/// Stacks images into an (N, C, H, W) tensor, scaling intensities from
/// [0, 255] to [0, 1]. All images must share geometry.
template <typename T>
Tensor<T> batch_to_tensor(const std::vector<Image>& batch) {
    if (batch.empty()) throw std::invalid_argument("batch_to_tensor: empty batch");
    const Image& first = batch.front();
    Tensor<T> out({static_cast<int>(batch.size()), first.channels, first.height,
                   first.width});
    size_t per = first.size();
    for (size_t i = 0; i < batch.size(); ++i) {
        const Image& img = batch[i];
        if (img.height != first.height || img.width != first.width ||
            img.channels != first.channels)
            throw std::invalid_argument("batch_to_tensor: geometry mismatch");
        for (size_t j = 0; j < per; ++j)
            out.data[i * per + j] = static_cast<T>(img.values[j] / 255.0);
    }
    return out;
}

}  // namespace freqaug::nn
