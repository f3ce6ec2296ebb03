#pragma once

#include <cmath>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "freqaug/nn/layers.hpp"

namespace freqaug::nn {

/// VGG-style stack: blocks of 3x3 conv + ReLU with 2x2/stride-2 max pooling
/// after each block, then one hidden fully connected layer with dropout and
/// a linear classifier head.
struct NetworkConfig {
    int input_height = 32;
    int input_width = 32;
    int input_channels = 3;
    std::vector<std::vector<int>> conv_blocks = {{32, 32}, {64, 64}};
    int fc_units = 256;
    int num_classes = 10;

    void validate() const {
        if (input_height < 1 || input_width < 1 || input_channels < 1)
            throw std::invalid_argument("network: bad input geometry");
        if (num_classes < 2) throw std::invalid_argument("network: need >= 2 classes");
        if (fc_units < 1) throw std::invalid_argument("network: fc_units < 1");
        int h = input_height, w = input_width;
        for (const auto& block : conv_blocks) {
            if (block.empty()) throw std::invalid_argument("network: empty conv block");
            for (int f : block)
                if (f < 1) throw std::invalid_argument("network: filter count < 1");
            h /= 2;
            w /= 2;
            if (h < 1 || w < 1)
                throw std::invalid_argument("network: spatial dims collapse to zero");
        }
    }
};

template <typename T>
class Network {
public:
    using Cache = std::vector<LayerContext<T>>;

    explicit Network(const NetworkConfig& cfg) : config_(cfg) {
        cfg.validate();
        int c = cfg.input_channels, h = cfg.input_height, w = cfg.input_width;
        int bi = 0;
        for (const auto& block : cfg.conv_blocks) {
            int ci = 0;
            for (int filters : block) {
                std::string nm = "conv" + std::to_string(bi + 1) + "_" + std::to_string(ci + 1);
                layers_.push_back(std::make_unique<Conv3x3<T>>(c, filters, nm));
                layers_.push_back(std::make_unique<ReLU<T>>(nm + ".relu"));
                c = filters;
                ++ci;
            }
            layers_.push_back(std::make_unique<MaxPool2x2<T>>("pool" + std::to_string(bi + 1)));
            h /= 2;
            w /= 2;
            ++bi;
        }
        layers_.push_back(std::make_unique<Flatten<T>>());
        layers_.push_back(std::make_unique<Dense<T>>(c * h * w, cfg.fc_units, "fc1"));
        layers_.push_back(std::make_unique<ReLU<T>>("fc1.relu"));
        layers_.push_back(std::make_unique<Dropout<T>>("fc1.dropout"));
        layers_.push_back(std::make_unique<Dense<T>>(cfg.fc_units, cfg.num_classes, "fc2"));
    }

    const NetworkConfig& config() const { return config_; }

    /// He-scaled random init, one derived stream per parameterized layer.
    void init_params(uint64_t seed) {
        uint64_t i = 0;
        for (auto& layer : layers_) {
            if (auto* conv = dynamic_cast<Conv3x3<T>*>(layer.get()))
                conv->init_he(derive_seed(seed, {i}));
            else if (auto* dense = dynamic_cast<Dense<T>*>(layer.get()))
                dense->init_he(derive_seed(seed, {i}));
            ++i;
        }
    }

    Tensor<T> forward(const Tensor<T>& batch, Cache& cache, bool training,
                      uint64_t dropout_seed, T dropout_p) {
        if (batch.shape.size() != 4 || batch.dim(1) != config_.input_channels ||
            batch.dim(2) != config_.input_height || batch.dim(3) != config_.input_width)
            throw std::invalid_argument("network: batch shape mismatch");
        cache.resize(layers_.size());
        Tensor<T> x = batch;
        for (size_t i = 0; i < layers_.size(); ++i)
            x = layers_[i]->forward(x, cache[i], training,
                                    derive_seed(dropout_seed, {i}), dropout_p);
        if (!std::all_of(x.data.begin(), x.data.end(),
                         [](T v) { return std::isfinite(static_cast<double>(v)); }))
            throw std::runtime_error("network: non-finite activations");
        return x;
    }

    /// Backpropagates dlogits through the stack; every layer writes its
    /// parameter gradients. Returns the input gradient.
    Tensor<T> backward(const Tensor<T>& dlogits, Cache& cache) {
        Tensor<T> g = dlogits;
        for (size_t i = layers_.size(); i-- > 0;) g = layers_[i]->backward(g, cache[i]);
        return g;
    }

    std::vector<ParamRef<T>> params() {
        std::vector<ParamRef<T>> out;
        for (auto& layer : layers_)
            for (auto& p : layer->params()) out.push_back(p);
        return out;
    }

    std::vector<Layer<T>*> layers() {
        std::vector<Layer<T>*> out;
        for (auto& l : layers_) out.push_back(l.get());
        return out;
    }

private:
    NetworkConfig config_;
    std::vector<std::unique_ptr<Layer<T>>> layers_;
};

/// Numerically stable softmax cross-entropy, mean over the batch.
/// Returns the loss; fills dlogits with the gradient and, when given,
/// predictions with per-sample argmax labels.
template <typename T>
double softmax_cross_entropy(const Tensor<T>& logits, std::span<const int> labels,
                             Tensor<T>* dlogits, std::vector<int>* predictions = nullptr) {
    const int n = logits.dim(0), k = logits.dim(1);
    if (static_cast<int>(labels.size()) != n)
        throw std::invalid_argument("loss: labels/batch size mismatch");
    if (dlogits) *dlogits = Tensor<T>({n, k});
    if (predictions) predictions->assign(n, 0);

    double total = 0.0;
    for (int i = 0; i < n; ++i) {
        if (labels[i] < 0 || labels[i] >= k)
            throw std::out_of_range("loss: label out of range");
        const T* row = logits.ptr() + static_cast<size_t>(i) * k;
        int arg = 0;
        double mx = row[0];
        for (int j = 1; j < k; ++j)
            if (row[j] > mx) {
                mx = row[j];
                arg = j;
            }
        if (predictions) (*predictions)[i] = arg;
        double z = 0.0;
        for (int j = 0; j < k; ++j) z += std::exp(static_cast<double>(row[j]) - mx);
        total += -(static_cast<double>(row[labels[i]]) - mx - std::log(z));
        if (dlogits) {
            for (int j = 0; j < k; ++j) {
                double p = std::exp(static_cast<double>(row[j]) - mx) / z;
                double g = (p - (j == labels[i] ? 1.0 : 0.0)) / n;
                dlogits->data[static_cast<size_t>(i) * k + j] = static_cast<T>(g);
            }
        }
    }
    return total / n;
}

/// One SGD-with-momentum update: v' = momentum*v - lr*g, p' = p + v'.
template <typename T>
void sgd_step(std::span<T> param, std::span<const T> grad, std::span<T> velocity,
              T lr, T momentum) {
    if (param.size() != grad.size() || param.size() != velocity.size())
        throw std::invalid_argument("sgd_step: size mismatch");
    for (size_t i = 0; i < param.size(); ++i) {
        velocity[i] = momentum * velocity[i] - lr * grad[i];
        param[i] += velocity[i];
        if (!std::isfinite(static_cast<double>(param[i])))
            throw std::runtime_error("sgd_step: non-finite parameter update");
    }
}

}  // namespace freqaug::nn
