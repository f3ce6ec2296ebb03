#pragma once

#include <cstdint>
#include <vector>

#include "freqaug/augment.hpp"
#include "freqaug/dataset.hpp"
#include "freqaug/nn/network.hpp"
#include "freqaug/schedule.hpp"

namespace freqaug {

struct TrainConfig {
    double learning_rate = 0.01;
    double momentum = 0.9;
    int batch_size = 128;
    int epochs = 40;
    uint64_t seed = 0;

    bool augment = false;                  // DCT-threshold augmentation on minibatches
    ThresholdDistribution threshold{};     // threshold range when augmenting

    bool adaptive_dropout = true;          // scheduler-driven P; otherwise fixed
    double fixed_dropout_p = 0.5;

    void validate() const;
};

struct EpochRecord {
    int epoch = 0;               // 1-based
    double loss = 0.0;           // mean over minibatches, sample-weighted
    double train_accuracy = 0.0; // likewise
    double dropout_p = 0.0;      // P applied during this epoch
    bool triggered = false;      // scheduler state after this epoch
};

struct TrainResult {
    nn::Network<float> net;
    std::vector<EpochRecord> log;
    DropoutState dropout_state;
};

/// Runs the full training loop: shuffled minibatches, optional DCT-threshold
/// augmentation before each forward pass, SGD with momentum, and the
/// adaptive dropout schedule fed by per-minibatch accuracies. Deterministic
/// under a fixed seed and a fixed GEMM thread count. Throws NumericalError
/// if the loss stops being finite.
TrainResult train(const Dataset& train_set, const nn::NetworkConfig& net_cfg,
                  const TrainConfig& cfg);

}  // namespace freqaug
