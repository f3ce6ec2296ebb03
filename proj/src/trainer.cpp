#include "freqaug/trainer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "freqaug/errors.hpp"
#include "freqaug/nn/batch.hpp"
#include "freqaug/rng.hpp"

namespace freqaug {

namespace {

// fixed purposes for derived seed streams
constexpr uint64_t kInitStream = 1;
constexpr uint64_t kShuffleStream = 2;
constexpr uint64_t kAugmentStream = 3;
constexpr uint64_t kDropoutStream = 4;

}  // namespace

void TrainConfig::validate() const {
    if (learning_rate <= 0) throw std::invalid_argument("learning rate must be > 0");
    if (momentum < 0 || momentum >= 1) throw std::invalid_argument("momentum must be in [0, 1)");
    if (batch_size < 1) throw std::invalid_argument("batch size must be >= 1");
    if (epochs < 1) throw std::invalid_argument("epochs must be >= 1");
    if (fixed_dropout_p < 0 || fixed_dropout_p >= 1)
        throw std::invalid_argument("dropout p must be in [0, 1)");
    if (threshold.low < 0 || threshold.low > threshold.high)
        throw std::invalid_argument("threshold range requires 0 <= low <= high");
}

TrainResult train(const Dataset& train_set, const nn::NetworkConfig& net_cfg,
                  const TrainConfig& cfg) {
    cfg.validate();
    train_set.validate();
    if (train_set.num_classes() > net_cfg.num_classes)
        throw DataError("dataset has more classes than the network head");
    if (train_set.height != net_cfg.input_height || train_set.width != net_cfg.input_width ||
        train_set.channels != net_cfg.input_channels)
        throw DataError("dataset geometry does not match the network input");

    TrainResult result{nn::Network<float>(net_cfg), {}, DropoutState(cfg.epochs)};
    result.net.init_params(derive_seed(cfg.seed, {kInitStream}));

    auto params = result.net.params();
    std::vector<std::vector<float>> velocity;
    for (auto& p : params) velocity.emplace_back(p.value->data.size(), 0.0f);

    AugmentConfig aug_cfg;
    aug_cfg.distribution = cfg.threshold;
    aug_cfg.rng_seed = derive_seed(cfg.seed, {kAugmentStream});

    const size_t n = train_set.size();
    std::vector<size_t> order(n);
    std::iota(order.begin(), order.end(), size_t{0});

    for (int epoch = 1; epoch <= cfg.epochs; ++epoch) {
        const double p = cfg.adaptive_dropout ? current_p(result.dropout_state)
                                              : cfg.fixed_dropout_p;

        auto shuffle_rng = make_rng(derive_seed(cfg.seed, {kShuffleStream, (uint64_t)epoch}));
        std::shuffle(order.begin(), order.end(), shuffle_rng);

        EpochStats stats;
        double loss_sum = 0.0, acc_sum = 0.0;
        size_t seen = 0;

        for (size_t start = 0, batch_idx = 0; start < n; start += cfg.batch_size, ++batch_idx) {
            size_t end = std::min(start + cfg.batch_size, n);
            std::vector<Image> images;
            std::vector<int> labels;
            images.reserve(end - start);
            for (size_t i = start; i < end; ++i) {
                images.push_back(train_set.image(order[i]));
                labels.push_back(train_set.labels[order[i]]);
            }
            if (cfg.augment) augment_batch(images, aug_cfg, (uint64_t)epoch, start);

            auto batch = nn::batch_to_tensor<float>(images);
            nn::Network<float>::Cache cache;
            uint64_t drop_seed =
                derive_seed(cfg.seed, {kDropoutStream, (uint64_t)epoch, batch_idx});
            nn::Tensor<float> logits;
            try {
                logits = result.net.forward(batch, cache, true, drop_seed,
                                            static_cast<float>(p));
            } catch (const std::runtime_error& e) {
                throw NumericalError("epoch " + std::to_string(epoch) + " batch " +
                                     std::to_string(batch_idx) + ": " + e.what());
            }

            nn::Tensor<float> dlogits;
            std::vector<int> predicted;
            double loss = nn::softmax_cross_entropy(logits, labels, &dlogits, &predicted);
            if (!std::isfinite(loss))
                throw NumericalError("loss diverged at epoch " + std::to_string(epoch) +
                                     ", batch " + std::to_string(batch_idx));

            int correct = 0;
            for (size_t i = 0; i < labels.size(); ++i)
                if (predicted[i] == labels[i]) ++correct;
            double batch_acc = static_cast<double>(correct) / labels.size();

            result.net.backward(dlogits, cache);
            for (size_t i = 0; i < params.size(); ++i) {
                try {
                    nn::sgd_step<float>(std::span<float>(params[i].value->data),
                                        std::span<const float>(params[i].grad->data),
                                        std::span<float>(velocity[i]),
                                        static_cast<float>(cfg.learning_rate),
                                        static_cast<float>(cfg.momentum));
                } catch (const std::runtime_error& e) {
                    throw NumericalError(std::string("parameter update diverged: ") +
                                         e.what());
                }
            }

            stats.minibatch_accuracies.push_back(batch_acc);
            loss_sum += loss * labels.size();
            acc_sum += batch_acc * labels.size();
            seen += labels.size();
        }

        result.dropout_state = observe_epoch(result.dropout_state, stats);
        result.log.push_back({epoch, loss_sum / seen, acc_sum / seen, p,
                              result.dropout_state.triggered});
    }
    return result;
}

}  // namespace freqaug
