#pragma once

#include <optional>
#include <vector>

namespace freqaug {

/// Per-minibatch training accuracies of one completed epoch, each in [0,1].
struct EpochStats {
    std::vector<double> minibatch_accuracies;
};

/// Training-adaptive dropout state. P starts at 0.1 and, once minibatch
/// accuracy has stayed at or above 80% for a whole epoch, climbs by 0.1 per
/// interval across five equal intervals of the remaining epochs, capped at
/// 0.5. Epochs are 1-based; current_epoch counts completed epochs.
struct DropoutState {
    bool triggered = false;
    std::optional<int> trigger_epoch;
    int total_epochs = 0;
    int current_epoch = 0;

    explicit DropoutState(int total = 1) : total_epochs(total) {}
};

/// Lengths of the five post-trigger intervals for `remaining` epochs.
/// Non-divisible remainders front-load the longer intervals, so the lengths
/// are ceil(R/5) or floor(R/5) and always partition the remaining span.
std::vector<int> dropout_intervals(int remaining);

/// Folds one completed epoch into the state. Fires the trigger (at most
/// once) when every minibatch accuracy of the epoch is >= 0.80.
DropoutState observe_epoch(DropoutState state, const EpochStats& stats);

/// Dropout probability the trainer must apply for the upcoming epoch.
/// Always one of {0.1, 0.2, 0.3, 0.4, 0.5}; 0.1 until the trigger fires.
double current_p(const DropoutState& state);

}  // namespace freqaug
