#include "freqaug/schedule.hpp"

#include <algorithm>
#include <stdexcept>

namespace freqaug {

std::vector<int> dropout_intervals(int remaining) {
    if (remaining < 0) throw std::invalid_argument("negative remaining epochs");
    std::vector<int> lengths(5, remaining / 5);
    for (int i = 0; i < remaining % 5; ++i) ++lengths[i];
    return lengths;
}

DropoutState observe_epoch(DropoutState state, const EpochStats& stats) {
    if (state.current_epoch >= state.total_epochs)
        throw std::logic_error("observe_epoch: all epochs already observed");
    if (stats.minibatch_accuracies.empty())
        throw std::invalid_argument("observe_epoch: empty epoch stats");

    ++state.current_epoch;
    if (!state.triggered) {
        bool sustained = std::all_of(stats.minibatch_accuracies.begin(),
                                     stats.minibatch_accuracies.end(),
                                     [](double a) { return a >= 0.80; });
        if (sustained) {
            state.triggered = true;
            state.trigger_epoch = state.current_epoch;
        }
    }
    return state;
}

double current_p(const DropoutState& state) {
    if (!state.triggered) return 0.1;

    // P applies from the epoch after the trigger; the upcoming epoch's
    // position within the remaining span picks the interval.
    int upcoming = state.current_epoch + 1;
    int remaining = state.total_epochs - *state.trigger_epoch;
    if (remaining <= 0 || upcoming <= *state.trigger_epoch) return 0.1;

    auto lengths = dropout_intervals(remaining);
    int offset = upcoming - *state.trigger_epoch;  // 1-based within the span
    int tenths = 5;
    for (int i = 0; i < 5; ++i) {
        offset -= lengths[i];
        if (offset <= 0) {
            tenths = i + 1;
            break;
        }
    }
    return std::min(tenths, 5) / 10.0;
}

}  // namespace freqaug
