#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "freqaug/dataset.hpp"
#include "freqaug/distort.hpp"

namespace freqaug {

/// Batched inference callback: images in, predicted labels out. `indices`
/// carries the testset positions of the batch (used only by test stubs).
using PredictFn = std::function<std::vector<int>(
    const std::vector<Image>&, const std::vector<size_t>& indices)>;

struct FamilyResult {
    std::vector<double> levels;      // the five grid levels
    std::vector<double> accuracies;  // accuracy per level
    double mean = 0.0;               // arithmetic mean of the five
};

/// Accuracy on the clean testset plus per-family results over the five-level
/// grids. `overall` is the arithmetic mean of the clean accuracy and the
/// family means.
struct EvalReport {
    double clean_accuracy = 0.0;
    std::map<std::string, FamilyResult> per_family;  // keyed by kind name
    double overall = 0.0;
    std::string profile = "small";
    uint64_t distortion_seed = 0;
    nlohmann::json manifest;  // resolved run configuration, carried verbatim
};

/// Runs inference on the clean testset once and on every (family, level)
/// variant generated on the fly from the level grid. Per-image distortion
/// streams derive from (seed, family, level, index), so reports are
/// reproducible and comparable across models. This path never augments.
EvalReport evaluate(const PredictFn& model, const Dataset& testset,
                    const DatasetProfile& profile, uint64_t distortion_seed,
                    const std::vector<DistortionKind>& families =
                        {kAllDistortions.begin(), kAllDistortions.end()},
                    int batch_size = 256,
                    const std::string& materialize_dir = {});

nlohmann::json report_to_json(const EvalReport& report);
EvalReport report_from_json(const nlohmann::json& j);

/// One row per report, one column per accuracy; flags the winner per column.
struct ComparisonTable {
    std::vector<std::string> columns;            // "clean", families..., "overall"
    std::vector<std::string> names;              // report display names
    std::vector<std::vector<double>> rows;       // [report][column]
    std::vector<std::vector<double>> deltas;     // row minus first row
    std::vector<int> winner;                     // per column: row index of the best
};

ComparisonTable compare_reports(const std::vector<EvalReport>& reports,
                                const std::vector<std::string>& names);

/// Accuracy-table CSV, winners marked with '*'.
std::string comparison_to_csv(const ComparisonTable& table);

}  // namespace freqaug
