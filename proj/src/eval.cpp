#include "freqaug/eval.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "freqaug/errors.hpp"
#include "freqaug/rng.hpp"

using nlohmann::json;

namespace freqaug {

namespace {

double run_pass(const PredictFn& model, const Dataset& testset, int batch_size,
                const std::function<Image(const Image&, size_t)>& transform,
                const std::string& dump_dir) {
    size_t correct = 0;
    std::vector<Image> batch;
    std::vector<size_t> indices;
    for (size_t start = 0; start < testset.size(); start += batch_size) {
        size_t end = std::min(start + batch_size, testset.size());
        batch.clear();
        indices.clear();
        for (size_t i = start; i < end; ++i) {
            batch.push_back(transform ? transform(testset.image(i), i) : testset.image(i));
            indices.push_back(i);
        }
        auto predicted = model(batch, indices);
        if (predicted.size() != batch.size())
            throw std::runtime_error("evaluate: model returned wrong prediction count");
        for (size_t i = 0; i < batch.size(); ++i) {
            int k = testset.num_classes();
            if (predicted[i] < 0 || predicted[i] >= k)
                throw std::runtime_error("evaluate: prediction outside class range");
            if (predicted[i] == testset.labels[start + i]) ++correct;
            if (!dump_dir.empty())
                write_pnm(batch[i], dump_dir + "/" + std::to_string(start + i) +
                                        (batch[i].channels == 1 ? ".pgm" : ".ppm"));
        }
    }
    return static_cast<double>(correct) / testset.size();
}

}  // namespace

EvalReport evaluate(const PredictFn& model, const Dataset& testset,
                    const DatasetProfile& profile, uint64_t distortion_seed,
                    const std::vector<DistortionKind>& families, int batch_size,
                    const std::string& materialize_dir) {
    if (testset.size() == 0) throw DataError("evaluate: empty testset");
    testset.validate();

    EvalReport report;
    report.profile = profile.name;
    report.distortion_seed = distortion_seed;
    report.clean_accuracy = run_pass(model, testset, batch_size, nullptr, {});

    double sum = report.clean_accuracy;
    for (size_t f = 0; f < families.size(); ++f) {
        DistortionKind kind = families[f];
        FamilyResult fam;
        auto grid = level_grid(kind, profile);
        for (size_t li = 0; li < grid.size(); ++li) {
            std::string dump;
            if (!materialize_dir.empty()) {
                dump = materialize_dir + "/" + to_string(kind) + "_level" +
                       std::to_string(li + 1);
                std::filesystem::create_directories(dump);
            }
            auto transform = [&](const Image& img, size_t idx) {
                return distort(img, grid[li], profile,
                               derive_seed(distortion_seed,
                                           {static_cast<uint64_t>(kind), li, idx}));
            };
            fam.levels.push_back(grid[li].level);
            fam.accuracies.push_back(run_pass(model, testset, batch_size, transform, dump));
        }
        fam.mean = std::accumulate(fam.accuracies.begin(), fam.accuracies.end(), 0.0) /
                   fam.accuracies.size();
        sum += fam.mean;
        report.per_family[to_string(kind)] = std::move(fam);
    }
    report.overall = sum / (1.0 + families.size());
    return report;
}

json report_to_json(const EvalReport& report) {
    json families = json::object();
    for (const auto& [name, fam] : report.per_family)
        families[name] = {{"levels", fam.levels},
                          {"accuracies", fam.accuracies},
                          {"mean", fam.mean}};
    return {{"clean_accuracy", report.clean_accuracy},
            {"families", families},
            {"overall", report.overall},
            {"profile", report.profile},
            {"distortion_seed", report.distortion_seed},
            {"manifest", report.manifest}};
}

EvalReport report_from_json(const json& j) {
    EvalReport report;
    report.clean_accuracy = j.at("clean_accuracy").get<double>();
    report.overall = j.at("overall").get<double>();
    report.profile = j.at("profile").get<std::string>();
    report.distortion_seed = j.at("distortion_seed").get<uint64_t>();
    report.manifest = j.value("manifest", json());
    for (const auto& [name, fam] : j.at("families").items()) {
        FamilyResult f;
        f.levels = fam.at("levels").get<std::vector<double>>();
        f.accuracies = fam.at("accuracies").get<std::vector<double>>();
        f.mean = fam.at("mean").get<double>();
        report.per_family[name] = std::move(f);
    }
    return report;
}

ComparisonTable compare_reports(const std::vector<EvalReport>& reports,
                                const std::vector<std::string>& names) {
    if (reports.empty()) throw std::invalid_argument("compare_reports: no reports");
    if (names.size() != reports.size())
        throw std::invalid_argument("compare_reports: names/reports size mismatch");
    for (const auto& r : reports) {
        if (r.per_family.size() != reports[0].per_family.size())
            throw std::invalid_argument("compare_reports: family sets differ");
        for (const auto& [name, fam] : r.per_family)
            if (!reports[0].per_family.count(name) ||
                reports[0].per_family.at(name).levels != fam.levels)
                throw std::invalid_argument("compare_reports: level grids differ");
    }

    ComparisonTable table;
    table.names = names;
    table.columns.push_back("clean");
    for (const auto& [name, fam] : reports[0].per_family) table.columns.push_back(name);
    table.columns.push_back("overall");

    for (const auto& r : reports) {
        std::vector<double> row;
        row.push_back(r.clean_accuracy);
        for (const auto& [name, fam] : r.per_family) row.push_back(fam.mean);
        row.push_back(r.overall);
        table.rows.push_back(std::move(row));
    }
    for (const auto& row : table.rows) {
        std::vector<double> delta(row.size());
        for (size_t c = 0; c < row.size(); ++c) delta[c] = row[c] - table.rows[0][c];
        table.deltas.push_back(std::move(delta));
    }
    for (size_t c = 0; c < table.columns.size(); ++c) {
        int best = 0;
        for (size_t r = 1; r < table.rows.size(); ++r)
            if (table.rows[r][c] > table.rows[best][c]) best = static_cast<int>(r);
        table.winner.push_back(best);
    }
    return table;
}

std::string comparison_to_csv(const ComparisonTable& table) {
    std::ostringstream out;
    out << "model";
    for (const auto& c : table.columns) out << "," << c;
    out << "\n";
    out.setf(std::ios::fixed);
    out.precision(4);
    for (size_t r = 0; r < table.rows.size(); ++r) {
        out << table.names[r];
        for (size_t c = 0; c < table.rows[r].size(); ++c) {
            out << "," << table.rows[r][c];
            if (table.winner[c] == static_cast<int>(r)) out << "*";
        }
        out << "\n";
    }
    return out.str();
}

}  // namespace freqaug
