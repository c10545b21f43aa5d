#pragma once

#include "blda/admm_state.hpp"
#include "blda/dataset.hpp"
#include "blda/eval.hpp"
#include "blda/types.hpp"

#include <nlohmann/json_fwd.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace blda {

/// One dataset entry of a benchmark: either a CSV on disk or the builtin
/// synthetic generator.
struct DatasetSpec {
    std::string name;
    std::string path;                // empty for synthetic
    std::string label_column = "-1";
    bool synthetic_fig1 = false;
    std::uint64_t synth_seed = 1;
    bool synth_outliers = false;
};

struct RunConfig {
    std::vector<DatasetSpec> datasets;
    std::vector<Method> methods;
    Index d_max = 0;  // 0 = feature count of each dataset
    double train_fraction = 0.7;
    int n_seeds = 1;
    std::vector<NoiseSpec> noise;  // variants in addition to the clean run
    AdmmConfig admm;
    std::string output = "bench_out";
    bool emit_trace = false;
    int workers = 1;

    void validate() const;  // throws DataError on an unusable configuration
};

RunConfig run_config_from_json(const nlohmann::json& j);
nlohmann::json run_config_to_json(const RunConfig& cfg);

/// One (dataset, noise, seed, method) evaluation.
struct RunRecord {
    std::string dataset;
    std::string noise;  // "" = clean
    std::uint64_t seed = 0;
    Method method = Method::Pca;
    ExperimentReport report;
};

struct RunFailure {
    std::string dataset, noise, method, message;
    std::uint64_t seed = 0;
};

struct BenchResult {
    std::vector<RunRecord> records;
    std::vector<RunFailure> failures;
    std::string runs_csv, summary_csv, ranks_csv, manifest_json;
    std::vector<std::string> curve_files;
};

/// Execute the full benchmark and write runs.csv, summary.csv, ranks.csv,
/// per-curve files and manifest.json under cfg.output. Individual run
/// failures are recorded and the batch continues.
BenchResult run_bench(const RunConfig& cfg);

/// Summary cell: the (accuracy, dimension) pair of the lower-median best run.
struct SummaryCell {
    double accuracy = 0.0;
    Index dimension = 0;
};

/// Recompute the summary (median best per dataset x noise x method) from raw
/// records; used both for emission and for the report-arithmetic check.
std::map<std::string, SummaryCell> summarize(const std::vector<RunRecord>& records);

/// Average rank per method within each dataset x noise group and overall.
/// Lower is better; ties share the average of their positions.
struct RankTable {
    std::vector<std::string> groups;                    // "dataset|noise"
    std::map<std::string, std::vector<double>> by_group;  // method order = methods
    std::vector<Method> methods;
    std::vector<double> average;  // across groups
};
RankTable rank_methods(const std::vector<RunRecord>& records, const std::vector<Method>& methods);

}  // namespace blda
