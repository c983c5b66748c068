#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rfuq/dataset.hpp"
#include "rfuq/reports.hpp"

namespace rfuq {

// Flat experiment description. Every field maps 1:1 to a config-file key and
// a CLI flag of the same name; see parse_config_file.
struct ExperimentConfig {
  Task task = Task::regression;
  std::string data_path;       // CSV input; mutually exclusive with synthetic
  std::string target_column;
  std::string synthetic;       // heteroscedastic | gaussians | two-moons
  std::size_t synthetic_n = 1000;
  double label_noise = 0.1;    // two-moons only
  double test_fraction = 0.25;
  std::vector<std::uint64_t> seeds{0};
  std::size_t trees = 500;
  std::size_t max_features = 0;      // 0 = task default
  std::size_t min_samples_leaf = 0;  // 0 = task default
  std::size_t max_depth = 0;         // 0 = unlimited
  std::vector<double> target_coverage;  // default {0.9}; alpha = 1 - target
  std::string k_mode = "dynamic";       // dynamic | fixed | sweep
  std::size_t k = 0;                    // fixed-k value; 0 = n_train
  std::vector<std::size_t> k_sweep;     // sweep mode; 0 entry = n_train
  std::size_t conformity_k = 10;
  double lambda = 1.0;
  std::vector<std::string> methods;  // default: all methods of the task
  std::string out_dir = "rfuq-out";
  std::size_t threads = 1;           // 0 = hardware concurrency
  bool parallel_seeds = false;       // must not change any numeric output
  std::string quantile_rule = "linear";  // linear | nearest-rank
};

// key = value lines, '#' comments. Unknown keys raise one error listing all
// of them. Values use comma-separated lists where the field is a list; the
// k_sweep token "n" stands for the training-set size.
ExperimentConfig parse_config_file(const std::string& path);

// Applies one key=value pair (the CLI reuses this for flag overrides).
// Throws std::invalid_argument on unknown keys or malformed values.
void apply_config_entry(ExperimentConfig& config, const std::string& key,
                        const std::string& value);

void validate_config(const ExperimentConfig& config);

struct SplitIndices {
  std::vector<std::uint32_t> train;  // ascending
  std::vector<std::uint32_t> test;   // ascending
};

// Seeded uniform shuffle; round(test_fraction * n) test rows, both sides
// non-empty.
SplitIndices train_test_split(std::size_t n, double test_fraction, std::uint64_t seed);

struct BenchmarkOutput {
  std::vector<SummaryRecord> records;
  std::vector<std::string> files;  // everything written, relative to out_dir
};

// Runs the configured experiment for every seed: split, train, proximities,
// per-method uncertainty estimates, evaluation, report emission. Output is a
// pure function of the config; thread count and parallel_seeds change only
// the wall clock.
BenchmarkOutput run_benchmark(const ExperimentConfig& config);

// Re-evaluates previously written per-instance reports.
std::vector<SummaryRecord> evaluate_intervals_file(const std::string& path, double lambda,
                                                   std::optional<double> target_override);
std::vector<SummaryRecord> evaluate_trust_file(const std::string& path);

}  // namespace rfuq
