// rfuq - random forest uncertainty benchmark CLI.
//
// Subcommands: train, proximity, intervals, trust, evaluate, benchmark,
// sweep-k. intervals/trust/benchmark/sweep-k all drive the same experiment
// pipeline; they differ only in defaults (task, methods, k mode).

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "rfuq/csv.hpp"
#include "rfuq/experiment.hpp"
#include "rfuq/forest.hpp"
#include "rfuq/forest_io.hpp"
#include "rfuq/metrics.hpp"
#include "rfuq/proximity.hpp"
#include "rfuq/reports.hpp"
#include "rfuq/synthetic.hpp"

namespace fs = std::filesystem;
using namespace rfuq;

namespace {

struct DataFlags {
  std::string data_path;
  std::string target;
  std::string synthetic;
  std::size_t synthetic_n = 1000;
  double label_noise = 0.1;
  std::string task = "regression";
  std::uint64_t seed = 0;
};

void add_data_flags(CLI::App* cmd, DataFlags& f) {
  cmd->add_option("--data", f.data_path, "CSV file with a header row");
  cmd->add_option("--target", f.target, "response column name (CSV input)");
  cmd->add_option("--synthetic", f.synthetic,
                  "bundled generator: heteroscedastic | gaussians | two-moons");
  cmd->add_option("--synthetic-n", f.synthetic_n, "rows to generate");
  cmd->add_option("--label-noise", f.label_noise, "two-moons label flip rate");
  cmd->add_option("--task", f.task, "regression | classification");
  cmd->add_option("--seed", f.seed, "random seed");
}

Task parse_task(const std::string& value) {
  if (value == "regression") return Task::regression;
  if (value == "classification") return Task::classification;
  throw CLI::ValidationError("--task must be regression or classification");
}

Dataset load_data(const DataFlags& f) {
  Task task = parse_task(f.task);
  if (!f.data_path.empty()) {
    if (f.target.empty()) throw CLI::ValidationError("--target is required with --data");
    return load_csv(f.data_path, f.target, task);
  }
  if (f.synthetic.empty())
    throw CLI::ValidationError("either --data or --synthetic is required");
  Dataset d = make_synthetic(f.synthetic, f.synthetic_n, f.label_noise, f.seed);
  if (d.task != task)
    throw CLI::ValidationError("--task does not match the synthetic dataset's task");
  return d;
}

void warn_never_oob(const Forest& forest) {
  if (forest.never_oob().empty()) return;
  std::cerr << "warning: " << forest.never_oob().size()
            << " training instance(s) were never OOB; their OOB predictions,"
            << " residuals and proximity rows are undefined. Use more trees"
            << " (>= 50 recommended).\n";
}

// Maps benchmark-style flags onto config entries so every config key has a
// flag of the same name.
struct ExperimentFlags {
  std::vector<std::pair<std::string, std::string>> entries;

  void add(CLI::App* cmd, const std::string& flag, const std::string& key,
           const std::string& help) {
    cmd->add_option_function<std::string>(
        flag, [this, key](const std::string& v) { entries.emplace_back(key, v); }, help);
  }
};

ExperimentConfig build_config(const std::string& config_path, const ExperimentFlags& flags) {
  ExperimentConfig c =
      config_path.empty() ? ExperimentConfig{} : parse_config_file(config_path);
  for (const auto& [key, value] : flags.entries) apply_config_entry(c, key, value);
  return c;
}

void attach_experiment_flags(CLI::App* cmd, ExperimentFlags& flags, std::string& config_path) {
  cmd->add_option("--config", config_path, "key = value config file");
  flags.add(cmd, "--task", "task", "regression | classification");
  flags.add(cmd, "--data", "data", "CSV file");
  flags.add(cmd, "--target", "target", "response column");
  flags.add(cmd, "--synthetic", "synthetic", "bundled generator name");
  flags.add(cmd, "--synthetic-n", "synthetic_n", "rows to generate");
  flags.add(cmd, "--label-noise", "label_noise", "two-moons flip rate");
  flags.add(cmd, "--test-fraction", "test_fraction", "holdout fraction in (0,1)");
  flags.add(cmd, "--seeds", "seeds", "comma-separated seed list");
  flags.add(cmd, "--seed", "seed", "single seed (alias of --seeds)");
  flags.add(cmd, "--trees", "trees", "trees per forest");
  flags.add(cmd, "--max-features", "max_features", "features tried per split (0 = default)");
  flags.add(cmd, "--min-samples-leaf", "min_samples_leaf", "minimum leaf weight (0 = default)");
  flags.add(cmd, "--max-depth", "max_depth", "depth cap (0 = unlimited)");
  flags.add(cmd, "--alpha", "alpha", "miscoverage levels, e.g. 0.1,0.05");
  flags.add(cmd, "--target-coverage", "target_coverage", "coverage levels, e.g. 0.9,0.95");
  flags.add(cmd, "--k", "k", "fixed neighborhood size; n = training size");
  flags.add(cmd, "--k-mode", "k_mode", "dynamic | fixed | sweep");
  flags.add(cmd, "--k-list", "k_sweep", "sweep list, e.g. 25,50,100,n");
  flags.add(cmd, "--conformity-k", "conformity_k", "top-k for conformity scores");
  flags.add(cmd, "--lambda", "lambda", "BIS coverage penalty weight");
  flags.add(cmd, "--methods", "methods", "comma-separated method list");
  flags.add(cmd, "--threads", "threads", "worker threads (0 = hardware)");
  flags.add(cmd, "--parallel-seeds", "parallel_seeds", "run seeds concurrently (true/false)");
  flags.add(cmd, "--quantile-rule", "quantile_rule", "linear | nearest-rank");
  flags.add(cmd, "--out", "out_dir", "output directory");
}

int run_experiment_command(const std::string& config_path, const ExperimentFlags& flags,
                           const char* forced_key = nullptr,
                           const char* forced_value = nullptr) {
  ExperimentConfig c = build_config(config_path, flags);
  if (forced_key) apply_config_entry(c, forced_key, forced_value);
  BenchmarkOutput out = run_benchmark(c);
  std::cout << "wrote " << out.files.size() << " file(s) to " << c.out_dir << "\n";
  for (const SummaryRecord& r : out.records) {
    std::cout << r.kind << " seed=" << r.seed << " method=" << r.method;
    if (r.k) std::cout << " k=" << *r.k;
    if (r.target_coverage) std::cout << " target=" << *r.target_coverage;
    if (r.coverage) std::cout << " coverage=" << *r.coverage;
    if (r.mean_width) std::cout << " width=" << *r.mean_width;
    if (r.bis) std::cout << " bis=" << *r.bis;
    if (r.auc) std::cout << " auc=" << *r.auc;
    if (r.accuracy) std::cout << " accuracy=" << *r.accuracy;
    std::cout << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"random forest uncertainty quantification benchmark"};
  app.require_subcommand(1);

  // train ------------------------------------------------------------------
  auto* train_cmd = app.add_subcommand("train", "train a forest and save it");
  DataFlags train_data;
  ForestConfig train_config;
  std::string train_out = "forest.json";
  add_data_flags(train_cmd, train_data);
  train_cmd->add_option("--trees", train_config.n_trees, "number of trees");
  train_cmd->add_option("--max-features", train_config.max_features, "0 = task default");
  train_cmd->add_option("--min-samples-leaf", train_config.min_samples_leaf, "0 = task default");
  train_cmd->add_option("--max-depth", train_config.max_depth, "0 = unlimited");
  train_cmd->add_option("--threads", train_config.thread_count, "0 = hardware");
  train_cmd->add_option("--out", train_out, "forest file to write");

  // proximity --------------------------------------------------------------
  auto* prox_cmd = app.add_subcommand("proximity", "compute RF-GAP proximities");
  DataFlags prox_data;
  std::string prox_forest, prox_test, prox_out = "proximity.csv";
  std::size_t prox_trees = 500;
  std::size_t prox_threads = 1;
  add_data_flags(prox_cmd, prox_data);
  prox_cmd->add_option("--forest", prox_forest, "trained forest file (else trains in-place)");
  prox_cmd->add_option("--test-data", prox_test, "CSV of query points (else train-train)");
  prox_cmd->add_option("--trees", prox_trees, "trees when training in-place");
  prox_cmd->add_option("--threads", prox_threads, "worker threads");
  prox_cmd->add_option("--out", prox_out, "triplet CSV to write");

  // experiment-pipeline commands --------------------------------------------
  auto* intervals_cmd = app.add_subcommand("intervals", "per-instance prediction intervals");
  ExperimentFlags intervals_flags;
  std::string intervals_config;
  attach_experiment_flags(intervals_cmd, intervals_flags, intervals_config);

  auto* trust_cmd = app.add_subcommand("trust", "per-instance classification trust scores");
  ExperimentFlags trust_flags;
  std::string trust_config;
  attach_experiment_flags(trust_cmd, trust_flags, trust_config);

  auto* bench_cmd = app.add_subcommand("benchmark", "full uncertainty benchmark");
  ExperimentFlags bench_flags;
  std::string bench_config;
  attach_experiment_flags(bench_cmd, bench_flags, bench_config);

  auto* sweep_cmd = app.add_subcommand("sweep-k", "coverage/width trend across k");
  ExperimentFlags sweep_flags;
  std::string sweep_config;
  attach_experiment_flags(sweep_cmd, sweep_flags, sweep_config);

  // evaluate -----------------------------------------------------------------
  auto* eval_cmd = app.add_subcommand("evaluate", "metrics from a per-instance report");
  std::string eval_intervals, eval_trust, eval_out = "metrics.json";
  double eval_lambda = 1.0;
  double eval_target = -1.0;
  eval_cmd->add_option("--intervals", eval_intervals, "intervals CSV to evaluate");
  eval_cmd->add_option("--trust", eval_trust, "trust CSV to evaluate");
  eval_cmd->add_option("--lambda", eval_lambda, "BIS coverage penalty weight");
  eval_cmd->add_option("--target-coverage", eval_target,
                       "override target (default: 1 - alpha per group)");
  eval_cmd->add_option("--out", eval_out, "metrics JSON to write");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*train_cmd) {
      Dataset d = load_data(train_data);
      train_config.seed = train_data.seed;
      Forest forest = train_forest(d, train_config);
      warn_never_oob(forest);
      save_forest(forest, train_out);

      OobPredictions oob = oob_predict(forest, d);
      std::size_t defined = 0;
      double err = 0.0;
      for (std::size_t i = 0; i < d.n_rows(); ++i) {
        if (!oob.defined[i]) continue;
        ++defined;
        if (d.task == Task::regression) {
          double r = d.response[i] - oob.values[i];
          err += r * r;
        } else {
          err += oob.values[i] == d.response[i] ? 0.0 : 1.0;
        }
      }
      std::cout << "trained " << forest.trees().size() << " trees on " << d.n_rows()
                << " rows; OOB "
                << (d.task == Task::regression ? "MSE " : "error rate ")
                << (defined ? err / static_cast<double>(defined) : 0.0) << " over " << defined
                << " instances; saved to " << train_out << "\n";
      return 0;
    }

    if (*prox_cmd) {
      Dataset d = load_data(prox_data);
      Forest forest;
      if (!prox_forest.empty()) {
        forest = load_forest(prox_forest);
      } else {
        ForestConfig c;
        c.n_trees = prox_trees;
        c.seed = prox_data.seed;
        c.thread_count = prox_threads;
        forest = train_forest(d, c);
        warn_never_oob(forest);
      }
      ProximityMatrix w;
      if (prox_test.empty()) {
        w = rf_gap_train(forest, d);
      } else {
        Dataset t = load_csv(prox_test, prox_data.target, d.task);
        w = rf_gap_test(forest, d, t.features);
      }
      std::ofstream out(prox_out);
      if (!out) throw std::runtime_error("cannot write " + prox_out);
      write_triplets(w, out);
      std::size_t nnz = 0;
      for (const auto& row : w.rows) nnz += row.size();
      std::cout << "wrote " << nnz << " nonzero proximities for " << w.n_rows() << " rows to "
                << prox_out;
      if (!w.skipped_rows.empty())
        std::cout << " (skipped " << w.skipped_rows.size() << " never-OOB rows)";
      std::cout << "\n";
      return 0;
    }

    if (*intervals_cmd)
      return run_experiment_command(intervals_config, intervals_flags, "task", "regression");
    if (*trust_cmd)
      return run_experiment_command(trust_config, trust_flags, "task", "classification");
    if (*bench_cmd) return run_experiment_command(bench_config, bench_flags);
    if (*sweep_cmd) return run_experiment_command(sweep_config, sweep_flags, "k_mode", "sweep");

    if (*eval_cmd) {
      if (eval_intervals.empty() == eval_trust.empty())
        throw std::runtime_error("evaluate needs exactly one of --intervals / --trust");
      std::optional<double> target;
      if (eval_target > 0.0) target = eval_target;
      std::vector<SummaryRecord> records =
          eval_intervals.empty() ? evaluate_trust_file(eval_trust)
                                 : evaluate_intervals_file(eval_intervals, eval_lambda, target);
      std::ofstream out(eval_out);
      if (!out) throw std::runtime_error("cannot write " + eval_out);
      write_summary_json(out, records);
      std::cout << "wrote " << records.size() << " record(s) to " << eval_out << "\n";
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
