#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "rfuq/dataset.hpp"
#include "rfuq/forest_config.hpp"
#include "rfuq/tree.hpp"

namespace rfuq {

struct OobPredictions {
  std::vector<double> values;          // regression value or class index
  std::vector<std::uint8_t> defined;   // false where the instance was never OOB
};

// Immutable after training; safe to share across threads for prediction.
class Forest {
 public:
  Forest() = default;
  Forest(std::vector<Tree> trees, ForestConfig config, Task task, std::size_t n_train,
         std::size_t n_features, std::size_t n_classes);

  const std::vector<Tree>& trees() const { return trees_; }
  const ForestConfig& config() const { return config_; }
  Task task() const { return task_; }
  std::size_t n_train() const { return n_train_; }
  std::size_t n_features() const { return n_features_; }
  std::size_t n_classes() const { return n_classes_; }

  // Training instances that were in-bag in every tree. Their OOB prediction,
  // residual and proximity row are undefined; keep n_trees >= 50 to avoid
  // them in practice.
  const std::vector<std::uint32_t>& never_oob() const { return never_oob_; }

  // Averaged multiplicity-weighted class frequencies over all trees.
  std::vector<double> class_mass(std::span<const double> x) const;

 private:
  std::vector<Tree> trees_;
  ForestConfig config_;
  Task task_ = Task::regression;
  std::size_t n_train_ = 0;
  std::size_t n_features_ = 0;
  std::size_t n_classes_ = 0;
  std::vector<std::uint32_t> never_oob_;
};

// Trains config.n_trees trees. Tree t consumes a random stream derived from
// (config.seed, t), so the forest is bit-identical for any thread_count.
Forest train_forest(const Dataset& data, const ForestConfig& config);

// Ensemble prediction over all trees: mean of leaf means (regression) or
// argmax of averaged class frequencies with lowest-index tie-break.
double predict(const Forest& forest, std::span<const double> x);

// Per-instance prediction averaged over the trees where the instance is OOB.
OobPredictions oob_predict(const Forest& forest, const Dataset& data);

}  // namespace rfuq
