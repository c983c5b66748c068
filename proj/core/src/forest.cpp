#include "rfuq/forest.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rfuq/parallel.hpp"

namespace rfuq {

ForestConfig ForestConfig::resolved(const Dataset& d) const {
  ForestConfig c = *this;
  const std::size_t p = d.n_features();
  if (c.max_features == 0) {
    if (d.task == Task::regression)
      c.max_features = (p + 2) / 3;  // ceil(p/3)
    else
      c.max_features = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(p))));
  }
  if (c.min_samples_leaf == 0) c.min_samples_leaf = d.task == Task::regression ? 5 : 1;
  if (c.n_trees < 1) throw std::invalid_argument("n_trees must be >= 1");
  if (c.max_features < 1 || c.max_features > p)
    throw std::invalid_argument("max_features must be in [1, p]");
  return c;
}

Forest::Forest(std::vector<Tree> trees, ForestConfig config, Task task, std::size_t n_train,
               std::size_t n_features, std::size_t n_classes)
    : trees_(std::move(trees)),
      config_(config),
      task_(task),
      n_train_(n_train),
      n_features_(n_features),
      n_classes_(n_classes) {
  std::vector<std::uint8_t> ever_oob(n_train_, 0);
  for (const Tree& t : trees_)
    for (std::uint32_t j : t.bootstrap.oob) ever_oob[j] = 1;
  for (std::uint32_t j = 0; j < n_train_; ++j)
    if (!ever_oob[j]) never_oob_.push_back(j);
}

std::vector<double> Forest::class_mass(std::span<const double> x) const {
  if (x.size() != n_features_) throw std::invalid_argument("feature dimension mismatch");
  std::vector<double> mass(n_classes_, 0.0);
  for (const Tree& t : trees_) {
    const TreeNode& leaf = t.leaf(x);
    for (std::size_t c = 0; c < n_classes_; ++c) mass[c] += leaf.class_mass[c];
  }
  for (double& v : mass) v /= static_cast<double>(trees_.size());
  return mass;
}

Forest train_forest(const Dataset& data, const ForestConfig& config) {
  data.validate();
  ForestConfig resolved = config.resolved(data);
  const std::size_t n = data.n_rows();

  std::vector<Tree> trees(resolved.n_trees);
  parallel_for(resolved.n_trees, resolved.thread_count, [&](std::size_t t) {
    RandomStream rng = RandomStream::derive(resolved.seed, t);
    BootstrapRecord bootstrap = bootstrap_sample(n, rng);
    trees[t] = fit_tree(data, std::move(bootstrap), resolved, rng);
  });

  std::size_t n_classes = data.task == Task::classification ? data.n_classes() : 0;
  return Forest(std::move(trees), resolved, data.task, n, data.n_features(), n_classes);
}

double predict(const Forest& forest, std::span<const double> x) {
  if (x.size() != forest.n_features()) throw std::invalid_argument("feature dimension mismatch");
  if (forest.task() == Task::regression) {
    double sum = 0.0;
    for (const Tree& t : forest.trees()) sum += t.leaf(x).prediction;
    return sum / static_cast<double>(forest.trees().size());
  }
  std::vector<double> mass = forest.class_mass(x);
  std::size_t argmax = 0;
  for (std::size_t c = 1; c < mass.size(); ++c)
    if (mass[c] > mass[argmax]) argmax = c;
  return static_cast<double>(argmax);
}

OobPredictions oob_predict(const Forest& forest, const Dataset& data) {
  if (data.n_rows() != forest.n_train() || data.n_features() != forest.n_features())
    throw std::invalid_argument("oob_predict: dataset does not match the trained forest");
  const std::size_t n = data.n_rows();
  OobPredictions out;
  out.values.assign(n, 0.0);
  out.defined.assign(n, 0);

  const bool classify = forest.task() == Task::classification;
  const std::size_t n_classes = forest.n_classes();
  parallel_for(n, forest.config().thread_count, [&](std::size_t i) {
    auto x = data.features.row(i);
    std::size_t used = 0;
    double sum = 0.0;
    std::vector<double> mass(classify ? n_classes : 0, 0.0);
    for (const Tree& t : forest.trees()) {
      if (t.bootstrap.counts[i] != 0) continue;  // in-bag trees are never consulted
      const TreeNode& leaf = t.leaf(x);
      if (classify) {
        for (std::size_t c = 0; c < n_classes; ++c) mass[c] += leaf.class_mass[c];
      } else {
        sum += leaf.prediction;
      }
      ++used;
    }
    if (used == 0) return;  // undefined, flagged not filled
    out.defined[i] = 1;
    if (classify) {
      std::size_t argmax = 0;
      for (std::size_t c = 1; c < n_classes; ++c)
        if (mass[c] > mass[argmax]) argmax = c;
      out.values[i] = static_cast<double>(argmax);
    } else {
      out.values[i] = sum / static_cast<double>(used);
    }
  });
  return out;
}

}  // namespace rfuq
