#include <doctest.h>

#include <stdexcept>

#include <cmath>

#include "rfuq/tree.hpp"
#include "test_helpers.hpp"

using namespace rfuq;

namespace {

BootstrapRecord all_in_bag(std::size_t n) {
  BootstrapRecord r;
  r.counts.assign(n, 1);
  for (std::uint32_t j = 0; j < n; ++j) r.in_bag.push_back(j);
  return r;
}

ForestConfig resolved_config(const Dataset& d, std::size_t min_leaf = 0) {
  ForestConfig c;
  c.max_features = d.n_features();
  c.min_samples_leaf = min_leaf == 0 ? (d.task == Task::regression ? 5 : 1) : min_leaf;
  return c;
}

}  // namespace

TEST_CASE("constant response collapses to a single leaf predicting it") {
  Dataset d;
  d.task = Task::regression;
  d.features = Matrix(6, 1);
  for (int i = 0; i < 6; ++i) d.features(static_cast<std::size_t>(i), 0) = i;
  d.response.assign(6, 3.25);

  RandomStream rng(1);
  ForestConfig c = resolved_config(d, 1);
  Tree t = fit_tree(d, all_in_bag(6), c, rng);
  REQUIRE(t.nodes.size() == 1);
  CHECK(t.nodes[0].is_leaf());
  CHECK(t.nodes[0].prediction == 3.25);
}

TEST_CASE("two distinct points split into two pure leaves") {
  Dataset d;
  d.task = Task::regression;
  d.features = Matrix(2, 1);
  d.features(0, 0) = 0.0;
  d.features(1, 0) = 1.0;
  d.response = {10.0, 20.0};

  RandomStream rng(2);
  ForestConfig c = resolved_config(d, 1);
  Tree t = fit_tree(d, all_in_bag(2), c, rng);
  REQUIRE(t.nodes.size() == 3);
  CHECK_FALSE(t.nodes[0].is_leaf());
  CHECK(t.leaf(std::vector<double>{0.0}).prediction == 10.0);
  CHECK(t.leaf(std::vector<double>{1.0}).prediction == 20.0);
}

TEST_CASE("in-bag weighted MSE never exceeds the root weighted variance") {
  // Impurity-decrease oracle: both sides computed directly from node stats.
  Dataset d;
  d.task = Task::regression;
  d.features = Matrix(20, 1);
  d.response.resize(20);
  for (int i = 0; i < 20; ++i) {
    d.features(static_cast<std::size_t>(i), 0) = i;
    d.response[static_cast<std::size_t>(i)] = i;  // y = x
  }
  RandomStream boot_rng(3);
  BootstrapRecord rec = bootstrap_sample(20, boot_rng);
  ForestConfig c = resolved_config(d);
  RandomStream rng(4);
  Tree t = fit_tree(d, rec, c, rng);

  double w_total = 0.0, y_sum = 0.0;
  for (std::uint32_t j : t.bootstrap.in_bag) {
    w_total += t.bootstrap.counts[j];
    y_sum += t.bootstrap.counts[j] * d.response[j];
  }
  double mean = y_sum / w_total;
  double root_var = 0.0;
  double mse = 0.0;
  for (std::uint32_t j : t.bootstrap.in_bag) {
    double w = t.bootstrap.counts[j];
    double y = d.response[j];
    root_var += w * (y - mean) * (y - mean);
    double pred = testing::walk_to_leaf(t, d.features.row(j)).prediction;
    mse += w * (y - pred) * (y - pred);
  }
  CHECK(mse <= root_var + 1e-9);
}

TEST_CASE("leaf multisets partition the in-bag multiset") {
  for (std::uint64_t seed : {0ull, 1ull, 2ull, 3ull}) {
    Dataset d = testing::linear_regression_data(60, 3, seed);
    RandomStream boot_rng(seed);
    BootstrapRecord rec = bootstrap_sample(60, boot_rng);
    ForestConfig c = resolved_config(d);
    c.max_features = 2;
    RandomStream rng(seed + 100);
    Tree t = fit_tree(d, rec, c, rng);

    std::vector<std::uint32_t> counts(60, 0);
    std::size_t total_weight = 0;
    for (const TreeNode& node : t.nodes) {
      if (!node.is_leaf()) continue;
      std::uint64_t leaf_weight = 0;
      for (const LeafMember& m : node.members) {
        counts[m.index] += m.count;
        leaf_weight += m.count;
      }
      CHECK(leaf_weight == node.member_weight);
      total_weight += leaf_weight;
    }
    CHECK(total_weight == 60);  // sum over leaves of |M| = n
    for (std::size_t j = 0; j < 60; ++j) CHECK(counts[j] == t.bootstrap.counts[j]);
  }
}

TEST_CASE("leaf prediction is the multiplicity-weighted mean") {
  Dataset d = testing::linear_regression_data(40, 2, 5);
  RandomStream boot_rng(6);
  BootstrapRecord rec = bootstrap_sample(40, boot_rng);
  ForestConfig c = resolved_config(d);
  RandomStream rng(7);
  Tree t = fit_tree(d, rec, c, rng);
  for (const TreeNode& node : t.nodes) {
    if (!node.is_leaf()) continue;
    double w = 0.0, wy = 0.0;
    for (const LeafMember& m : node.members) {
      w += m.count;
      wy += m.count * d.response[m.index];
    }
    CHECK(node.prediction == doctest::Approx(wy / w).epsilon(1e-14));
  }
}

TEST_CASE("all-constant features make the node terminal") {
  Dataset d;
  d.task = Task::regression;
  d.features = Matrix(5, 2, 1.0);  // no feature varies
  d.response = {1.0, 2.0, 3.0, 4.0, 5.0};
  RandomStream rng(8);
  ForestConfig c = resolved_config(d, 1);
  Tree t = fit_tree(d, all_in_bag(5), c, rng);
  REQUIRE(t.nodes.size() == 1);
  CHECK(t.nodes[0].prediction == doctest::Approx(3.0));
}

TEST_CASE("max_depth caps the tree") {
  Dataset d = testing::linear_regression_data(100, 2, 9);
  RandomStream boot_rng(9);
  BootstrapRecord rec = bootstrap_sample(100, boot_rng);
  ForestConfig c = resolved_config(d, 1);
  c.max_depth = 1;
  RandomStream rng(10);
  Tree t = fit_tree(d, rec, c, rng);
  CHECK(t.nodes.size() <= 3);
}

TEST_CASE("classification leaves carry normalized class masses") {
  Dataset d = testing::blob_classification_data(50, 3);
  RandomStream boot_rng(11);
  BootstrapRecord rec = bootstrap_sample(50, boot_rng);
  ForestConfig c;
  c.max_features = 1;
  c.min_samples_leaf = 1;
  RandomStream rng(12);
  Tree t = fit_tree(d, rec, c, rng);
  for (const TreeNode& node : t.nodes) {
    if (!node.is_leaf()) continue;
    REQUIRE(node.class_mass.size() == 2);
    CHECK(node.class_mass[0] + node.class_mass[1] == doctest::Approx(1.0).epsilon(1e-12));
    std::size_t argmax = node.class_mass[1] > node.class_mass[0] ? 1 : 0;
    CHECK(node.prediction == static_cast<double>(argmax));
  }
}

TEST_CASE("empty in-bag set is rejected") {
  Dataset d = testing::linear_regression_data(10, 1, 1);
  BootstrapRecord rec;
  rec.counts.assign(10, 0);
  for (std::uint32_t j = 0; j < 10; ++j) rec.oob.push_back(j);
  ForestConfig c = resolved_config(d);
  RandomStream rng(1);
  CHECK_THROWS_AS(fit_tree(d, rec, c, rng), std::invalid_argument);
}
