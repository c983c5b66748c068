#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "rfuq/bootstrap.hpp"
#include "rfuq/dataset.hpp"
#include "rfuq/forest_config.hpp"

namespace rfuq {

struct LeafMember {
  std::uint32_t index;  // training instance
  std::uint32_t count;  // bootstrap multiplicity c_j
};

struct TreeNode {
  std::int32_t feature = -1;  // -1 marks a leaf
  double threshold = 0.0;     // go left when x[feature] <= threshold
  std::int32_t left = -1;
  std::int32_t right = -1;

  // Leaf payload. members is the in-bag multiset, ascending by index;
  // member_weight = sum of counts. prediction is the multiplicity-weighted
  // mean (regression) or the argmax class with lowest-index tie-break
  // (classification); class_mass holds the weighted class frequencies
  // normalized to sum 1.
  std::vector<LeafMember> members;
  std::uint32_t member_weight = 0;
  double prediction = 0.0;
  std::vector<double> class_mass;

  bool is_leaf() const { return feature < 0; }
};

struct Tree {
  std::vector<TreeNode> nodes;  // nodes[0] is the root
  BootstrapRecord bootstrap;

  std::size_t leaf_index(std::span<const double> x) const {
    std::size_t id = 0;
    while (!nodes[id].is_leaf()) {
      const TreeNode& nd = nodes[id];
      id = static_cast<std::size_t>(x[static_cast<std::size_t>(nd.feature)] <= nd.threshold
                                        ? nd.left
                                        : nd.right);
    }
    return id;
  }

  const TreeNode& leaf(std::span<const double> x) const { return nodes[leaf_index(x)]; }
};

// Grows one CART tree on the bootstrap sample. Splits minimize
// multiplicity-weighted impurity (variance / Gini) over max_features
// features sampled per node; candidate thresholds are midpoints of
// consecutive distinct in-bag values. config must already be resolved.
Tree fit_tree(const Dataset& data, BootstrapRecord bootstrap, const ForestConfig& config,
              RandomStream& rng);

}  // namespace rfuq
