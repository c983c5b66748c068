#include "rfuq/tree.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace rfuq {

namespace {

struct BestSplit {
  bool found = false;
  std::int32_t feature = -1;
  double threshold = 0.0;
  double score = -std::numeric_limits<double>::infinity();
};

// Grows one tree over a working array of unique in-bag indices that gets
// partitioned in place. All tie-breaks are fixed: features are scanned in
// sampled order, thresholds in ascending value order, and only a strictly
// better score replaces the incumbent, so the first best split wins.
class TreeBuilder {
 public:
  TreeBuilder(const Dataset& data, const ForestConfig& config, RandomStream& rng)
      : data_(data),
        config_(config),
        rng_(rng),
        n_classes_(data.task == Task::classification ? data.n_classes() : 0),
        feature_pool_(data.n_features()),
        class_total_(n_classes_, 0.0),
        class_left_(n_classes_, 0.0) {
    std::iota(feature_pool_.begin(), feature_pool_.end(), 0u);
  }

  Tree build(BootstrapRecord bootstrap) {
    if (bootstrap.in_bag.empty()) throw std::invalid_argument("fit_tree: empty in-bag set");
    Tree tree;
    tree.bootstrap = std::move(bootstrap);
    counts_ = tree.bootstrap.counts.data();
    slots_ = tree.bootstrap.in_bag;

    tree.nodes.emplace_back();
    struct Item {
      std::size_t node;
      std::size_t begin, end;
      std::size_t depth;
    };
    std::vector<Item> stack{{0, 0, slots_.size(), 0}};
    while (!stack.empty()) {
      Item it = stack.back();
      stack.pop_back();

      BestSplit split = find_split(it.begin, it.end, it.depth);
      if (!split.found) {
        finalize_leaf(tree.nodes[it.node], it.begin, it.end);
        continue;
      }
      auto mid_it = std::stable_partition(
          slots_.begin() + static_cast<std::ptrdiff_t>(it.begin),
          slots_.begin() + static_cast<std::ptrdiff_t>(it.end), [&](std::uint32_t idx) {
            return data_.features(idx, static_cast<std::size_t>(split.feature)) <= split.threshold;
          });
      std::size_t mid = static_cast<std::size_t>(mid_it - slots_.begin());

      TreeNode& node = tree.nodes[it.node];
      node.feature = split.feature;
      node.threshold = split.threshold;
      node.left = static_cast<std::int32_t>(tree.nodes.size());
      node.right = node.left + 1;
      tree.nodes.emplace_back();
      tree.nodes.emplace_back();
      std::size_t left = static_cast<std::size_t>(node.left);
      std::size_t right = static_cast<std::size_t>(node.right);
      stack.push_back({right, mid, it.end, it.depth + 1});
      stack.push_back({left, it.begin, mid, it.depth + 1});
    }
    return tree;
  }

 private:
  BestSplit find_split(std::size_t begin, std::size_t end, std::size_t depth) {
    BestSplit best;
    if (config_.max_depth > 0 && depth >= config_.max_depth) return best;
    if (end - begin < 2) return best;  // one distinct instance: nothing to separate

    double total_w = 0.0;
    double total_y = 0.0;
    if (n_classes_ > 0) std::fill(class_total_.begin(), class_total_.end(), 0.0);
    for (std::size_t s = begin; s < end; ++s) {
      std::uint32_t idx = slots_[s];
      double w = counts_[idx];
      total_w += w;
      if (n_classes_ > 0)
        class_total_[static_cast<std::size_t>(data_.label(idx))] += w;
      else
        total_y += w * data_.response[idx];
    }
    if (total_w < 2.0 * static_cast<double>(config_.min_samples_leaf)) return best;
    if (is_pure(begin, end)) return best;

    // Score that must be beaten: the parent's own proxy term, so only
    // impurity-decreasing splits are accepted.
    double parent_score;
    if (n_classes_ > 0) {
      parent_score = 0.0;
      for (double w : class_total_) parent_score += w * w;
      parent_score /= total_w;
    } else {
      parent_score = total_y * total_y / total_w;
    }
    best.score = parent_score;

    // Sample max_features distinct features (partial Fisher-Yates).
    const std::size_t p = data_.n_features();
    const std::size_t m = std::min(config_.max_features, p);
    for (std::size_t i = 0; i < m; ++i) {
      std::size_t j = i + rng_.uniform_index(p - i);
      std::swap(feature_pool_[i], feature_pool_[j]);
    }

    const double msl = static_cast<double>(config_.min_samples_leaf);
    for (std::size_t fi = 0; fi < m; ++fi) {
      const std::size_t f = feature_pool_[fi];
      sorted_.clear();
      for (std::size_t s = begin; s < end; ++s)
        sorted_.push_back({data_.features(slots_[s], f), slots_[s]});
      std::sort(sorted_.begin(), sorted_.end());

      double left_w = 0.0;
      double left_y = 0.0;
      if (n_classes_ > 0) std::fill(class_left_.begin(), class_left_.end(), 0.0);
      for (std::size_t s = 0; s + 1 < sorted_.size(); ++s) {
        std::uint32_t idx = sorted_[s].second;
        double w = counts_[idx];
        left_w += w;
        if (n_classes_ > 0)
          class_left_[static_cast<std::size_t>(data_.label(idx))] += w;
        else
          left_y += w * data_.response[idx];

        double v = sorted_[s].first;
        double v_next = sorted_[s + 1].first;
        if (v == v_next) continue;
        double threshold = v + (v_next - v) / 2.0;
        // Midpoints of adjacent representable values can round onto an
        // endpoint; such a threshold would not separate the groups.
        if (!(v <= threshold && threshold < v_next)) continue;
        double right_w = total_w - left_w;
        if (left_w < msl || right_w < msl) continue;

        double score;
        if (n_classes_ > 0) {
          double l = 0.0, r = 0.0;
          for (std::size_t c = 0; c < n_classes_; ++c) {
            double wl = class_left_[c];
            double wr = class_total_[c] - wl;
            l += wl * wl;
            r += wr * wr;
          }
          score = l / left_w + r / right_w;
        } else {
          double right_y = total_y - left_y;
          score = left_y * left_y / left_w + right_y * right_y / right_w;
        }
        if (score > best.score) {
          best.found = true;
          best.feature = static_cast<std::int32_t>(f);
          best.threshold = threshold;
          best.score = score;
        }
      }
    }
    return best;
  }

  bool is_pure(std::size_t begin, std::size_t end) const {
    if (n_classes_ > 0) {
      int first = data_.label(slots_[begin]);
      for (std::size_t s = begin + 1; s < end; ++s)
        if (data_.label(slots_[s]) != first) return false;
      return true;
    }
    double mn = data_.response[slots_[begin]];
    double mx = mn;
    for (std::size_t s = begin + 1; s < end; ++s) {
      double y = data_.response[slots_[s]];
      mn = std::min(mn, y);
      mx = std::max(mx, y);
    }
    return mn == mx;
  }

  void finalize_leaf(TreeNode& node, std::size_t begin, std::size_t end) {
    node.members.reserve(end - begin);
    std::sort(slots_.begin() + static_cast<std::ptrdiff_t>(begin),
              slots_.begin() + static_cast<std::ptrdiff_t>(end));
    std::uint64_t weight = 0;
    for (std::size_t s = begin; s < end; ++s) {
      std::uint32_t idx = slots_[s];
      node.members.push_back({idx, counts_[idx]});
      weight += counts_[idx];
    }
    node.member_weight = static_cast<std::uint32_t>(weight);

    if (n_classes_ > 0) {
      node.class_mass.assign(n_classes_, 0.0);
      for (const LeafMember& m : node.members)
        node.class_mass[static_cast<std::size_t>(data_.label(m.index))] += m.count;
      for (double& v : node.class_mass) v /= static_cast<double>(weight);
      std::size_t argmax = 0;
      for (std::size_t c = 1; c < n_classes_; ++c)
        if (node.class_mass[c] > node.class_mass[argmax]) argmax = c;
      node.prediction = static_cast<double>(argmax);
    } else {
      double sum = 0.0;
      for (const LeafMember& m : node.members) sum += m.count * data_.response[m.index];
      node.prediction = sum / static_cast<double>(weight);
    }
  }

  const Dataset& data_;
  const ForestConfig& config_;
  RandomStream& rng_;
  const std::size_t n_classes_;
  const std::uint32_t* counts_ = nullptr;
  std::vector<std::uint32_t> slots_;
  std::vector<std::size_t> feature_pool_;
  std::vector<double> class_total_;
  std::vector<double> class_left_;
  std::vector<std::pair<double, std::uint32_t>> sorted_;
};

}  // namespace

Tree fit_tree(const Dataset& data, BootstrapRecord bootstrap, const ForestConfig& config,
              RandomStream& rng) {
  TreeBuilder builder(data, config, rng);
  return builder.build(std::move(bootstrap));
}

}  // namespace rfuq
