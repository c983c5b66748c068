#include "rfuq/proximity.hpp"

#include <algorithm>
#include <cassert>
#include <ostream>
#include <stdexcept>

#include "rfuq/parallel.hpp"
#include "src/number_format.hpp"

namespace rfuq {

namespace {

// Per-thread dense accumulator, reset through the touched list so repeated
// rows cost O(nnz) not O(n).
struct RowScratch {
  std::vector<double> acc;
  std::vector<std::uint32_t> touched;
};

// Accumulates one query row. include_tree selects S_i; trees are visited in
// ascending order and the final division by |S| happens once, so the result
// is a fixed function of the forest.
template <typename IncludeTree>
std::vector<ProximityMatrix::Entry> build_row(const Forest& forest, std::span<const double> x,
                                              RowScratch& scratch, IncludeTree include_tree) {
  const std::size_t n = forest.n_train();
  if (scratch.acc.size() < n) scratch.acc.assign(n, 0.0);

  std::size_t used_trees = 0;
  for (const Tree& tree : forest.trees()) {
    if (!include_tree(tree)) continue;
    ++used_trees;
    const TreeNode& leaf = tree.leaf(x);
    const double inv_m = 1.0 / static_cast<double>(leaf.member_weight);
    for (const LeafMember& m : leaf.members) {
      if (scratch.acc[m.index] == 0.0) scratch.touched.push_back(m.index);
      scratch.acc[m.index] += static_cast<double>(m.count) * inv_m;
    }
  }

  std::vector<ProximityMatrix::Entry> row;
  row.reserve(scratch.touched.size());
  std::sort(scratch.touched.begin(), scratch.touched.end());
  for (std::uint32_t j : scratch.touched) {
    row.emplace_back(j, scratch.acc[j] / static_cast<double>(used_trees));
    scratch.acc[j] = 0.0;
  }
  scratch.touched.clear();
  return row;
}

}  // namespace

ProximityMatrix rf_gap_train(const Forest& forest, const Dataset& data) {
  if (data.n_rows() != forest.n_train() || data.n_features() != forest.n_features())
    throw std::invalid_argument("rf_gap_train: dataset does not match the trained forest");

  const std::size_t n = data.n_rows();
  ProximityMatrix w;
  w.kind = ProximityMatrix::Kind::train_train;
  w.n_cols = n;
  w.rows.resize(n);
  w.skipped_rows = forest.never_oob();

  parallel_for(n, forest.config().thread_count, [&](std::size_t i) {
    if (!w.row_defined(i)) return;  // |S_i| = 0: row omitted
    thread_local RowScratch scratch;
    w.rows[i] = build_row(forest, data.features.row(i), scratch, [&](const Tree& t) {
      return t.bootstrap.counts[i] == 0;
    });
    // c_i(t) = 0 in every tree of S_i, so the diagonal never accumulates.
    assert(!std::binary_search(
        w.rows[i].begin(), w.rows[i].end(), ProximityMatrix::Entry{i, 0.0},
        [](const auto& a, const auto& b) { return a.first < b.first; }));
  });
  return w;
}

ProximityMatrix rf_gap_test(const Forest& forest, const Dataset& train_data,
                            const Matrix& test_features) {
  if (train_data.n_rows() != forest.n_train())
    throw std::invalid_argument("rf_gap_test: training data does not match the forest");
  if (test_features.cols() != forest.n_features())
    throw std::invalid_argument("rf_gap_test: feature dimension mismatch");

  ProximityMatrix w;
  w.kind = ProximityMatrix::Kind::test_train;
  w.n_cols = forest.n_train();
  w.rows.resize(test_features.rows());

  parallel_for(test_features.rows(), forest.config().thread_count, [&](std::size_t i) {
    thread_local RowScratch scratch;
    w.rows[i] =
        build_row(forest, test_features.row(i), scratch, [](const Tree&) { return true; });
  });
  return w;
}

ReconstructedPredictions reconstruct_predictions(const ProximityMatrix& w,
                                                 std::span<const double> responses, Task task,
                                                 std::size_t n_classes) {
  if (responses.size() != w.n_cols)
    throw std::invalid_argument("reconstruct_predictions: response length != columns");
  if (task == Task::classification && n_classes < 2)
    throw std::invalid_argument("reconstruct_predictions: n_classes required for classification");

  ReconstructedPredictions out;
  out.values.assign(w.n_rows(), 0.0);
  out.defined.assign(w.n_rows(), 0);

  std::vector<double> mass(task == Task::classification ? n_classes : 0);
  for (std::size_t i = 0; i < w.n_rows(); ++i) {
    if (!w.row_defined(i)) continue;
    out.defined[i] = 1;
    if (task == Task::regression) {
      double y = 0.0;
      for (const auto& [j, weight] : w.rows[i]) y += weight * responses[j];
      out.values[i] = y;
    } else {
      std::fill(mass.begin(), mass.end(), 0.0);
      for (const auto& [j, weight] : w.rows[i])
        mass[static_cast<std::size_t>(responses[j])] += weight;
      std::size_t argmax = 0;
      for (std::size_t c = 1; c < mass.size(); ++c)
        if (mass[c] > mass[argmax]) argmax = c;
      out.values[i] = static_cast<double>(argmax);
    }
  }
  return out;
}

void write_triplets(const ProximityMatrix& w, std::ostream& out) {
  out << "row,col,weight\n";
  for (std::size_t i = 0; i < w.n_rows(); ++i) {
    for (const auto& [j, weight] : w.rows[i])
      out << i << ',' << j << ',' << format_double(weight) << '\n';
  }
}

}  // namespace rfuq
