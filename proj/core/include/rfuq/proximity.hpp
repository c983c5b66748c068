#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "rfuq/forest.hpp"

namespace rfuq {

// Sparse row-stochastic RF-GAP weights. Rows are query instances, columns
// training instances. For train-train matrices the diagonal is exactly zero
// and rows of never-OOB instances are omitted (listed in skipped_rows)
// rather than emitted as zeros.
struct ProximityMatrix {
  enum class Kind { train_train, test_train };
  using Entry = std::pair<std::uint32_t, double>;  // (column, weight), ascending column

  Kind kind = Kind::train_train;
  std::size_t n_cols = 0;
  std::vector<std::vector<Entry>> rows;
  std::vector<std::uint32_t> skipped_rows;  // ascending; train-train only

  std::size_t n_rows() const { return rows.size(); }
  bool row_defined(std::size_t i) const {
    return !std::binary_search(skipped_rows.begin(), skipped_rows.end(),
                               static_cast<std::uint32_t>(i));
  }
  // Ascending-column summation, reproducible bit for bit.
  double row_sum(std::size_t i) const {
    double s = 0.0;
    for (const Entry& e : rows[i]) s += e.second;
    return s;
  }
};

// Train-train RF-GAP proximities:
//   w_ij = (1/|S_i|) sum_{t in S_i} I(x_j in J_i(t)) * c_j(t) / |M_i(t)|
// with S_i the trees where i is OOB, J_i(t) the in-bag multiset sharing i's
// leaf and c_j(t) the bootstrap multiplicity. w_ii = 0 falls out of c_i = 0.
ProximityMatrix rf_gap_train(const Forest& forest, const Dataset& data);

// Test-train proximities: same formula with S = all trees, since a test
// point is in no bootstrap sample.
ProximityMatrix rf_gap_test(const Forest& forest, const Dataset& train_data,
                            const Matrix& test_features);

struct ReconstructedPredictions {
  std::vector<double> values;
  std::vector<std::uint8_t> defined;
};

// Proximity-weighted prediction: yhat_i = sum_j w_ij y_j for regression, or
// the class with the largest weighted vote mass (lowest index wins ties).
// Reproduces forest OOB/test predictions up to summation order.
ReconstructedPredictions reconstruct_predictions(const ProximityMatrix& w,
                                                 std::span<const double> responses, Task task,
                                                 std::size_t n_classes = 0);

// "row,col,weight" CSV; skipped rows are absent.
void write_triplets(const ProximityMatrix& w, std::ostream& out);

}  // namespace rfuq
