#pragma once

#include <string>
#include <vector>

#include "rfuq/types.hpp"

namespace rfuq {

// A fully numeric learning problem. Categorical features must already be
// one-hot encoded (see csv.hpp); classification responses are dense class
// indices 0..C-1 stored as doubles.
struct Dataset {
  Matrix features;
  std::vector<double> response;
  Task task = Task::regression;
  std::vector<std::string> feature_names;
  std::vector<std::string> class_labels;  // classification only

  std::size_t n_rows() const { return features.rows(); }
  std::size_t n_features() const { return features.cols(); }
  std::size_t n_classes() const { return class_labels.size(); }

  int label(std::size_t i) const { return static_cast<int>(response[i]); }

  // Throws std::invalid_argument on any structural violation: fewer than two
  // rows, zero features, non-finite values, or non-dense class indices.
  void validate() const;
};

// Row subset in the given order; keeps metadata.
Dataset subset(const Dataset& d, const std::vector<std::uint32_t>& rows);

struct ResponseTransform {
  double mean = 0.0;
  double sd = 1.0;

  double apply(double y) const { return (y - mean) / sd; }
  double invert(double z) const { return z * sd + mean; }
};

// Centers and rescales a regression response to zero mean and unit variance
// (population sd). Returns the transform so reports can map interval bounds
// back to original units. Throws on classification tasks or constant response.
ResponseTransform standardize_response(Dataset& d);

}  // namespace rfuq
