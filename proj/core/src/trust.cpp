#include "rfuq/trust.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace rfuq {

MisclassificationVector misclassification_vector(const Forest& forest, const Dataset& data) {
  if (forest.task() != Task::classification)
    throw std::invalid_argument("misclassification_vector: classification forest required");
  OobPredictions oob = oob_predict(forest, data);
  MisclassificationVector e;
  e.defined = oob.defined;
  e.correct.assign(data.n_rows(), 0);
  for (std::size_t j = 0; j < data.n_rows(); ++j)
    if (e.defined[j] && data.label(j) == static_cast<int>(oob.values[j])) e.correct[j] = 1;
  return e;
}

EcrScores ecr_scores(const ProximityMatrix& w, const MisclassificationVector& e) {
  if (e.correct.size() != w.n_cols)
    throw std::invalid_argument("ecr_scores: vector length != proximity columns");
  EcrScores out;
  out.scores.assign(w.n_rows(), 0.0);
  out.defined.assign(w.n_rows(), 0);
  for (std::size_t i = 0; i < w.n_rows(); ++i) {
    if (!w.row_defined(i)) continue;
    double mass = 0.0;
    double hit = 0.0;
    for (const auto& [j, weight] : w.rows[i]) {
      if (!e.defined[j]) continue;
      mass += weight;
      if (e.correct[j]) hit += weight;
    }
    if (mass == 0.0) continue;  // all neighbors undefined: surfaced as missing
    out.scores[i] = hit / mass;
    out.defined[i] = 1;
  }
  return out;
}

namespace {

// Sum of the k largest values, or of everything when fewer exist.
double top_k_sum(std::vector<double>& values, std::size_t k) {
  if (values.size() > k) {
    std::partial_sort(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(k),
                      values.end(), std::greater<>());
    values.resize(k);
  }
  double s = 0.0;
  for (double v : values) s += v;
  return s;
}

}  // namespace

double conformity_ratio(std::span<const ProximityMatrix::Entry> row,
                        std::span<const double> labels, std::size_t k, int cls, double epsilon) {
  if (k < 1) throw std::invalid_argument("conformity_ratio: k must be >= 1");
  bool class_present = false;
  for (double y : labels)
    if (static_cast<int>(y) == cls) {
      class_present = true;
      break;
    }
  if (!class_present) throw std::invalid_argument("conformity_ratio: class absent from labels");

  std::vector<double> same, other;
  for (const auto& [j, weight] : row) {
    if (static_cast<int>(labels[j]) == cls)
      same.push_back(weight);
    else
      other.push_back(weight);
  }
  return top_k_sum(same, k) / (top_k_sum(other, k) + epsilon);
}

std::pair<int, double> conformity_predict(std::span<const ProximityMatrix::Entry> row,
                                          std::span<const double> labels, std::size_t n_classes,
                                          std::size_t k, double epsilon) {
  if (n_classes < 2) throw std::invalid_argument("conformity_predict: need >= 2 classes");
  int best_class = 0;
  double best_ratio = conformity_ratio(row, labels, k, 0, epsilon);
  for (std::size_t c = 1; c < n_classes; ++c) {
    double ratio = conformity_ratio(row, labels, k, static_cast<int>(c), epsilon);
    if (ratio > best_ratio) {
      best_ratio = ratio;
      best_class = static_cast<int>(c);
    }
  }
  return {best_class, best_ratio};
}

double proba_diff(const Forest& forest, std::span<const double> x) {
  if (forest.task() != Task::classification)
    throw std::invalid_argument("proba_diff: classification forest required");
  std::vector<double> mass = forest.class_mass(x);
  double top1 = 0.0, top2 = 0.0;
  for (double m : mass) {
    if (m > top1) {
      top2 = top1;
      top1 = m;
    } else if (m > top2) {
      top2 = m;
    }
  }
  return top1 - top2;
}

double tree_conformity(const Forest& forest, std::span<const double> x) {
  if (forest.task() != Task::classification)
    throw std::invalid_argument("tree_conformity: classification forest required");
  int forest_class = static_cast<int>(predict(forest, x));
  std::size_t agree = 0;
  for (const Tree& t : forest.trees())
    if (static_cast<int>(t.leaf(x).prediction) == forest_class) ++agree;
  return static_cast<double>(agree) / static_cast<double>(forest.trees().size());
}

}  // namespace rfuq
