#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "rfuq/forest.hpp"
#include "rfuq/proximity.hpp"

namespace rfuq {

// e_j = 1 iff the OOB prediction for training instance j equals its label.
struct MisclassificationVector {
  std::vector<std::uint8_t> correct;
  std::vector<std::uint8_t> defined;  // false where the instance was never OOB
};

MisclassificationVector misclassification_vector(const Forest& forest, const Dataset& data);

// RF-ICE expected classification rate: score_i = sum_j w_ij e_j with weights
// renormalized over defined entries of e. In [0,1]; undefined when every
// neighbor lacks an OOB prediction.
struct EcrScores {
  std::vector<double> scores;
  std::vector<std::uint8_t> defined;
};

EcrScores ecr_scores(const ProximityMatrix& w, const MisclassificationVector& e);

inline constexpr double kConformityEpsilon = 1e-12;  // denominator floor

// RF-ICE conformity: sum of the k largest weights toward class cls divided by
// the sum of the k largest weights toward all other classes (plus epsilon).
// Sides with fewer than k candidates sum what exists.
double conformity_ratio(std::span<const ProximityMatrix::Entry> row,
                        std::span<const double> labels, std::size_t k, int cls,
                        double epsilon = kConformityEpsilon);

// Evaluates the ratio for every class; the predicted class is the argmax
// (lowest index wins ties) and the score is the winning ratio.
std::pair<int, double> conformity_predict(std::span<const ProximityMatrix::Entry> row,
                                          std::span<const double> labels, std::size_t n_classes,
                                          std::size_t k, double epsilon = kConformityEpsilon);

// Difference between the two largest averaged class probabilities.
double proba_diff(const Forest& forest, std::span<const double> x);

// Fraction of trees whose own argmax matches the forest prediction.
double tree_conformity(const Forest& forest, std::span<const double> x);

}  // namespace rfuq
