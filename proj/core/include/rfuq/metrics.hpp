#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "rfuq/intervals.hpp"

namespace rfuq {

// Fraction of instances with lower_i <= y_i <= upper_i.
double coverage(std::span<const PredictionInterval> intervals, std::span<const double> y_true);

double mean_width(std::span<const PredictionInterval> intervals);

struct BisInput {
  double width = 0.0;            // mean interval width, > 0
  double coverage = 0.0;         // empirical rate in [0,1]
  double target_coverage = 0.0;  // in (0,1)
  double lambda = 1.0;           // >= 0; 1 weighs width and coverage equally
};

// Balanced interval score: 1 / (width * (1 + lambda * |coverage - target|)).
// High only for narrow, well-calibrated intervals.
double bis(const BisInput& input);

// Accuracy on retained instances as ever-lower-scoring instances are
// rejected. rejection[0] = 0 carries the overall accuracy; equal scores are
// rejected atomically; the curve stops while at least one instance remains.
struct AccuracyRejectionCurve {
  std::vector<double> rejection;
  std::vector<double> accuracy;

  double r_max() const { return rejection.empty() ? 0.0 : rejection.back(); }
};

AccuracyRejectionCurve accuracy_rejection_curve(std::span<const double> scores,
                                                std::span<const std::uint8_t> correct);

// Trapezoidal area over [0, r_max], normalized by r_max so curves with
// different tie structure stay comparable. A single-point curve returns its
// accuracy.
double ar_auc(const AccuracyRejectionCurve& curve);

}  // namespace rfuq
