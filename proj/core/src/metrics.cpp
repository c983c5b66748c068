#include "rfuq/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace rfuq {

double coverage(std::span<const PredictionInterval> intervals, std::span<const double> y_true) {
  if (intervals.size() != y_true.size())
    throw std::invalid_argument("coverage: intervals and truths differ in length");
  if (intervals.empty()) throw std::invalid_argument("coverage: empty input");
  std::size_t hit = 0;
  for (std::size_t i = 0; i < intervals.size(); ++i)
    if (intervals[i].lower <= y_true[i] && y_true[i] <= intervals[i].upper) ++hit;
  return static_cast<double>(hit) / static_cast<double>(intervals.size());
}

double mean_width(std::span<const PredictionInterval> intervals) {
  if (intervals.empty()) throw std::invalid_argument("mean_width: empty input");
  double sum = 0.0;
  for (const PredictionInterval& iv : intervals) sum += iv.width();
  return sum / static_cast<double>(intervals.size());
}

double bis(const BisInput& input) {
  if (!(input.width > 0.0)) throw std::invalid_argument("bis: width must be > 0");
  if (!(input.target_coverage > 0.0 && input.target_coverage < 1.0))
    throw std::invalid_argument("bis: target_coverage outside (0,1)");
  if (!(input.coverage >= 0.0 && input.coverage <= 1.0))
    throw std::invalid_argument("bis: coverage outside [0,1]");
  if (input.lambda < 0.0) throw std::invalid_argument("bis: lambda must be >= 0");
  double deviation = std::abs(input.coverage - input.target_coverage);
  return 1.0 / (input.width * (1.0 + input.lambda * deviation));
}

AccuracyRejectionCurve accuracy_rejection_curve(std::span<const double> scores,
                                                std::span<const std::uint8_t> correct) {
  if (scores.size() != correct.size())
    throw std::invalid_argument("accuracy_rejection_curve: length mismatch");
  if (scores.empty()) throw std::invalid_argument("accuracy_rejection_curve: empty input");

  const std::size_t n = scores.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (scores[a] != scores[b]) return scores[a] < scores[b];
    return a < b;
  });

  std::size_t total_correct = 0;
  for (std::uint8_t c : correct) total_correct += c;

  AccuracyRejectionCurve curve;
  std::size_t rejected = 0;
  std::size_t rejected_correct = 0;
  std::size_t pos = 0;
  while (true) {
    std::size_t retained = n - rejected;
    if (retained < 1) break;
    curve.rejection.push_back(static_cast<double>(rejected) / static_cast<double>(n));
    curve.accuracy.push_back(static_cast<double>(total_correct - rejected_correct) /
                             static_cast<double>(retained));
    if (pos >= n) break;
    // Reject the next tie group atomically.
    double threshold = scores[order[pos]];
    while (pos < n && scores[order[pos]] == threshold) {
      rejected_correct += correct[order[pos]];
      ++rejected;
      ++pos;
    }
  }
  return curve;
}

double ar_auc(const AccuracyRejectionCurve& curve) {
  if (curve.rejection.empty()) throw std::invalid_argument("ar_auc: empty curve");
  double r_max = curve.r_max();
  if (r_max == 0.0) return curve.accuracy[0];
  double area = 0.0;
  for (std::size_t i = 0; i + 1 < curve.rejection.size(); ++i) {
    double dr = curve.rejection[i + 1] - curve.rejection[i];
    area += dr * (curve.accuracy[i] + curve.accuracy[i + 1]) / 2.0;
  }
  return area / r_max;
}

}  // namespace rfuq
