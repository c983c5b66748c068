#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "rfuq/forest.hpp"
#include "rfuq/proximity.hpp"

namespace rfuq {

// Signed OOB residuals r_i = y_i - yhat_i^OOB; defined only where the
// instance was OOB in at least one tree.
struct ResidualSet {
  std::vector<double> values;
  std::vector<std::uint8_t> defined;

  std::size_t defined_count() const;
};

ResidualSet oob_residuals(const Forest& forest, const Dataset& data);

// Sorted residual sample backing one test point's interval.
struct LocalDistribution {
  std::vector<double> residuals;        // ascending
  std::vector<std::uint32_t> sources;   // contributing training indices
};

// Neighborhood for one proximity row. Dynamic mode (k = nullopt) takes every
// index with positive weight and a defined residual; fixed k takes the k
// largest-weight such indices, ties broken by ascending index. Either way the
// result is padded up to k_min with the next best defined indices. Throws if
// the training set has fewer than k_min defined residuals in total.
std::vector<std::uint32_t> select_neighbors(std::span<const ProximityMatrix::Entry> row,
                                            const ResidualSet& residuals,
                                            std::optional<std::size_t> k, std::size_t k_min);

LocalDistribution local_distribution(const std::vector<std::uint32_t>& neighbors,
                                     const ResidualSet& residuals);

// Quantile tails need a resolvable sample; 20 keeps alpha = 0.1 meaningful.
std::size_t default_k_min(double alpha);

enum class QuantileRule { linear_interpolation, nearest_rank };

// Empirical quantile on a sorted sample. linear_interpolation places gamma at
// position (m-1)*gamma + 1 (1-based) and interpolates between neighbors;
// nearest_rank takes the ceil(gamma*m)-th order statistic.
double empirical_quantile(std::span<const double> sorted, double gamma, QuantileRule rule);

enum class IntervalMethod { fire, global_oob, qrf, weighted_band };

struct PredictionInterval {
  double y_hat = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  double alpha = 0.0;
  std::size_t k_used = 0;
  IntervalMethod method = IntervalMethod::fire;

  double width() const { return upper - lower; }
};

// RF-FIRE: [yhat + q_{alpha/2}(D), yhat + q_{1-alpha/2}(D)] over the signed
// local residual distribution D.
PredictionInterval fire_interval(double y_hat, const LocalDistribution& local, double alpha,
                                 QuantileRule rule = QuantileRule::linear_interpolation);

// Same construction over the full defined residual set: constant width across
// test points. Bit-identical to fire_interval with k = n.
PredictionInterval global_oob_interval(double y_hat, const ResidualSet& residuals, double alpha,
                                       QuantileRule rule = QuantileRule::linear_interpolation);

enum class LossKind { absolute, squared };

// Symmetric proximity-weighted error band yhat +- sum_i w_i L(r_i), weights
// renormalized over defined residuals. Carries no coverage guarantee.
PredictionInterval weighted_error_band(double y_hat, std::span<const ProximityMatrix::Entry> row,
                                       const ResidualSet& residuals, LossKind loss);

// Quantile regression forest estimate: smallest response whose cumulative
// weight under u_j = (1/B) sum_t c_j(t)/|leaf_t(x)| reaches gamma.
double qrf_quantile(const Forest& forest, const Dataset& train_data, std::span<const double> x,
                    double gamma);

}  // namespace rfuq
