#include "rfuq/intervals.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rfuq {

std::size_t ResidualSet::defined_count() const {
  std::size_t c = 0;
  for (std::uint8_t d : defined) c += d;
  return c;
}

ResidualSet oob_residuals(const Forest& forest, const Dataset& data) {
  if (forest.task() != Task::regression)
    throw std::invalid_argument("oob_residuals: regression forest required");
  OobPredictions oob = oob_predict(forest, data);
  ResidualSet r;
  r.values.assign(data.n_rows(), 0.0);
  r.defined = oob.defined;
  for (std::size_t i = 0; i < data.n_rows(); ++i)
    if (r.defined[i]) r.values[i] = data.response[i] - oob.values[i];
  return r;
}

std::size_t default_k_min(double alpha) {
  return std::max<std::size_t>(20, static_cast<std::size_t>(std::ceil(2.0 / alpha)));
}

std::vector<std::uint32_t> select_neighbors(std::span<const ProximityMatrix::Entry> row,
                                            const ResidualSet& residuals,
                                            std::optional<std::size_t> k, std::size_t k_min) {
  const std::size_t n = residuals.values.size();
  const std::size_t total_defined = residuals.defined_count();
  if (total_defined < std::max<std::size_t>(k_min, 1))
    throw std::runtime_error("select_neighbors: fewer than k_min defined residuals available");

  std::vector<ProximityMatrix::Entry> ranked;
  ranked.reserve(row.size());
  for (const auto& e : row)
    if (e.second > 0.0 && residuals.defined[e.first]) ranked.push_back(e);
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });

  std::size_t want = k ? std::max(*k, k_min) : std::max(ranked.size(), k_min);
  want = std::min(want, total_defined);

  std::vector<std::uint32_t> out;
  out.reserve(want);
  std::vector<std::uint8_t> taken(n, 0);
  for (const auto& e : ranked) {
    if (out.size() == want) break;
    out.push_back(e.first);
    taken[e.first] = 1;
  }
  // Row exhausted before reaching k or k_min: pad with the remaining defined
  // indices (weight zero, ascending index).
  for (std::uint32_t j = 0; out.size() < want && j < n; ++j)
    if (residuals.defined[j] && !taken[j]) out.push_back(j);
  return out;
}

LocalDistribution local_distribution(const std::vector<std::uint32_t>& neighbors,
                                     const ResidualSet& residuals) {
  LocalDistribution d;
  d.sources = neighbors;
  d.residuals.reserve(neighbors.size());
  for (std::uint32_t j : neighbors) {
    if (!residuals.defined[j])
      throw std::invalid_argument("local_distribution: neighbor without defined residual");
    d.residuals.push_back(residuals.values[j]);
  }
  std::sort(d.residuals.begin(), d.residuals.end());
  return d;
}

double empirical_quantile(std::span<const double> sorted, double gamma, QuantileRule rule) {
  if (sorted.empty()) throw std::invalid_argument("empirical_quantile: empty sample");
  if (!(gamma >= 0.0 && gamma <= 1.0))
    throw std::invalid_argument("empirical_quantile: gamma outside [0,1]");
  const std::size_t m = sorted.size();
  if (m == 1) return sorted[0];

  if (rule == QuantileRule::nearest_rank) {
    std::size_t rank = static_cast<std::size_t>(std::ceil(gamma * static_cast<double>(m)));
    if (rank == 0) rank = 1;
    if (rank > m) rank = m;
    return sorted[rank - 1];
  }

  double h = static_cast<double>(m - 1) * gamma;  // 0-based position
  std::size_t lo = static_cast<std::size_t>(h);
  if (lo >= m - 1) return sorted[m - 1];
  double frac = h - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

PredictionInterval fire_interval(double y_hat, const LocalDistribution& local, double alpha,
                                 QuantileRule rule) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument("fire_interval: alpha outside (0,1)");
  if (local.residuals.empty()) throw std::invalid_argument("fire_interval: empty distribution");

  PredictionInterval iv;
  iv.y_hat = y_hat;
  iv.lower = y_hat + empirical_quantile(local.residuals, alpha / 2.0, rule);
  iv.upper = y_hat + empirical_quantile(local.residuals, 1.0 - alpha / 2.0, rule);
  iv.alpha = alpha;
  iv.k_used = local.residuals.size();
  iv.method = IntervalMethod::fire;
  return iv;
}

PredictionInterval global_oob_interval(double y_hat, const ResidualSet& residuals, double alpha,
                                       QuantileRule rule) {
  LocalDistribution all;
  for (std::size_t j = 0; j < residuals.values.size(); ++j) {
    if (residuals.defined[j]) {
      all.residuals.push_back(residuals.values[j]);
      all.sources.push_back(static_cast<std::uint32_t>(j));
    }
  }
  std::sort(all.residuals.begin(), all.residuals.end());
  PredictionInterval iv = fire_interval(y_hat, all, alpha, rule);
  iv.method = IntervalMethod::global_oob;
  return iv;
}

PredictionInterval weighted_error_band(double y_hat, std::span<const ProximityMatrix::Entry> row,
                                       const ResidualSet& residuals, LossKind loss) {
  double weight_sum = 0.0;
  for (const auto& [j, w] : row)
    if (residuals.defined[j]) weight_sum += w;

  double band = 0.0;
  std::size_t used = 0;
  if (weight_sum > 0.0) {
    for (const auto& [j, w] : row) {
      if (!residuals.defined[j]) continue;
      double r = residuals.values[j];
      double l = loss == LossKind::absolute ? std::abs(r) : r * r;
      band += (w / weight_sum) * l;
      ++used;
    }
  }

  PredictionInterval iv;
  iv.y_hat = y_hat;
  iv.lower = y_hat - band;
  iv.upper = y_hat + band;
  iv.alpha = 0.0;
  iv.k_used = used;
  iv.method = IntervalMethod::weighted_band;
  return iv;
}

double qrf_quantile(const Forest& forest, const Dataset& train_data, std::span<const double> x,
                    double gamma) {
  if (forest.task() != Task::regression)
    throw std::invalid_argument("qrf_quantile: regression forest required");
  if (!(gamma >= 0.0 && gamma <= 1.0))
    throw std::invalid_argument("qrf_quantile: gamma outside [0,1]");
  if (train_data.n_rows() != forest.n_train())
    throw std::invalid_argument("qrf_quantile: training data does not match the forest");

  const std::size_t n = forest.n_train();
  std::vector<double> u(n, 0.0);
  for (const Tree& tree : forest.trees()) {
    const TreeNode& leaf = tree.leaf(x);
    const double inv_m = 1.0 / static_cast<double>(leaf.member_weight);
    for (const LeafMember& m : leaf.members) u[m.index] += static_cast<double>(m.count) * inv_m;
  }
  const double inv_b = 1.0 / static_cast<double>(forest.trees().size());

  std::vector<std::pair<double, std::uint32_t>> weighted;  // (response, index)
  for (std::uint32_t j = 0; j < n; ++j)
    if (u[j] > 0.0) weighted.emplace_back(train_data.response[j], j);
  std::sort(weighted.begin(), weighted.end());

  double cum = 0.0;
  for (const auto& [y, j] : weighted) {
    cum += u[j] * inv_b;
    if (cum >= gamma) return y;
  }
  return weighted.back().first;  // gamma ~ 1 with accumulated rounding
}

}  // namespace rfuq
