#include <doctest.h>

#include <stdexcept>

#include <algorithm>
#include <cmath>

#include "rfuq/intervals.hpp"
#include "rfuq/synthetic.hpp"
#include "test_helpers.hpp"

using namespace rfuq;

namespace {

// Independent sort-and-interpolate quantile oracle (1-based position
// (m-1)*gamma + 1).
double quantile_oracle(std::vector<double> sample, double gamma) {
  std::sort(sample.begin(), sample.end());
  double pos = static_cast<double>(sample.size() - 1) * gamma;  // 0-based
  auto lo = static_cast<std::size_t>(std::floor(pos));
  auto hi = static_cast<std::size_t>(std::ceil(pos));
  if (hi >= sample.size()) hi = sample.size() - 1;
  return sample[lo] + (pos - std::floor(pos)) * (sample[hi] - sample[lo]);
}

ResidualSet residuals_from(std::vector<double> values) {
  ResidualSet r;
  r.defined.assign(values.size(), 1);
  r.values = std::move(values);
  return r;
}

}  // namespace

TEST_CASE("oob residuals subtract the oob predictions") {
  Dataset d = testing::linear_regression_data(30, 2, 3);
  ForestConfig c;
  c.n_trees = 60;
  c.seed = 4;
  Forest f = train_forest(d, c);
  ResidualSet r = oob_residuals(f, d);
  OobPredictions oob = oob_predict(f, d);
  for (std::size_t i = 0; i < 30; ++i) {
    REQUIRE(r.defined[i] == oob.defined[i]);
    if (r.defined[i]) CHECK(r.values[i] == d.response[i] - oob.values[i]);
  }
}

TEST_CASE("constant response yields all-zero residuals") {
  Dataset d;
  d.task = Task::regression;
  d.features = Matrix(15, 1);
  for (int i = 0; i < 15; ++i) d.features(static_cast<std::size_t>(i), 0) = i;
  d.response.assign(15, 2.0);
  ForestConfig c;
  c.n_trees = 30;
  c.seed = 6;
  Forest f = train_forest(d, c);
  ResidualSet r = oob_residuals(f, d);
  for (std::size_t i = 0; i < 15; ++i)
    if (r.defined[i]) CHECK(r.values[i] == 0.0);
}

TEST_CASE("residual defined mask equals the ever-OOB mask") {
  Dataset d = testing::linear_regression_data(40, 2, 5);
  ForestConfig c;
  c.n_trees = 3;
  c.seed = 8;
  Forest f = train_forest(d, c);
  ResidualSet r = oob_residuals(f, d);
  for (std::size_t i = 0; i < 40; ++i) {
    bool ever_oob = false;
    for (const Tree& t : f.trees())
      if (t.bootstrap.counts[i] == 0) ever_oob = true;
    CHECK(static_cast<bool>(r.defined[i]) == ever_oob);
  }
}

TEST_CASE("dynamic selection keeps exactly the positive-weight defined indices") {
  ResidualSet r = residuals_from(std::vector<double>(12, 0.5));
  std::vector<ProximityMatrix::Entry> row = {{0, .1}, {2, .2}, {3, .1}, {5, .3},
                                             {7, .1}, {9, .1}, {11, .1}};
  auto sel = select_neighbors(row, r, std::nullopt, 1);
  std::sort(sel.begin(), sel.end());
  CHECK(sel == std::vector<std::uint32_t>{0, 2, 3, 5, 7, 9, 11});
}

TEST_CASE("fixed k ranks by weight with ascending-index ties") {
  ResidualSet r = residuals_from(std::vector<double>(9, 1.0));
  std::vector<ProximityMatrix::Entry> row = {{1, .1}, {2, .5}, {5, .3}, {8, .1}};
  auto sel = select_neighbors(row, r, 3, 1);
  std::sort(sel.begin(), sel.end());
  CHECK(sel == std::vector<std::uint32_t>{1, 2, 5});  // tie at .1 -> index 1 beats 8
}

TEST_CASE("fixed k=n returns every defined index") {
  ResidualSet r = residuals_from({1, 2, 3, 4, 5, 6});
  r.defined[4] = 0;
  std::vector<ProximityMatrix::Entry> row = {{0, .9}, {1, .1}};
  auto sel = select_neighbors(row, r, 6, 1);
  std::sort(sel.begin(), sel.end());
  CHECK(sel == std::vector<std::uint32_t>{0, 1, 2, 3, 5});
}

TEST_CASE("selection pads up to k_min with zero-weight defined indices") {
  ResidualSet r = residuals_from(std::vector<double>(10, 0.0));
  std::vector<ProximityMatrix::Entry> row = {{6, .7}, {8, .3}};
  auto sel = select_neighbors(row, r, std::nullopt, 5);
  REQUIRE(sel.size() == 5);
  CHECK(sel[0] == 6);  // by weight
  CHECK(sel[1] == 8);
  CHECK(sel[2] == 0);  // then ascending
  CHECK(sel[3] == 1);
  CHECK(sel[4] == 2);
}

TEST_CASE("undefined residuals are never selected") {
  ResidualSet r = residuals_from(std::vector<double>(6, 0.0));
  r.defined[2] = 0;
  std::vector<ProximityMatrix::Entry> row = {{2, .9}, {3, .1}};
  auto sel = select_neighbors(row, r, std::nullopt, 2);
  for (std::uint32_t j : sel) CHECK(j != 2);
}

TEST_CASE("too few defined residuals in the training set is an error") {
  ResidualSet r = residuals_from(std::vector<double>(5, 0.0));
  for (std::size_t i = 0; i < 4; ++i) r.defined[i] = 0;
  std::vector<ProximityMatrix::Entry> row = {{4, 1.0}};
  CHECK_THROWS_AS(select_neighbors(row, r, std::nullopt, 20), std::runtime_error);
}

TEST_CASE("linear-interpolation quantile matches the oracle") {
  std::vector<double> sample = {-3, -1, 0, 1, 3};
  for (double g : {0.0, 0.1, 0.2, 0.25, 0.5, 0.8, 0.9, 1.0}) {
    CHECK(empirical_quantile(sample, g, QuantileRule::linear_interpolation) ==
          doctest::Approx(quantile_oracle(sample, g)).epsilon(1e-15));
  }
}

TEST_CASE("nearest-rank quantile takes the ceil(gamma*m)-th order statistic") {
  std::vector<double> sample = {1, 2, 3, 4};
  CHECK(empirical_quantile(sample, 0.5, QuantileRule::nearest_rank) == 2);
  CHECK(empirical_quantile(sample, 0.51, QuantileRule::nearest_rank) == 3);
  CHECK(empirical_quantile(sample, 1.0, QuantileRule::nearest_rank) == 4);
  CHECK(empirical_quantile(sample, 0.0, QuantileRule::nearest_rank) == 1);
}

TEST_CASE("quantile is nondecreasing in gamma") {
  RandomStream rng(99);
  for (int rep = 0; rep < 20; ++rep) {
    std::vector<double> sample(1 + rng.uniform_index(40));
    for (double& v : sample) v = rng.normal();
    std::sort(sample.begin(), sample.end());
    double prev = empirical_quantile(sample, 0.0, QuantileRule::linear_interpolation);
    for (double g = 0.05; g <= 1.0; g += 0.05) {
      double q = empirical_quantile(sample, g, QuantileRule::linear_interpolation);
      CHECK(q >= prev);
      prev = q;
    }
  }
}

TEST_CASE("fire interval adds the signed residual quantiles") {
  LocalDistribution local;
  local.residuals = {-3, -1, 0, 1, 3};
  PredictionInterval iv = fire_interval(10.0, local, 0.4);
  CHECK(iv.lower == doctest::Approx(10.0 + quantile_oracle(local.residuals, 0.2)));
  CHECK(iv.upper == doctest::Approx(10.0 + quantile_oracle(local.residuals, 0.8)));
  CHECK(iv.lower == doctest::Approx(8.6));
  CHECK(iv.upper == doctest::Approx(11.4));
  CHECK(iv.k_used == 5);
  CHECK(iv.lower <= iv.upper);
}

TEST_CASE("all-zero residuals give a degenerate interval") {
  LocalDistribution local;
  local.residuals = {0, 0, 0, 0};
  PredictionInterval iv = fire_interval(5.5, local, 0.1);
  CHECK(iv.lower == 5.5);
  CHECK(iv.upper == 5.5);
}

TEST_CASE("alpha outside (0,1) is rejected") {
  LocalDistribution local;
  local.residuals = {0.0, 1.0};
  CHECK_THROWS_AS(fire_interval(0, local, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(fire_interval(0, local, 1.0), std::invalid_argument);
}

TEST_CASE("fire with k=n is bitwise equal to the global interval") {
  Dataset d = testing::linear_regression_data(80, 2, 9);
  ForestConfig c;
  c.n_trees = 50;
  c.seed = 10;
  Forest f = train_forest(d, c);
  ResidualSet res = oob_residuals(f, d);
  const std::size_t n = 80;

  Matrix test(5, 2);
  RandomStream rng(1);
  for (std::size_t i = 0; i < 5; ++i) {
    test(i, 0) = rng.uniform();
    test(i, 1) = rng.uniform();
  }
  ProximityMatrix w = rf_gap_test(f, d, test);
  for (std::size_t i = 0; i < 5; ++i) {
    double y_hat = predict(f, test.row(i));
    auto neighbors = select_neighbors(w.rows[i], res, n, default_k_min(0.2));
    PredictionInterval fire = fire_interval(y_hat, local_distribution(neighbors, res), 0.2);
    PredictionInterval global = global_oob_interval(y_hat, res, 0.2);
    CHECK(fire.lower == global.lower);  // exactly: same sorted sample, same path
    CHECK(fire.upper == global.upper);
  }
}

TEST_CASE("global intervals have constant width across test points") {
  Dataset d = testing::linear_regression_data(60, 2, 11);
  ForestConfig c;
  c.n_trees = 40;
  c.seed = 13;
  Forest f = train_forest(d, c);
  ResidualSet res = oob_residuals(f, d);
  PredictionInterval a = global_oob_interval(1.0, res, 0.1);
  PredictionInterval b = global_oob_interval(-7.0, res, 0.1);
  CHECK(a.width() == b.width());
}

TEST_CASE("weighted band with one unit-weight neighbor spans the loss") {
  ResidualSet r = residuals_from({0.0, -2.0});
  std::vector<ProximityMatrix::Entry> row = {{1, 1.0}};
  PredictionInterval iv = weighted_error_band(5.0, row, r, LossKind::absolute);
  CHECK(iv.lower == 3.0);
  CHECK(iv.upper == 7.0);
  CHECK(iv.method == IntervalMethod::weighted_band);
}

TEST_CASE("weighted band matches a dot-product oracle") {
  RandomStream rng(17);
  ResidualSet r = residuals_from(std::vector<double>(10, 0.0));
  for (double& v : r.values) v = rng.normal();
  std::vector<ProximityMatrix::Entry> row;
  double total = 0.0;
  for (std::uint32_t j = 0; j < 10; j += 2) {
    double w = rng.uniform() + 0.01;
    row.push_back({j, w});
    total += w;
  }
  double expected = 0.0;
  for (const auto& [j, w] : row) expected += (w / total) * std::abs(r.values[j]);
  PredictionInterval iv = weighted_error_band(2.0, row, r, LossKind::absolute);
  CHECK(iv.upper - 2.0 == doctest::Approx(expected).epsilon(1e-14));

  double expected_sq = 0.0;
  for (const auto& [j, w] : row) expected_sq += (w / total) * r.values[j] * r.values[j];
  PredictionInterval sq = weighted_error_band(2.0, row, r, LossKind::squared);
  CHECK(sq.upper - 2.0 == doctest::Approx(expected_sq).epsilon(1e-14));
}

TEST_CASE("weighted band is degenerate iff defined neighbor losses vanish") {
  ResidualSet r = residuals_from({0.0, 0.0, 3.0});
  r.defined[2] = 0;  // the only nonzero residual does not count
  std::vector<ProximityMatrix::Entry> row = {{0, .5}, {1, .2}, {2, .3}};
  PredictionInterval iv = weighted_error_band(1.0, row, r, LossKind::absolute);
  CHECK(iv.width() == 0.0);

  r.defined[2] = 1;
  PredictionInterval iv2 = weighted_error_band(1.0, row, r, LossKind::absolute);
  CHECK(iv2.width() > 0.0);
}

TEST_CASE("qrf on a constant response returns the constant") {
  Dataset d;
  d.task = Task::regression;
  d.features = Matrix(20, 1);
  for (int i = 0; i < 20; ++i) d.features(static_cast<std::size_t>(i), 0) = i;
  d.response.assign(20, 1.5);
  ForestConfig c;
  c.n_trees = 10;
  c.seed = 19;
  Forest f = train_forest(d, c);
  for (double g : {0.0, 0.3, 0.5, 0.9, 1.0})
    CHECK(qrf_quantile(f, d, std::vector<double>{4.0}, g) == 1.5);
}

TEST_CASE("qrf matches a brute-force weighted-CDF oracle") {
  Dataset d = testing::linear_regression_data(20, 2, 23);
  ForestConfig c;
  c.n_trees = 10;
  c.seed = 29;
  Forest f = train_forest(d, c);
  std::vector<double> x = {0.4, 0.6};

  // Explicit enumeration: weight u_j = (1/B) sum_t c_j(t) / |leaf_t(x)|.
  std::vector<double> u(20, 0.0);
  for (const Tree& t : f.trees()) {
    const TreeNode& leaf = testing::walk_to_leaf(t, x);
    for (const LeafMember& m : leaf.members)
      u[m.index] += static_cast<double>(m.count) / static_cast<double>(leaf.member_weight);
  }
  for (double& v : u) v /= 10.0;

  std::vector<std::pair<double, double>> cdf;  // (response, weight)
  for (std::size_t j = 0; j < 20; ++j)
    if (u[j] > 0) cdf.emplace_back(d.response[j], u[j]);
  std::sort(cdf.begin(), cdf.end());

  for (double g : {0.0, 0.1, 0.25, 0.5, 0.75, 0.9, 1.0}) {
    double cum = 0.0;
    double expected = cdf.back().first;
    for (const auto& [y, w] : cdf) {
      cum += w;
      if (cum >= g) {
        expected = y;
        break;
      }
    }
    CHECK(qrf_quantile(f, d, x, g) == expected);
  }
}

TEST_CASE("qrf gamma=0 returns the smallest positively weighted response") {
  Dataset d = testing::linear_regression_data(25, 1, 31);
  ForestConfig c;
  c.n_trees = 8;
  c.seed = 37;
  Forest f = train_forest(d, c);
  std::vector<double> x = {0.5};
  double q0 = qrf_quantile(f, d, x, 0.0);

  const TreeNode* some_leaf = &testing::walk_to_leaf(f.trees()[0], x);
  double smallest = d.response[some_leaf->members[0].index];
  for (const Tree& t : f.trees()) {
    const TreeNode& leaf = testing::walk_to_leaf(t, x);
    for (const LeafMember& m : leaf.members) smallest = std::min(smallest, d.response[m.index]);
  }
  CHECK(q0 == smallest);
}

TEST_CASE("default k_min covers the quantile tails") {
  CHECK(default_k_min(0.1) == 20);
  CHECK(default_k_min(0.5) == 20);
  CHECK(default_k_min(0.01) == 200);  // ceil(2/alpha) dominates
}
