#include "rfuq/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "rfuq/csv.hpp"
#include "rfuq/forest.hpp"
#include "rfuq/intervals.hpp"
#include "rfuq/metrics.hpp"
#include "rfuq/parallel.hpp"
#include "rfuq/proximity.hpp"
#include "rfuq/synthetic.hpp"
#include "rfuq/trust.hpp"

namespace fs = std::filesystem;

namespace rfuq {

namespace {

constexpr std::uint64_t kSplitStream = (1ull << 40) + 16;

const std::vector<std::string> kRegressionMethods = {"fire", "global-oob", "qrf",
                                                     "weighted-band"};
const std::vector<std::string> kClassificationMethods = {"ecr", "conformity", "proba-diff",
                                                         "tree-conformity"};

double parse_double(const std::string& key, const std::string& value) {
  char* end = nullptr;
  double v = std::strtod(value.c_str(), &end);
  if (end != value.c_str() + value.size() || value.empty())
    throw std::invalid_argument("config key '" + key + "': not a number: " + value);
  return v;
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
  char* end = nullptr;
  unsigned long long v = std::strtoull(value.c_str(), &end, 10);
  if (end != value.c_str() + value.size() || value.empty())
    throw std::invalid_argument("config key '" + key + "': not a count: " + value);
  return v;
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  std::string item;
  std::stringstream ss(value);
  while (std::getline(ss, item, ',')) {
    std::size_t b = item.find_first_not_of(" \t");
    std::size_t e = item.find_last_not_of(" \t");
    if (b == std::string::npos) continue;
    out.push_back(item.substr(b, e - b + 1));
  }
  return out;
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw std::invalid_argument("config key '" + key + "': not a boolean: " + value);
}

}  // namespace

void apply_config_entry(ExperimentConfig& c, const std::string& key, const std::string& value) {
  if (key == "task") {
    if (value == "regression")
      c.task = Task::regression;
    else if (value == "classification")
      c.task = Task::classification;
    else
      throw std::invalid_argument("config key 'task': must be regression or classification");
  } else if (key == "data") {
    c.data_path = value;
  } else if (key == "target") {
    c.target_column = value;
  } else if (key == "synthetic") {
    c.synthetic = value;
  } else if (key == "synthetic_n") {
    c.synthetic_n = parse_u64(key, value);
  } else if (key == "label_noise") {
    c.label_noise = parse_double(key, value);
  } else if (key == "test_fraction") {
    c.test_fraction = parse_double(key, value);
  } else if (key == "seeds" || key == "seed") {
    c.seeds.clear();
    for (const std::string& s : split_list(value)) c.seeds.push_back(parse_u64(key, s));
  } else if (key == "trees") {
    c.trees = parse_u64(key, value);
  } else if (key == "max_features") {
    c.max_features = parse_u64(key, value);
  } else if (key == "min_samples_leaf") {
    c.min_samples_leaf = parse_u64(key, value);
  } else if (key == "max_depth") {
    c.max_depth = parse_u64(key, value);
  } else if (key == "alpha") {
    c.target_coverage.clear();
    for (const std::string& s : split_list(value))
      c.target_coverage.push_back(1.0 - parse_double(key, s));
  } else if (key == "target_coverage") {
    c.target_coverage.clear();
    for (const std::string& s : split_list(value))
      c.target_coverage.push_back(parse_double(key, s));
  } else if (key == "k_mode") {
    c.k_mode = value;
  } else if (key == "k") {
    c.k = value == "n" ? 0 : parse_u64(key, value);
  } else if (key == "k_sweep") {
    c.k_sweep.clear();
    for (const std::string& s : split_list(value))
      c.k_sweep.push_back(s == "n" ? 0 : parse_u64(key, s));
  } else if (key == "conformity_k") {
    c.conformity_k = parse_u64(key, value);
  } else if (key == "lambda") {
    c.lambda = parse_double(key, value);
  } else if (key == "methods") {
    c.methods = split_list(value);
  } else if (key == "out_dir") {
    c.out_dir = value;
  } else if (key == "threads") {
    c.threads = parse_u64(key, value);
  } else if (key == "parallel_seeds") {
    c.parallel_seeds = parse_bool(key, value);
  } else if (key == "quantile_rule") {
    c.quantile_rule = value;
  } else {
    throw std::invalid_argument("unknown config key: " + key);
  }
}

ExperimentConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config: " + path);
  ExperimentConfig c;
  std::vector<std::string> unknown;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::size_t b = line.find_first_not_of(" \t");
    if (b == std::string::npos) continue;
    std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("config line " + std::to_string(line_no) + ": expected key = value");
    auto trim = [](std::string s) {
      std::size_t i = s.find_first_not_of(" \t");
      std::size_t j = s.find_last_not_of(" \t");
      return i == std::string::npos ? std::string() : s.substr(i, j - i + 1);
    };
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    try {
      apply_config_entry(c, key, value);
    } catch (const std::invalid_argument& e) {
      if (std::string(e.what()).rfind("unknown config key", 0) == 0)
        unknown.push_back(key);
      else
        throw;
    }
  }
  if (!unknown.empty()) {
    std::string msg = "unknown config keys:";
    for (const std::string& k : unknown) msg += " " + k;
    throw std::runtime_error(msg);
  }
  return c;
}

void validate_config(const ExperimentConfig& c) {
  if (!(c.test_fraction > 0.0 && c.test_fraction < 1.0))
    throw std::invalid_argument("test_fraction must be in (0,1)");
  if (c.seeds.empty()) throw std::invalid_argument("seed list must be nonempty");
  if (c.trees < 1) throw std::invalid_argument("trees must be >= 1");
  if (c.data_path.empty() == c.synthetic.empty())
    throw std::invalid_argument("exactly one of data/synthetic is required");
  if (!c.data_path.empty() && c.target_column.empty())
    throw std::invalid_argument("target column required for CSV data");
  for (double t : c.target_coverage)
    if (!(t > 0.0 && t < 1.0)) throw std::invalid_argument("coverage levels must be in (0,1)");
  if (c.k_mode != "dynamic" && c.k_mode != "fixed" && c.k_mode != "sweep")
    throw std::invalid_argument("k_mode must be dynamic, fixed or sweep");
  if (c.k_mode == "sweep" && c.k_sweep.empty())
    throw std::invalid_argument("k_sweep list required in sweep mode");
  if (c.k_mode == "sweep" && c.task != Task::regression)
    throw std::invalid_argument("sweep mode applies to regression only");
  if (c.conformity_k < 1) throw std::invalid_argument("conformity_k must be >= 1");
  if (c.lambda < 0.0) throw std::invalid_argument("lambda must be >= 0");
  if (c.quantile_rule != "linear" && c.quantile_rule != "nearest-rank")
    throw std::invalid_argument("quantile_rule must be linear or nearest-rank");
  const auto& valid =
      c.task == Task::regression ? kRegressionMethods : kClassificationMethods;
  for (const std::string& m : c.methods)
    if (std::find(valid.begin(), valid.end(), m) == valid.end())
      throw std::invalid_argument("unknown method for this task: " + m);
}

SplitIndices train_test_split(std::size_t n, double test_fraction, std::uint64_t seed) {
  if (!(test_fraction > 0.0 && test_fraction < 1.0))
    throw std::invalid_argument("test_fraction must be in (0,1)");
  std::size_t n_test =
      static_cast<std::size_t>(std::llround(test_fraction * static_cast<double>(n)));
  n_test = std::clamp<std::size_t>(n_test, 1, n - 2);  // train keeps >= 2 rows

  std::vector<std::uint32_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0u);
  RandomStream rng = RandomStream::derive(seed, kSplitStream);
  rng.shuffle(perm);

  SplitIndices si;
  si.test.assign(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(n_test));
  si.train.assign(perm.begin() + static_cast<std::ptrdiff_t>(n_test), perm.end());
  std::sort(si.test.begin(), si.test.end());
  std::sort(si.train.begin(), si.train.end());
  return si;
}

namespace {

struct SeedArtifacts {
  std::vector<IntervalReportRow> interval_rows;
  std::vector<TrustReportRow> trust_rows;
  std::vector<SummaryRecord> records;
};

struct PreparedData {
  Dataset train;
  Matrix test_features;
  std::vector<double> y_test;  // standardized for regression
  ResponseTransform transform;
  std::string dataset_name;
};

PreparedData prepare_data(const ExperimentConfig& c, std::uint64_t seed) {
  Dataset full;
  std::string name;
  if (!c.data_path.empty()) {
    full = load_csv(c.data_path, c.target_column, c.task);
    name = fs::path(c.data_path).filename().string();
  } else {
    full = make_synthetic(c.synthetic, c.synthetic_n, c.label_noise, seed);
    name = c.synthetic;
  }
  full.validate();

  SplitIndices si = train_test_split(full.n_rows(), c.test_fraction, seed);
  PreparedData out;
  out.dataset_name = name;
  out.train = subset(full, si.train);
  out.test_features = Matrix(si.test.size(), full.n_features());
  out.y_test.resize(si.test.size());
  for (std::size_t i = 0; i < si.test.size(); ++i) {
    auto src = full.features.row(si.test[i]);
    std::copy(src.begin(), src.end(), out.test_features.row(i).begin());
    out.y_test[i] = full.response[si.test[i]];
  }
  if (c.task == Task::regression) {
    out.transform = standardize_response(out.train);
    for (double& y : out.y_test) y = out.transform.apply(y);
  }
  return out;
}

std::vector<double> coverage_levels(const ExperimentConfig& c) {
  return c.target_coverage.empty() ? std::vector<double>{0.9} : c.target_coverage;
}

std::vector<std::string> active_methods(const ExperimentConfig& c) {
  if (!c.methods.empty()) return c.methods;
  return c.task == Task::regression ? kRegressionMethods : kClassificationMethods;
}

QuantileRule quantile_rule(const ExperimentConfig& c) {
  return c.quantile_rule == "nearest-rank" ? QuantileRule::nearest_rank
                                           : QuantileRule::linear_interpolation;
}

SeedArtifacts run_regression_seed(const ExperimentConfig& c, std::uint64_t seed) {
  PreparedData d = prepare_data(c, seed);
  ForestConfig fc{c.trees, c.max_features, c.min_samples_leaf, c.max_depth, seed, c.threads};
  Forest forest = train_forest(d.train, fc);
  ProximityMatrix w = rf_gap_test(forest, d.train, d.test_features);
  ResidualSet residuals = oob_residuals(forest, d.train);
  const QuantileRule rule = quantile_rule(c);
  const std::size_t n_test = d.test_features.rows();
  const std::size_t n_train = d.train.n_rows();

  std::vector<double> y_hat(n_test);
  for (std::size_t i = 0; i < n_test; ++i) y_hat[i] = predict(forest, d.test_features.row(i));

  SeedArtifacts out;
  auto emit = [&](const std::string& method, double target,
                  const std::vector<PredictionInterval>& ivs) {
    for (std::size_t i = 0; i < ivs.size(); ++i)
      out.interval_rows.push_back({seed, static_cast<std::uint32_t>(i), method, ivs[i].alpha,
                                   d.y_test[i], ivs[i].y_hat, ivs[i].lower, ivs[i].upper,
                                   ivs[i].k_used});
    SummaryRecord rec;
    rec.kind = "intervals";
    rec.dataset = d.dataset_name;
    rec.task = "regression";
    rec.seed = seed;
    rec.method = method;
    rec.n_train = n_train;
    rec.n_test = n_test;
    rec.trees = c.trees;
    rec.alpha = 1.0 - target;
    rec.target_coverage = target;
    rec.coverage = coverage(ivs, d.y_test);
    rec.mean_width = mean_width(ivs);
    if (*rec.mean_width > 0.0)
      rec.bis = bis({*rec.mean_width, *rec.coverage, target, c.lambda});
    if (method == "fire") {
      rec.k_mode = c.k_mode;
      if (c.k_mode == "fixed") rec.k = c.k == 0 ? n_train : c.k;
    }
    rec.y_mean = d.transform.mean;
    rec.y_sd = d.transform.sd;
    out.records.push_back(std::move(rec));
  };

  if (c.k_mode == "sweep") {
    for (std::size_t k_raw : c.k_sweep) {
      const std::size_t k_val = k_raw == 0 ? n_train : std::min(k_raw, n_train);
      for (double target : coverage_levels(c)) {
        const double alpha = 1.0 - target;
        const std::size_t k_min = default_k_min(alpha);
        std::vector<PredictionInterval> ivs(n_test);
        parallel_for(n_test, c.threads, [&](std::size_t i) {
          auto neighbors = select_neighbors(w.rows[i], residuals, k_val, k_min);
          ivs[i] = fire_interval(y_hat[i], local_distribution(neighbors, residuals), alpha, rule);
        });
        SummaryRecord rec;
        rec.kind = "sweep";
        rec.dataset = d.dataset_name;
        rec.task = "regression";
        rec.seed = seed;
        rec.method = "fire";
        rec.n_train = n_train;
        rec.n_test = n_test;
        rec.trees = c.trees;
        rec.alpha = alpha;
        rec.target_coverage = target;
        rec.coverage = coverage(ivs, d.y_test);
        rec.mean_width = mean_width(ivs);
        if (*rec.mean_width > 0.0)
          rec.bis = bis({*rec.mean_width, *rec.coverage, target, c.lambda});
        rec.k_mode = "fixed";
        rec.k = k_val;
        out.records.push_back(std::move(rec));
      }
    }
    return out;
  }

  for (double target : coverage_levels(c)) {
    const double alpha = 1.0 - target;
    const std::size_t k_min = default_k_min(alpha);
    for (const std::string& method : active_methods(c)) {
      std::vector<PredictionInterval> ivs(n_test);
      if (method == "fire") {
        std::optional<std::size_t> k;
        if (c.k_mode == "fixed") k = c.k == 0 ? n_train : c.k;
        parallel_for(n_test, c.threads, [&](std::size_t i) {
          auto neighbors = select_neighbors(w.rows[i], residuals, k, k_min);
          ivs[i] = fire_interval(y_hat[i], local_distribution(neighbors, residuals), alpha, rule);
        });
      } else if (method == "global-oob") {
        for (std::size_t i = 0; i < n_test; ++i)
          ivs[i] = global_oob_interval(y_hat[i], residuals, alpha, rule);
      } else if (method == "qrf") {
        parallel_for(n_test, c.threads, [&](std::size_t i) {
          auto x = d.test_features.row(i);
          PredictionInterval iv;
          iv.y_hat = y_hat[i];
          iv.lower = qrf_quantile(forest, d.train, x, alpha / 2.0);
          iv.upper = qrf_quantile(forest, d.train, x, 1.0 - alpha / 2.0);
          iv.alpha = alpha;
          iv.method = IntervalMethod::qrf;
          ivs[i] = iv;
        });
      } else {  // weighted-band
        for (std::size_t i = 0; i < n_test; ++i) {
          ivs[i] = weighted_error_band(y_hat[i], w.rows[i], residuals, LossKind::absolute);
          ivs[i].alpha = alpha;  // grouped with this level in reports
        }
      }
      emit(method, target, ivs);
    }
  }
  return out;
}

SeedArtifacts run_classification_seed(const ExperimentConfig& c, std::uint64_t seed) {
  PreparedData d = prepare_data(c, seed);
  ForestConfig fc{c.trees, c.max_features, c.min_samples_leaf, c.max_depth, seed, c.threads};
  Forest forest = train_forest(d.train, fc);
  ProximityMatrix w = rf_gap_test(forest, d.train, d.test_features);
  MisclassificationVector e = misclassification_vector(forest, d.train);
  const std::size_t n_test = d.test_features.rows();
  const std::size_t n_classes = d.train.n_classes();

  std::vector<int> forest_pred(n_test);
  std::vector<std::uint8_t> correct(n_test);
  for (std::size_t i = 0; i < n_test; ++i) {
    forest_pred[i] = static_cast<int>(predict(forest, d.test_features.row(i)));
    correct[i] = forest_pred[i] == static_cast<int>(d.y_test[i]) ? 1 : 0;
  }

  SeedArtifacts out;
  for (const std::string& method : active_methods(c)) {
    std::vector<double> scores(n_test, 0.0);
    std::vector<std::uint8_t> defined(n_test, 1);
    std::vector<int> method_pred = forest_pred;

    if (method == "ecr") {
      EcrScores ecr = ecr_scores(w, e);
      scores = ecr.scores;
      defined = ecr.defined;
    } else if (method == "conformity") {
      parallel_for(n_test, c.threads, [&](std::size_t i) {
        auto [cls, score] =
            conformity_predict(w.rows[i], d.train.response, n_classes, c.conformity_k);
        method_pred[i] = cls;
        scores[i] = score;
      });
    } else if (method == "proba-diff") {
      parallel_for(n_test, c.threads,
                   [&](std::size_t i) { scores[i] = proba_diff(forest, d.test_features.row(i)); });
    } else {  // tree-conformity
      parallel_for(n_test, c.threads, [&](std::size_t i) {
        scores[i] = tree_conformity(forest, d.test_features.row(i));
      });
    }

    std::vector<double> used_scores;
    std::vector<std::uint8_t> used_correct;
    for (std::size_t i = 0; i < n_test; ++i) {
      out.trust_rows.push_back({seed, static_cast<std::uint32_t>(i), method,
                                static_cast<int>(d.y_test[i]), method_pred[i], scores[i],
                                defined[i] != 0, correct[i] != 0, true});
      if (defined[i]) {
        used_scores.push_back(scores[i]);
        used_correct.push_back(correct[i]);
      }
    }

    SummaryRecord rec;
    rec.kind = "trust";
    rec.dataset = d.dataset_name;
    rec.task = "classification";
    rec.seed = seed;
    rec.method = method;
    rec.n_train = d.train.n_rows();
    rec.n_test = n_test;
    rec.trees = c.trees;
    if (!used_scores.empty()) {
      AccuracyRejectionCurve curve = accuracy_rejection_curve(used_scores, used_correct);
      rec.auc = ar_auc(curve);
      rec.accuracy = curve.accuracy.front();
    }
    out.records.push_back(std::move(rec));
  }
  return out;
}

}  // namespace

BenchmarkOutput run_benchmark(const ExperimentConfig& c) {
  validate_config(c);
  fs::create_directories(c.out_dir);

  std::vector<SeedArtifacts> per_seed(c.seeds.size());
  auto run_one = [&](std::size_t s) {
    per_seed[s] = c.task == Task::regression ? run_regression_seed(c, c.seeds[s])
                                             : run_classification_seed(c, c.seeds[s]);
  };
  if (c.parallel_seeds) {
    parallel_for(c.seeds.size(), resolve_thread_count(0), run_one);
  } else {
    for (std::size_t s = 0; s < c.seeds.size(); ++s) run_one(s);
  }

  BenchmarkOutput out;
  auto write_file = [&](const std::string& name, auto&& writer) {
    std::ofstream f(fs::path(c.out_dir) / name);
    if (!f) throw std::runtime_error("cannot write " + name + " in " + c.out_dir);
    writer(f);
    out.files.push_back(name);
  };

  // Results merge in seed order, so parallel_seeds never changes the bytes.
  for (std::size_t s = 0; s < c.seeds.size(); ++s) {
    SeedArtifacts& art = per_seed[s];
    if (!art.interval_rows.empty())
      write_file("intervals_seed" + std::to_string(c.seeds[s]) + ".csv",
                 [&](std::ostream& f) { write_interval_rows_csv(f, art.interval_rows); });
    if (!art.trust_rows.empty())
      write_file("trust_seed" + std::to_string(c.seeds[s]) + ".csv",
                 [&](std::ostream& f) { write_trust_rows_csv(f, art.trust_rows); });
    for (SummaryRecord& r : art.records) out.records.push_back(std::move(r));
  }

  write_file("summary.json", [&](std::ostream& f) { write_summary_json(f, out.records); });
  write_file("summary.csv", [&](std::ostream& f) { write_summary_csv(f, out.records); });
  write_file("report_schema.json", [&](std::ostream& f) { f << report_schema_json(); });
  return out;
}

namespace {

// Minimal reader for the CSV reports this library writes.
std::vector<std::vector<std::string>> read_csv_rows(const std::string& path,
                                                    std::vector<std::string>& header) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path);
  std::vector<std::vector<std::string>> rows;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string f;
    while (std::getline(ss, f, ',')) fields.push_back(f);
    if (line.back() == ',') fields.push_back("");
    if (first) {
      header = fields;
      first = false;
    } else {
      rows.push_back(fields);
    }
  }
  return rows;
}

std::size_t column_of(const std::vector<std::string>& header, const std::string& name,
                      const std::string& path) {
  auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end())
    throw std::runtime_error(path + ": missing column '" + name + "'");
  return static_cast<std::size_t>(it - header.begin());
}

}  // namespace

std::vector<SummaryRecord> evaluate_intervals_file(const std::string& path, double lambda,
                                                   std::optional<double> target_override) {
  std::vector<std::string> header;
  auto rows = read_csv_rows(path, header);
  std::size_t c_seed = column_of(header, "seed", path);
  std::size_t c_method = column_of(header, "method", path);
  std::size_t c_alpha = column_of(header, "alpha", path);
  std::size_t c_true = column_of(header, "y_true", path);
  std::size_t c_lower = column_of(header, "lower", path);
  std::size_t c_upper = column_of(header, "upper", path);

  std::map<std::tuple<std::uint64_t, std::string, std::string>,
           std::pair<std::vector<PredictionInterval>, std::vector<double>>>
      groups;
  for (const auto& r : rows) {
    PredictionInterval iv;
    iv.alpha = std::stod(r[c_alpha]);
    iv.lower = std::stod(r[c_lower]);
    iv.upper = std::stod(r[c_upper]);
    auto& g = groups[{std::stoull(r[c_seed]), r[c_method], r[c_alpha]}];
    g.first.push_back(iv);
    g.second.push_back(std::stod(r[c_true]));
  }

  std::vector<SummaryRecord> records;
  for (auto& [key, g] : groups) {
    SummaryRecord rec;
    rec.kind = "intervals";
    rec.dataset = fs::path(path).filename().string();
    rec.task = "regression";
    rec.seed = std::get<0>(key);
    rec.method = std::get<1>(key);
    rec.n_test = g.first.size();
    rec.alpha = g.first.front().alpha;
    double target = target_override ? *target_override : 1.0 - *rec.alpha;
    rec.target_coverage = target;
    rec.coverage = coverage(g.first, g.second);
    rec.mean_width = mean_width(g.first);
    if (*rec.mean_width > 0.0) rec.bis = bis({*rec.mean_width, *rec.coverage, target, lambda});
    records.push_back(std::move(rec));
  }
  return records;
}

std::vector<SummaryRecord> evaluate_trust_file(const std::string& path) {
  std::vector<std::string> header;
  auto rows = read_csv_rows(path, header);
  std::size_t c_seed = column_of(header, "seed", path);
  std::size_t c_method = column_of(header, "method", path);
  std::size_t c_score = column_of(header, "score", path);
  std::size_t c_correct = column_of(header, "correct", path);

  std::map<std::pair<std::uint64_t, std::string>,
           std::pair<std::vector<double>, std::vector<std::uint8_t>>>
      groups;
  for (const auto& r : rows) {
    if (r[c_score].empty()) continue;  // undefined score rows are excluded
    auto& g = groups[{std::stoull(r[c_seed]), r[c_method]}];
    g.first.push_back(std::stod(r[c_score]));
    g.second.push_back(r[c_correct] == "1" ? 1 : 0);
  }

  std::vector<SummaryRecord> records;
  for (auto& [key, g] : groups) {
    SummaryRecord rec;
    rec.kind = "trust";
    rec.dataset = fs::path(path).filename().string();
    rec.task = "classification";
    rec.seed = key.first;
    rec.method = key.second;
    rec.n_test = g.first.size();
    AccuracyRejectionCurve curve = accuracy_rejection_curve(g.first, g.second);
    rec.auc = ar_auc(curve);
    rec.accuracy = curve.accuracy.front();
    records.push_back(std::move(rec));
  }
  return records;
}

}  // namespace rfuq
