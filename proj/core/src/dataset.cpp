#include "rfuq/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rfuq {

void Dataset::validate() const {
  if (n_rows() < 2) throw std::invalid_argument("dataset needs at least 2 rows");
  if (n_features() < 1) throw std::invalid_argument("dataset needs at least 1 feature");
  if (response.size() != n_rows())
    throw std::invalid_argument("response length does not match feature rows");
  if (!feature_names.empty() && feature_names.size() != n_features())
    throw std::invalid_argument("feature_names length does not match feature columns");
  for (double v : features.data())
    if (!std::isfinite(v)) throw std::invalid_argument("non-finite feature value");
  for (double y : response)
    if (!std::isfinite(y)) throw std::invalid_argument("non-finite response value");
  if (task == Task::classification) {
    if (class_labels.size() < 2)
      throw std::invalid_argument("classification needs at least 2 class labels");
    std::vector<bool> seen(class_labels.size(), false);
    for (std::size_t i = 0; i < n_rows(); ++i) {
      double y = response[i];
      int c = static_cast<int>(y);
      if (y != static_cast<double>(c) || c < 0 || static_cast<std::size_t>(c) >= class_labels.size())
        throw std::invalid_argument("class index out of range");
      seen[static_cast<std::size_t>(c)] = true;
    }
    if (!std::all_of(seen.begin(), seen.end(), [](bool b) { return b; }))
      throw std::invalid_argument("class indices are not a dense 0..C-1 set");
  }
}

Dataset subset(const Dataset& d, const std::vector<std::uint32_t>& rows) {
  Dataset out;
  out.task = d.task;
  out.feature_names = d.feature_names;
  out.class_labels = d.class_labels;
  out.features = Matrix(rows.size(), d.n_features());
  out.response.resize(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    auto src = d.features.row(rows[i]);
    std::copy(src.begin(), src.end(), out.features.row(i).begin());
    out.response[i] = d.response[rows[i]];
  }
  return out;
}

ResponseTransform standardize_response(Dataset& d) {
  if (d.task != Task::regression)
    throw std::invalid_argument("standardize_response applies to regression only");
  const std::size_t n = d.response.size();
  if (n == 0) throw std::invalid_argument("empty response");
  auto [mn, mx] = std::minmax_element(d.response.begin(), d.response.end());
  if (*mn == *mx) throw std::invalid_argument("constant response cannot be standardized");

  double mean = 0.0;
  for (double y : d.response) mean += y;
  mean /= static_cast<double>(n);
  double var = 0.0;
  for (double y : d.response) var += (y - mean) * (y - mean);
  var /= static_cast<double>(n);  // population variance
  double sd = std::sqrt(var);
  if (!(sd > 0.0)) throw std::invalid_argument("zero response variance");

  ResponseTransform t{mean, sd};
  for (double& y : d.response) y = t.apply(y);
  return t;
}

}  // namespace rfuq
