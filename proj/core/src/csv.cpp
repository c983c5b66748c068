#include "rfuq/csv.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <stdexcept>
#include <unordered_map>

namespace rfuq {

namespace {

std::vector<std::string> split_csv_line(const std::string& line, std::size_t line_no) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else {
      field += c;
    }
  }
  if (quoted)
    throw std::runtime_error("unterminated quote at line " + std::to_string(line_no));
  fields.push_back(std::move(field));
  return fields;
}

bool is_missing(const std::string& s) {
  return s.empty() || s == "NA" || s == "NaN" || s == "nan" || s == "?";
}

bool parse_number(const std::string& s, double& out) {
  const char* begin = s.c_str();
  char* end = nullptr;
  out = std::strtod(begin, &end);
  return end == begin + s.size() && !s.empty();
}

}  // namespace

Dataset load_csv(const std::string& path, const std::string& target_column, Task task) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path);

  std::string line;
  std::size_t line_no = 0;
  auto next_line = [&](std::string& out) {
    if (!std::getline(in, out)) return false;
    ++line_no;
    if (!out.empty() && out.back() == '\r') out.pop_back();
    return true;
  };

  if (!next_line(line)) throw std::runtime_error("empty file: " + path);
  std::vector<std::string> header = split_csv_line(line, line_no);
  auto target_it = std::find(header.begin(), header.end(), target_column);
  if (target_it == header.end())
    throw std::runtime_error("target column not found: " + target_column);
  const std::size_t target_idx = static_cast<std::size_t>(target_it - header.begin());
  const std::size_t n_cols = header.size();

  std::vector<std::vector<std::string>> cells;  // column-major
  cells.resize(n_cols);
  while (next_line(line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields = split_csv_line(line, line_no);
    if (fields.size() != n_cols)
      throw std::runtime_error("expected " + std::to_string(n_cols) + " fields, got " +
                               std::to_string(fields.size()) + " at line " +
                               std::to_string(line_no));
    for (std::size_t c = 0; c < n_cols; ++c) {
      if (is_missing(fields[c]))
        throw std::runtime_error("missing value in column '" + header[c] + "' at line " +
                                 std::to_string(line_no));
      cells[c].push_back(std::move(fields[c]));
    }
  }
  const std::size_t n = cells.empty() ? 0 : cells[0].size();
  if (n < 2) throw std::runtime_error("need at least 2 data rows: " + path);

  // A column is numeric iff every cell parses as a double.
  std::vector<std::uint8_t> numeric(n_cols, 1);
  std::vector<std::vector<double>> parsed(n_cols);
  for (std::size_t c = 0; c < n_cols; ++c) {
    parsed[c].resize(n);
    for (std::size_t r = 0; r < n; ++r) {
      if (!parse_number(cells[c][r], parsed[c][r])) {
        numeric[c] = 0;
        break;
      }
    }
  }

  Dataset d;
  d.task = task;

  // Columns of the encoded feature matrix, built column by column.
  std::vector<std::vector<double>> feature_cols;
  for (std::size_t c = 0; c < n_cols; ++c) {
    if (c == target_idx) continue;
    if (numeric[c]) {
      feature_cols.push_back(parsed[c]);
      d.feature_names.push_back(header[c]);
    } else {
      // One-hot: one indicator per level, first-appearance order.
      std::vector<std::string> levels;
      std::unordered_map<std::string, std::size_t> level_of;
      for (std::size_t r = 0; r < n; ++r) {
        if (level_of.emplace(cells[c][r], levels.size()).second) levels.push_back(cells[c][r]);
      }
      std::size_t base = feature_cols.size();
      for (const std::string& lv : levels) {
        feature_cols.emplace_back(n, 0.0);
        d.feature_names.push_back(header[c] + "=" + lv);
      }
      for (std::size_t r = 0; r < n; ++r)
        feature_cols[base + level_of[cells[c][r]]][r] = 1.0;
    }
  }

  d.features = Matrix(n, feature_cols.size());
  for (std::size_t c = 0; c < feature_cols.size(); ++c)
    for (std::size_t r = 0; r < n; ++r) d.features(r, c) = feature_cols[c][r];

  if (task == Task::regression) {
    if (!numeric[target_idx])
      throw std::runtime_error("regression target '" + target_column + "' is not numeric");
    d.response = parsed[target_idx];
  } else {
    std::unordered_map<std::string, std::size_t> class_of;
    d.response.resize(n);
    for (std::size_t r = 0; r < n; ++r) {
      auto [it, inserted] = class_of.emplace(cells[target_idx][r], d.class_labels.size());
      if (inserted) d.class_labels.push_back(cells[target_idx][r]);
      d.response[r] = static_cast<double>(it->second);
    }
  }

  d.validate();
  return d;
}

}  // namespace rfuq
