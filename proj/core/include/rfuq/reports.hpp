#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rfuq/intervals.hpp"

namespace rfuq {

inline constexpr int kReportSchemaVersion = 1;

std::string interval_method_name(IntervalMethod m);

// One per-instance interval result, in the units of the run (the benchmark
// standardizes responses; y_mean/y_sd in the summary map back).
struct IntervalReportRow {
  std::uint64_t seed = 0;
  std::uint32_t instance = 0;
  std::string method;
  double alpha = 0.0;
  double y_true = 0.0;
  double y_pred = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  std::size_t k_used = 0;
};

struct TrustReportRow {
  std::uint64_t seed = 0;
  std::uint32_t instance = 0;
  std::string method;
  int y_true = 0;
  int predicted_class = 0;
  double score = 0.0;
  bool score_defined = true;  // emitted as an empty field when false
  bool correct = false;       // forest prediction == y_true
  bool classifiable = true;   // score >= user cutoff
};

// One evaluation record per (seed, method, coverage level). Optional fields
// are present only where they apply; the JSON schema marks them all.
struct SummaryRecord {
  std::string kind;  // intervals | trust | sweep
  std::string dataset;
  std::string task;
  std::uint64_t seed = 0;
  std::string method;
  std::size_t n_train = 0;
  std::size_t n_test = 0;
  std::size_t trees = 0;
  std::optional<double> alpha;
  std::optional<double> target_coverage;
  std::optional<double> coverage;
  std::optional<double> mean_width;
  std::optional<double> bis;
  std::optional<double> auc;
  std::optional<double> accuracy;
  std::optional<std::string> k_mode;
  std::optional<std::size_t> k;
  std::optional<double> y_mean;
  std::optional<double> y_sd;
};

void write_interval_rows_csv(std::ostream& out, std::span<const IntervalReportRow> rows);
void write_trust_rows_csv(std::ostream& out, std::span<const TrustReportRow> rows);

void write_summary_json(std::ostream& out, std::span<const SummaryRecord> records);
void write_summary_csv(std::ostream& out, std::span<const SummaryRecord> records);

// The published JSON schema all summary records validate against.
const std::string& report_schema_json();

// Validates a summary.json document (array of records) against the embedded
// schema. Returns one message per violation; empty means valid.
std::vector<std::string> validate_summary_json(std::istream& in);

}  // namespace rfuq
