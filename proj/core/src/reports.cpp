#include "rfuq/reports.hpp"

#include <ostream>
#include <stdexcept>

#include <json.hpp>

#include "src/number_format.hpp"

namespace rfuq {

using nlohmann::json;

std::string interval_method_name(IntervalMethod m) {
  switch (m) {
    case IntervalMethod::fire: return "fire";
    case IntervalMethod::global_oob: return "global-oob";
    case IntervalMethod::qrf: return "qrf";
    case IntervalMethod::weighted_band: return "weighted-band";
  }
  throw std::logic_error("unknown interval method");
}

void write_interval_rows_csv(std::ostream& out, std::span<const IntervalReportRow> rows) {
  out << "seed,instance,method,alpha,y_true,y_pred,lower,upper,k_used\n";
  for (const IntervalReportRow& r : rows) {
    out << r.seed << ',' << r.instance << ',' << r.method << ',' << format_double(r.alpha) << ','
        << format_double(r.y_true) << ',' << format_double(r.y_pred) << ','
        << format_double(r.lower) << ',' << format_double(r.upper) << ',' << r.k_used << '\n';
  }
}

void write_trust_rows_csv(std::ostream& out, std::span<const TrustReportRow> rows) {
  out << "seed,instance,method,y_true,predicted_class,score,correct,classifiable\n";
  for (const TrustReportRow& r : rows) {
    out << r.seed << ',' << r.instance << ',' << r.method << ',' << r.y_true << ','
        << r.predicted_class << ',';
    if (r.score_defined) out << format_double(r.score);
    out << ',' << (r.correct ? 1 : 0) << ',' << (r.classifiable ? 1 : 0) << '\n';
  }
}

namespace {

json record_to_json(const SummaryRecord& r) {
  json j;
  j["schema_version"] = kReportSchemaVersion;
  j["kind"] = r.kind;
  j["dataset"] = r.dataset;
  j["task"] = r.task;
  j["seed"] = r.seed;
  j["method"] = r.method;
  j["n_train"] = r.n_train;
  j["n_test"] = r.n_test;
  j["trees"] = r.trees;
  if (r.alpha) j["alpha"] = *r.alpha;
  if (r.target_coverage) j["target_coverage"] = *r.target_coverage;
  if (r.coverage) j["coverage"] = *r.coverage;
  if (r.mean_width) j["mean_width"] = *r.mean_width;
  if (r.bis) j["bis"] = *r.bis;
  if (r.auc) j["auc"] = *r.auc;
  if (r.accuracy) j["accuracy"] = *r.accuracy;
  if (r.k_mode) j["k_mode"] = *r.k_mode;
  if (r.k) j["k"] = *r.k;
  if (r.y_mean) j["y_mean"] = *r.y_mean;
  if (r.y_sd) j["y_sd"] = *r.y_sd;
  return j;
}

// Kept in one place so the emitted records, the published schema file and
// the validator cannot drift apart.
const char* const kReportSchema = R"({
  "$schema": "http://json-schema.org/draft-07/schema#",
  "title": "rfuq summary record",
  "type": "object",
  "required": ["schema_version", "kind", "dataset", "task", "seed", "method", "n_train", "n_test", "trees"],
  "additionalProperties": false,
  "properties": {
    "schema_version": {"type": "integer", "const": 1},
    "kind": {"type": "string", "enum": ["intervals", "trust", "sweep"]},
    "dataset": {"type": "string"},
    "task": {"type": "string", "enum": ["regression", "classification"]},
    "seed": {"type": "integer"},
    "method": {"type": "string"},
    "n_train": {"type": "integer"},
    "n_test": {"type": "integer"},
    "trees": {"type": "integer"},
    "alpha": {"type": "number"},
    "target_coverage": {"type": "number"},
    "coverage": {"type": "number"},
    "mean_width": {"type": "number"},
    "bis": {"type": "number"},
    "auc": {"type": "number"},
    "accuracy": {"type": "number"},
    "k_mode": {"type": "string", "enum": ["dynamic", "fixed"]},
    "k": {"type": "integer"},
    "y_mean": {"type": "number"},
    "y_sd": {"type": "number"}
  }
})";

// Minimal structural validator covering the subset the schema uses:
// type, enum, const, required, properties, additionalProperties.
void validate_against(const json& schema, const json& value, const std::string& where,
                      std::vector<std::string>& errors) {
  if (schema.contains("type")) {
    const std::string t = schema["type"].get<std::string>();
    bool ok = (t == "object" && value.is_object()) || (t == "string" && value.is_string()) ||
              (t == "integer" && value.is_number_integer()) ||
              (t == "number" && value.is_number()) || (t == "boolean" && value.is_boolean());
    if (!ok) {
      errors.push_back(where + ": expected type " + t);
      return;
    }
  }
  if (schema.contains("const") && value != schema["const"])
    errors.push_back(where + ": value != const " + schema["const"].dump());
  if (schema.contains("enum")) {
    bool found = false;
    for (const auto& e : schema["enum"])
      if (e == value) found = true;
    if (!found) errors.push_back(where + ": value " + value.dump() + " not in enum");
  }
  if (!value.is_object()) return;
  if (schema.contains("required"))
    for (const auto& req : schema["required"])
      if (!value.contains(req.get<std::string>()))
        errors.push_back(where + ": missing required field " + req.get<std::string>());
  const json props = schema.value("properties", json::object());
  for (const auto& [key, sub] : value.items()) {
    if (props.contains(key)) {
      validate_against(props[key], sub, where + "." + key, errors);
    } else if (schema.value("additionalProperties", json(true)) == json(false)) {
      errors.push_back(where + ": unexpected field " + key);
    }
  }
}

}  // namespace

void write_summary_json(std::ostream& out, std::span<const SummaryRecord> records) {
  json arr = json::array();
  for (const SummaryRecord& r : records) arr.push_back(record_to_json(r));
  out << arr.dump(2) << "\n";
}

void write_summary_csv(std::ostream& out, std::span<const SummaryRecord> records) {
  out << "kind,dataset,task,seed,method,n_train,n_test,trees,alpha,target_coverage,"
         "coverage,mean_width,bis,auc,accuracy,k_mode,k\n";
  auto opt = [](const std::optional<double>& v) { return v ? format_double(*v) : std::string(); };
  for (const SummaryRecord& r : records) {
    out << r.kind << ',' << r.dataset << ',' << r.task << ',' << r.seed << ',' << r.method << ','
        << r.n_train << ',' << r.n_test << ',' << r.trees << ',' << opt(r.alpha) << ','
        << opt(r.target_coverage) << ',' << opt(r.coverage) << ',' << opt(r.mean_width) << ','
        << opt(r.bis) << ',' << opt(r.auc) << ',' << opt(r.accuracy) << ','
        << (r.k_mode ? *r.k_mode : std::string()) << ','
        << (r.k ? std::to_string(*r.k) : std::string()) << '\n';
  }
}

const std::string& report_schema_json() {
  static const std::string schema = json::parse(kReportSchema).dump(2) + "\n";
  return schema;
}

std::vector<std::string> validate_summary_json(std::istream& in) {
  std::vector<std::string> errors;
  json doc;
  try {
    doc = json::parse(in);
  } catch (const std::exception& e) {
    errors.push_back(std::string("parse error: ") + e.what());
    return errors;
  }
  if (!doc.is_array()) {
    errors.push_back("document is not an array of records");
    return errors;
  }
  const json schema = json::parse(kReportSchema);
  for (std::size_t i = 0; i < doc.size(); ++i)
    validate_against(schema, doc[i], "record[" + std::to_string(i) + "]", errors);
  return errors;
}

}  // namespace rfuq
