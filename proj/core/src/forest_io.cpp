#include "rfuq/forest_io.hpp"

#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace rfuq {

namespace {

using nlohmann::json;

json node_to_json(const TreeNode& n) {
  json j;
  if (n.is_leaf()) {
    j["p"] = n.prediction;
    json members = json::array();
    for (const LeafMember& m : n.members) members.push_back({m.index, m.count});
    j["m"] = std::move(members);
    if (!n.class_mass.empty()) j["cm"] = n.class_mass;
  } else {
    j["f"] = n.feature;
    j["t"] = n.threshold;
    j["l"] = n.left;
    j["r"] = n.right;
  }
  return j;
}

TreeNode node_from_json(const json& j) {
  TreeNode n;
  if (j.contains("f")) {
    n.feature = j.at("f").get<std::int32_t>();
    n.threshold = j.at("t").get<double>();
    n.left = j.at("l").get<std::int32_t>();
    n.right = j.at("r").get<std::int32_t>();
  } else {
    n.prediction = j.at("p").get<double>();
    std::uint64_t weight = 0;
    for (const auto& m : j.at("m")) {
      n.members.push_back({m.at(0).get<std::uint32_t>(), m.at(1).get<std::uint32_t>()});
      weight += n.members.back().count;
    }
    n.member_weight = static_cast<std::uint32_t>(weight);
    if (j.contains("cm")) n.class_mass = j.at("cm").get<std::vector<double>>();
  }
  return n;
}

}  // namespace

void save_forest(const Forest& forest, std::ostream& out) {
  json j;
  j["format"] = "rfuq-forest";
  j["version"] = kForestFormatVersion;
  j["task"] = forest.task() == Task::regression ? "regression" : "classification";
  j["n_train"] = forest.n_train();
  j["n_features"] = forest.n_features();
  j["n_classes"] = forest.n_classes();
  const ForestConfig& c = forest.config();
  j["config"] = {{"n_trees", c.n_trees},
                 {"max_features", c.max_features},
                 {"min_samples_leaf", c.min_samples_leaf},
                 {"max_depth", c.max_depth},
                 {"seed", c.seed},
                 {"thread_count", c.thread_count}};
  json trees = json::array();
  for (const Tree& t : forest.trees()) {
    json jt;
    jt["counts"] = t.bootstrap.counts;
    json nodes = json::array();
    for (const TreeNode& n : t.nodes) nodes.push_back(node_to_json(n));
    jt["nodes"] = std::move(nodes);
    trees.push_back(std::move(jt));
  }
  j["trees"] = std::move(trees);
  out << j << "\n";
}

void save_forest(const Forest& forest, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  save_forest(forest, out);
}

Forest load_forest(std::istream& in) {
  json j = json::parse(in);
  if (j.value("format", "") != std::string("rfuq-forest"))
    throw std::runtime_error("not an rfuq forest file");
  if (j.at("version").get<int>() != kForestFormatVersion)
    throw std::runtime_error("unsupported forest format version");

  Task task = j.at("task").get<std::string>() == "classification" ? Task::classification
                                                                  : Task::regression;
  const auto& jc = j.at("config");
  ForestConfig config;
  config.n_trees = jc.at("n_trees").get<std::size_t>();
  config.max_features = jc.at("max_features").get<std::size_t>();
  config.min_samples_leaf = jc.at("min_samples_leaf").get<std::size_t>();
  config.max_depth = jc.at("max_depth").get<std::size_t>();
  config.seed = jc.at("seed").get<std::uint64_t>();
  config.thread_count = jc.at("thread_count").get<std::size_t>();

  std::vector<Tree> trees;
  for (const auto& jt : j.at("trees")) {
    Tree t;
    t.bootstrap.counts = jt.at("counts").get<std::vector<std::uint32_t>>();
    for (std::uint32_t idx = 0; idx < t.bootstrap.counts.size(); ++idx) {
      if (t.bootstrap.counts[idx] > 0)
        t.bootstrap.in_bag.push_back(idx);
      else
        t.bootstrap.oob.push_back(idx);
    }
    for (const auto& jn : jt.at("nodes")) t.nodes.push_back(node_from_json(jn));
    trees.push_back(std::move(t));
  }

  return Forest(std::move(trees), config, task, j.at("n_train").get<std::size_t>(),
                j.at("n_features").get<std::size_t>(), j.at("n_classes").get<std::size_t>());
}

Forest load_forest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path);
  return load_forest(in);
}

}  // namespace rfuq
