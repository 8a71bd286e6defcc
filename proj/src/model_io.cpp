#include "ltrex/model_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <utility>

#include <json.hpp>

namespace ltrex {

using ordered_json = nlohmann::ordered_json;

std::string model_kind_name(ModelKind kind) {
  return kind == ModelKind::decision_tree ? "decision_tree" : "lambdamart";
}

ModelKind model_kind_from_name(const std::string& name) {
  if (name == "decision_tree") return ModelKind::decision_tree;
  if (name == "lambdamart") return ModelKind::lambdamart;
  throw std::invalid_argument("unknown model kind: " + name);
}

Model make_tree_model(RegressionTree tree) {
  Model model;
  model.kind = ModelKind::decision_tree;
  model.ensemble.feature_count = tree.feature_count;
  model.ensemble.learning_rate = 1.0;
  model.ensemble.init_score = 0.0;
  model.ensemble.trees.push_back(std::move(tree));
  return model;
}

Model make_lambdamart_model(BoostedEnsemble ens) {
  Model model;
  model.kind = ModelKind::lambdamart;
  model.ensemble = std::move(ens);
  return model;
}

double model_predict(const Model& model, const std::vector<double>& x) {
  return ensemble_predict(model.ensemble, x);
}

namespace {

ordered_json node_to_json(const TreeNode& node, int node_id) {
  ordered_json j;
  j["node_id"] = node_id;
  j["node_value"] = node.value;
  j["sample_fraction"] = node.sample_fraction;
  if (!node.is_leaf()) {
    j["split_feature"] = node.split_feature;
    j["threshold"] = node.threshold;
    j["left_child"] = node.left;
    j["right_child"] = node.right;
  }
  return j;
}

TreeNode node_from_json(const ordered_json& j) {
  TreeNode node;
  node.value = j.at("node_value").get<double>();
  node.sample_fraction = j.at("sample_fraction").get<double>();
  if (j.contains("split_feature")) {
    node.split_feature = j.at("split_feature").get<int>();
    node.threshold = j.at("threshold").get<double>();
    node.left = j.at("left_child").get<int>();
    node.right = j.at("right_child").get<int>();
  }
  return node;
}

}  // namespace

std::string model_to_json(const Model& model) {
  ordered_json j;
  j["model_kind"] = model_kind_name(model.kind);
  j["feature_count"] = model.ensemble.feature_count;
  j["learning_rate"] = model.ensemble.learning_rate;
  j["init_score"] = model.ensemble.init_score;
  j["trees"] = ordered_json::array();
  for (const auto& tree : model.ensemble.trees) {
    ordered_json jt;
    jt["nodes"] = ordered_json::array();
    for (std::size_t i = 0; i < tree.nodes.size(); ++i)
      jt["nodes"].push_back(node_to_json(tree.nodes[i], static_cast<int>(i)));
    j["trees"].push_back(std::move(jt));
  }
  return j.dump(2);
}

Model model_from_json(const std::string& text) {
  const auto j = ordered_json::parse(text);
  Model model;
  model.kind = model_kind_from_name(j.at("model_kind").get<std::string>());
  model.ensemble.feature_count = j.at("feature_count").get<std::size_t>();
  model.ensemble.learning_rate = j.at("learning_rate").get<double>();
  model.ensemble.init_score = j.at("init_score").get<double>();
  for (const auto& jt : j.at("trees")) {
    RegressionTree tree;
    tree.feature_count = model.ensemble.feature_count;
    const auto& jnodes = jt.at("nodes");
    tree.nodes.resize(jnodes.size());
    for (const auto& jn : jnodes) {
      const auto id = jn.at("node_id").get<std::size_t>();
      if (id >= tree.nodes.size())
        throw std::invalid_argument("node_id out of range in model document");
      tree.nodes[id] = node_from_json(jn);
    }
    model.ensemble.trees.push_back(std::move(tree));
  }
  return model;
}

void save_model(const Model& model, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write model file: " + path);
  out << model_to_json(model) << '\n';
}

Model load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open model file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return model_from_json(buf.str());
}

}  // namespace ltrex
