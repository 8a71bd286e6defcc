#pragma once

#include <string>

#include "ltrex/boosting.hpp"

namespace ltrex {

enum class ModelKind { decision_tree, lambdamart };

std::string model_kind_name(ModelKind kind);
ModelKind model_kind_from_name(const std::string& name);

// A fitted scorer. A single decision tree is stored as a one-tree ensemble
// with learning_rate 1 and init_score 0, so prediction, attribution, and
// path-depth code all share one representation.
struct Model {
  ModelKind kind = ModelKind::decision_tree;
  BoostedEnsemble ensemble;
};

Model make_tree_model(RegressionTree tree);
Model make_lambdamart_model(BoostedEnsemble ens);

double model_predict(const Model& model, const std::vector<double>& x);

// JSON document {model_kind, feature_count, learning_rate, init_score,
// trees:[{nodes:[...]}]}. Doubles round-trip exactly.
std::string model_to_json(const Model& model);
Model model_from_json(const std::string& text);

void save_model(const Model& model, const std::string& path);
Model load_model(const std::string& path);

}  // namespace ltrex
