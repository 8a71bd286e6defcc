#include "ltrex/attribution.hpp"

#include <stdexcept>

namespace ltrex {

std::string ground_truth_mode_name(GroundTruthMode mode) {
  return mode == GroundTruthMode::impurity ? "impurity" : "frequency";
}

GroundTruthMode ground_truth_mode_from_name(const std::string& name) {
  if (name == "impurity") return GroundTruthMode::impurity;
  if (name == "frequency") return GroundTruthMode::frequency;
  throw std::invalid_argument("unknown ground-truth mode: " + name);
}

Attribution impurity_attribution(const RegressionTree& tree,
                                 const std::vector<double>& x) {
  const auto path = decision_path(tree, x);
  Attribution attr;
  attr.mode = GroundTruthMode::impurity;
  attr.scores.assign(tree.feature_count, 0.0);
  attr.bias = path.front().node_value;
  for (std::size_t k = 0; k + 1 < path.size(); ++k) {
    const auto feature = static_cast<std::size_t>(path[k].split_feature);
    attr.scores[feature] += path[k + 1].node_value - path[k].node_value;
  }
  return attr;
}

Attribution frequency_attribution(const RegressionTree& tree,
                                  const std::vector<double>& x) {
  const auto path = decision_path(tree, x);
  Attribution attr;
  attr.mode = GroundTruthMode::frequency;
  attr.scores.assign(tree.feature_count, 0.0);
  const std::size_t splits = path.size() - 1;
  if (splits == 0) return attr;  // single-leaf path
  std::vector<int> counts(tree.feature_count, 0);
  for (std::size_t k = 0; k < splits; ++k)
    ++counts[static_cast<std::size_t>(path[k].split_feature)];
  for (std::size_t f = 0; f < counts.size(); ++f)
    if (counts[f] > 0)
      attr.scores[f] =
          static_cast<double>(counts[f]) / static_cast<double>(splits);
  return attr;
}

Attribution tree_attribution(const RegressionTree& tree,
                             const std::vector<double>& x,
                             GroundTruthMode mode) {
  return mode == GroundTruthMode::impurity ? impurity_attribution(tree, x)
                                           : frequency_attribution(tree, x);
}

Attribution ensemble_attribution(const BoostedEnsemble& ens,
                                 const std::vector<double>& x,
                                 GroundTruthMode mode) {
  if (ens.trees.empty())
    throw std::invalid_argument("attribution of an empty ensemble");
  Attribution total;
  total.mode = mode;
  total.scores.assign(ens.feature_count, 0.0);
  for (const auto& tree : ens.trees) {
    const Attribution part = tree_attribution(tree, x, mode);
    total.bias += part.bias;
    for (std::size_t f = 0; f < total.scores.size(); ++f)
      total.scores[f] += part.scores[f];
  }
  const auto count = static_cast<double>(ens.trees.size());
  total.bias /= count;
  for (double& s : total.scores) s /= count;
  return total;
}

double path_depth(const RegressionTree& tree, const std::vector<double>& x) {
  return static_cast<double>(decision_path(tree, x).size() - 1);
}

double path_depth(const BoostedEnsemble& ens, const std::vector<double>& x) {
  if (ens.trees.empty())
    throw std::invalid_argument("path depth of an empty ensemble");
  double total = 0.0;
  for (const auto& tree : ens.trees) total += path_depth(tree, x);
  return total / static_cast<double>(ens.trees.size());
}

}  // namespace ltrex
