#include "ltrex/boosting.hpp"

#include <algorithm>
#include <stdexcept>

#include "ltrex/ranking.hpp"

namespace ltrex {

BoostedEnsemble fit_lambdamart(const std::vector<std::vector<double>>& X,
                               const std::vector<int>& labels,
                               const std::vector<QueryGroup>& groups,
                               const LambdaMartParams& params) {
  if (X.size() != labels.size())
    throw std::invalid_argument("feature/label length mismatch");
  if (params.num_trees < 0)
    throw std::invalid_argument("num_trees must be non-negative");
  if (!(params.learning_rate > 0.0))
    throw std::invalid_argument("learning_rate must be positive");

  bool has_pair = false;
  for (const auto& g : groups) {
    if (g.member_indices.empty())
      throw std::invalid_argument("empty query group");
    const int first = labels.at(g.member_indices[0]);
    for (std::size_t i : g.member_indices) {
      if (i >= X.size()) throw std::invalid_argument("group index out of range");
      if (labels[i] != first) has_pair = true;
    }
  }
  if (!has_pair)
    throw std::invalid_argument(
        "lambdamart needs at least one query with distinct labels");

  BoostedEnsemble ens;
  ens.feature_count = X.empty() ? 0 : X[0].size();
  ens.learning_rate = params.learning_rate;
  ens.init_score = 0.0;

  const std::size_t n = X.size();
  // Running sum of raw tree outputs; the live score is init + lr * sum so
  // training scores match ensemble_predict bit for bit.
  std::vector<double> tree_sum(n, 0.0);
  std::vector<double> scores(n, ens.init_score);
  std::vector<double> targets(n, 0.0);
  std::vector<double> group_scores, group_lambdas;
  std::vector<int> group_labels;

  for (int round = 0; round < params.num_trees; ++round) {
    std::fill(targets.begin(), targets.end(), 0.0);
    for (const auto& g : groups) {
      group_scores.clear();
      group_labels.clear();
      for (std::size_t i : g.member_indices) {
        group_scores.push_back(scores[i]);
        group_labels.push_back(labels[i]);
      }
      group_lambdas = lambda_gradients(group_scores, group_labels, params.sigma);
      for (std::size_t k = 0; k < g.member_indices.size(); ++k)
        targets[g.member_indices[k]] = group_lambdas[k];
    }

    RegressionTree tree =
        fit_regression_tree(X, targets, params.tree_params, nullptr);
    for (std::size_t i = 0; i < n; ++i) {
      tree_sum[i] += tree_predict(tree, X[i]);
      scores[i] = ens.init_score + ens.learning_rate * tree_sum[i];
    }
    ens.trees.push_back(std::move(tree));
  }
  return ens;
}

double ensemble_predict(const BoostedEnsemble& ens,
                        const std::vector<double>& x) {
  if (x.size() != ens.feature_count)
    throw std::invalid_argument("feature dimension mismatch");
  double sum = 0.0;
  for (const auto& tree : ens.trees) sum += tree_predict(tree, x);
  return ens.init_score + ens.learning_rate * sum;
}

}  // namespace ltrex
