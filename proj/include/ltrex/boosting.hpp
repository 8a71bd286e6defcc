#pragma once

#include "ltrex/dataset.hpp"
#include "ltrex/tree.hpp"

namespace ltrex {

// Additive tree model: prediction = init_score + learning_rate * sum of
// per-tree leaf values.
struct BoostedEnsemble {
  std::size_t feature_count = 0;
  double learning_rate = 1.0;
  double init_score = 0.0;
  std::vector<RegressionTree> trees;
};

struct LambdaMartParams {
  int num_trees = 3;
  TreeParams tree_params;
  double learning_rate = 0.1;
  double sigma = 1.0;
};

// Plain MART on lambda gradients: each round computes per-query lambdas at
// the current scores, fits one regression tree to them over all documents,
// and adds it with the learning rate. No Newton re-estimation of leaves.
// Requires at least one query with a pair of distinct labels.
BoostedEnsemble fit_lambdamart(const std::vector<std::vector<double>>& X,
                               const std::vector<int>& labels,
                               const std::vector<QueryGroup>& groups,
                               const LambdaMartParams& params);

double ensemble_predict(const BoostedEnsemble& ens,
                        const std::vector<double>& x);

}  // namespace ltrex
