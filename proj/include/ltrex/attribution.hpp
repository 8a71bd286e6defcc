#pragma once

#include "ltrex/boosting.hpp"
#include "ltrex/tree.hpp"

namespace ltrex {

enum class GroundTruthMode { impurity, frequency };

std::string ground_truth_mode_name(GroundTruthMode mode);
GroundTruthMode ground_truth_mode_from_name(const std::string& name);

// Per-feature importance extracted from a decision path. Impurity mode:
// scores[f] accumulates the node-value change across every path edge whose
// parent splits on f, and bias is the root value, so bias + sum(scores)
// equals the tree prediction. Frequency mode: scores[f] is the fraction of
// non-leaf path nodes splitting on f, and bias is 0.
struct Attribution {
  GroundTruthMode mode = GroundTruthMode::impurity;
  double bias = 0.0;
  std::vector<double> scores;
};

Attribution impurity_attribution(const RegressionTree& tree,
                                 const std::vector<double>& x);
Attribution frequency_attribution(const RegressionTree& tree,
                                  const std::vector<double>& x);
Attribution tree_attribution(const RegressionTree& tree,
                             const std::vector<double>& x,
                             GroundTruthMode mode);

// Arithmetic mean of per-tree attributions (scores and bias) over a
// non-empty ensemble. Raw node values are used, without learning-rate
// scaling, so the impurity sum identity holds for single trees only.
Attribution ensemble_attribution(const BoostedEnsemble& ens,
                                 const std::vector<double>& x,
                                 GroundTruthMode mode);

// Number of non-leaf nodes on the decision path; mean over trees for an
// ensemble.
double path_depth(const RegressionTree& tree, const std::vector<double>& x);
double path_depth(const BoostedEnsemble& ens, const std::vector<double>& x);

}  // namespace ltrex
