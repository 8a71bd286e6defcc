#pragma once

#include <cstddef>
#include <vector>

namespace ltrex {

struct TreeNode {
  double value = 0.0;            // weighted mean of training targets here
  double sample_fraction = 1.0;  // weight fraction of training data here
  int split_feature = -1;        // -1 for leaves
  double threshold = 0.0;
  int left = -1;
  int right = -1;

  bool is_leaf() const { return left < 0; }
};

struct TreeParams {
  int max_depth = 4;
  double min_samples_split_fraction = 0.1;
  double min_samples_leaf_fraction = 0.1;
};

// Binary regression tree in preorder layout: node 0 is the root and child
// ids are strictly greater than their parent's.
struct RegressionTree {
  std::size_t feature_count = 0;
  std::vector<TreeNode> nodes;
};

// One visited node; split_feature is -1 on the terminal leaf entry.
struct PathStep {
  int node_id = 0;
  int split_feature = -1;
  double node_value = 0.0;
};

// Greedy CART with weighted-variance (MSE) splits. Candidate thresholds are
// midpoints between consecutive distinct sorted feature values; ties in
// impurity decrease resolve to the lowest feature index, then the lowest
// threshold. A node becomes a leaf at max_depth, when its weight fraction
// drops below min_samples_split_fraction, when every candidate would leave a
// child under min_samples_leaf_fraction, or when its targets are constant.
RegressionTree fit_regression_tree(const std::vector<std::vector<double>>& X,
                                   const std::vector<double>& y,
                                   const TreeParams& params,
                                   const std::vector<double>* sample_weights =
                                       nullptr);

// Routes x to a leaf (left iff x[feature] <= threshold) and returns its value.
double tree_predict(const RegressionTree& tree, const std::vector<double>& x);

// Root-to-leaf node sequence for x, using the same routing rule.
std::vector<PathStep> decision_path(const RegressionTree& tree,
                                    const std::vector<double>& x);

}  // namespace ltrex
