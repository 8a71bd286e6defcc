#pragma once

#include <vector>

#include "ltrex/tree.hpp"

namespace ltrex::testing {

inline TreeNode leaf(double value, double fraction) {
  TreeNode n;
  n.value = value;
  n.sample_fraction = fraction;
  return n;
}

inline TreeNode internal(double value, double fraction, int feature,
                         double threshold, int left, int right) {
  TreeNode n;
  n.value = value;
  n.sample_fraction = fraction;
  n.split_feature = feature;
  n.threshold = threshold;
  n.left = left;
  n.right = right;
  return n;
}

// MQ2008-style reference fixture: a depth-4 tree over four text-match
// features and the test document that routes 0 -> 6 -> 7 -> 9 -> 11.
// Internal node values along that path are 0.375, 0.606, 0.532, 0.458 and
// the leaf predicts 0.515, so the path decomposition gives bias 0.375 and
// contributions +0.231 (lmirjm_url), -0.074 (lmir_abs_title),
// -0.074 (bm25_body), +0.057 (bm25_title). Every internal node value is the
// sample-fraction-weighted mean of its children.
constexpr int kLmirJmUrl = 0;
constexpr int kLmirAbsTitle = 1;
constexpr int kBm25Title = 2;
constexpr int kBm25Body = 3;

inline RegressionTree reference_tree() {
  RegressionTree tree;
  tree.feature_count = 4;
  tree.nodes = {
      internal(0.375, 1.0, kLmirJmUrl, 0.5, 1, 6),       // 0
      internal(0.221, 0.6, kLmirJmUrl, 0.3, 2, 3),       // 1
      leaf(0.263, 0.2),                                  // 2
      internal(0.200, 0.4, kLmirAbsTitle, 0.5, 4, 5),    // 3
      leaf(0.150, 0.2),                                  // 4
      leaf(0.250, 0.2),                                  // 5
      internal(0.606, 0.4, kLmirAbsTitle, 0.25, 7, 12),  // 6
      internal(0.532, 0.3, kBm25Body, 0.5, 8, 9),        // 7
      leaf(0.680, 0.1),                                  // 8
      internal(0.458, 0.2, kBm25Title, 0.6, 10, 11),     // 9
      leaf(0.401, 0.1),                                  // 10
      leaf(0.515, 0.1),                                  // 11
      leaf(0.828, 0.1),                                  // 12
  };
  return tree;
}

inline std::vector<double> reference_instance() {
  // lmirjm_url, lmir_abs_title, bm25_title, bm25_body
  return {0.786, 0.0, 0.722, 0.780};
}

}  // namespace ltrex::testing
