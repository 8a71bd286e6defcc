#include "ltrex/tree.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace ltrex {

namespace {

struct NodeStats {
  double weight = 0.0;
  double weighted_sum = 0.0;
  double weighted_sq = 0.0;

  double mean() const { return weighted_sum / weight; }
  // Weighted sum of squared deviations from the mean.
  double sse() const {
    return std::max(0.0, weighted_sq - weighted_sum * weighted_sum / weight);
  }
};

struct Builder {
  const std::vector<std::vector<double>>& X;
  const std::vector<double>& y;
  const std::vector<double>& w;
  const TreeParams& params;
  double total_weight;
  std::size_t d;
  std::vector<TreeNode> nodes;

  NodeStats stats_of(const std::vector<std::size_t>& idx) const {
    NodeStats s;
    for (std::size_t i : idx) {
      s.weight += w[i];
      s.weighted_sum += w[i] * y[i];
      s.weighted_sq += w[i] * y[i] * y[i];
    }
    return s;
  }

  int build(const std::vector<std::size_t>& idx, int depth) {
    const int id = static_cast<int>(nodes.size());
    nodes.emplace_back();

    const NodeStats stats = stats_of(idx);
    nodes[id].value = stats.mean();
    nodes[id].sample_fraction = stats.weight / total_weight;

    auto [ymin_it, ymax_it] = std::minmax_element(
        idx.begin(), idx.end(),
        [&](std::size_t a, std::size_t b) { return y[a] < y[b]; });
    const bool constant_targets = y[*ymin_it] == y[*ymax_it];

    const bool splittable =
        depth < params.max_depth && idx.size() >= 2 && !constant_targets &&
        nodes[id].sample_fraction >= params.min_samples_split_fraction;

    int best_feature = -1;
    double best_threshold = 0.0;
    double best_decrease = 0.0;
    if (splittable) {
      const double node_sse = stats.sse();
      std::vector<std::size_t> order(idx);
      for (std::size_t f = 0; f < d; ++f) {
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) {
                    if (X[a][f] != X[b][f]) return X[a][f] < X[b][f];
                    return a < b;
                  });
        NodeStats left;
        for (std::size_t p = 0; p + 1 < order.size(); ++p) {
          const std::size_t i = order[p];
          left.weight += w[i];
          left.weighted_sum += w[i] * y[i];
          left.weighted_sq += w[i] * y[i] * y[i];
          const double xv = X[i][f];
          const double xnext = X[order[p + 1]][f];
          if (!(xv < xnext)) continue;  // only between distinct values
          NodeStats right{stats.weight - left.weight,
                          stats.weighted_sum - left.weighted_sum,
                          stats.weighted_sq - left.weighted_sq};
          if (left.weight / total_weight < params.min_samples_leaf_fraction ||
              right.weight / total_weight < params.min_samples_leaf_fraction)
            continue;
          const double decrease = node_sse - left.sse() - right.sse();
          // Strict > keeps the first-seen maximum: lowest feature index,
          // then lowest threshold.
          if (decrease > best_decrease) {
            best_decrease = decrease;
            best_feature = static_cast<int>(f);
            best_threshold = (xv + xnext) / 2.0;
          }
        }
      }
    }

    if (best_feature < 0) return id;  // leaf

    std::vector<std::size_t> left_idx, right_idx;
    for (std::size_t i : idx) {
      if (X[i][static_cast<std::size_t>(best_feature)] <= best_threshold)
        left_idx.push_back(i);
      else
        right_idx.push_back(i);
    }

    nodes[id].split_feature = best_feature;
    nodes[id].threshold = best_threshold;
    const int left_id = build(left_idx, depth + 1);
    const int right_id = build(right_idx, depth + 1);
    nodes[id].left = left_id;
    nodes[id].right = right_id;
    return id;
  }
};

}  // namespace

RegressionTree fit_regression_tree(const std::vector<std::vector<double>>& X,
                                   const std::vector<double>& y,
                                   const TreeParams& params,
                                   const std::vector<double>* sample_weights) {
  if (X.empty() || X.size() != y.size())
    throw std::invalid_argument("tree fit needs |X| == |y| >= 1");
  if (params.max_depth < 1)
    throw std::invalid_argument("max_depth must be positive");
  if (!(params.min_samples_split_fraction > 0.0 &&
        params.min_samples_split_fraction <= 1.0))
    throw std::invalid_argument("min_samples_split_fraction out of (0, 1]");
  if (!(params.min_samples_leaf_fraction > 0.0 &&
        params.min_samples_leaf_fraction <= 0.5))
    throw std::invalid_argument("min_samples_leaf_fraction out of (0, 0.5]");

  const std::size_t d = X[0].size();
  for (const auto& row : X)
    if (row.size() != d)
      throw std::invalid_argument("ragged feature matrix");

  std::vector<double> unit_weights;
  const std::vector<double>* w = sample_weights;
  if (w == nullptr) {
    unit_weights.assign(X.size(), 1.0);
    w = &unit_weights;
  }
  if (w->size() != X.size())
    throw std::invalid_argument("sample weight length mismatch");
  double total_weight = 0.0;
  for (double wi : *w) {
    if (wi < 0.0) throw std::invalid_argument("negative sample weight");
    total_weight += wi;
  }
  if (!(total_weight > 0.0))
    throw std::invalid_argument("sample weights must have positive sum");

  Builder builder{X, y, *w, params, total_weight, d, {}};
  std::vector<std::size_t> all(X.size());
  std::iota(all.begin(), all.end(), std::size_t{0});
  builder.build(all, 0);

  RegressionTree tree;
  tree.feature_count = d;
  tree.nodes = std::move(builder.nodes);
  return tree;
}

double tree_predict(const RegressionTree& tree, const std::vector<double>& x) {
  if (x.size() != tree.feature_count)
    throw std::invalid_argument("feature dimension mismatch");
  int node = 0;
  while (!tree.nodes[node].is_leaf()) {
    const TreeNode& n = tree.nodes[node];
    node = x[static_cast<std::size_t>(n.split_feature)] <= n.threshold
               ? n.left
               : n.right;
  }
  return tree.nodes[node].value;
}

std::vector<PathStep> decision_path(const RegressionTree& tree,
                                    const std::vector<double>& x) {
  if (x.size() != tree.feature_count)
    throw std::invalid_argument("feature dimension mismatch");
  std::vector<PathStep> path;
  int node = 0;
  while (!tree.nodes[node].is_leaf()) {
    const TreeNode& n = tree.nodes[node];
    path.push_back({node, n.split_feature, n.value});
    node = x[static_cast<std::size_t>(n.split_feature)] <= n.threshold
               ? n.left
               : n.right;
  }
  path.push_back({node, -1, tree.nodes[node].value});
  return path;
}

}  // namespace ltrex
