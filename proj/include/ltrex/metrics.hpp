#pragma once

#include <string>
#include <vector>

namespace ltrex {

enum class Metric { spearman, euclidean, topk_auc };

std::string metric_name(Metric m);
Metric metric_from_name(const std::string& name);

// defined is false when the metric is degenerate for the inputs (a constant
// rank vector, two zero vectors, or an empty positive/negative class); value
// is NaN in that case.
struct SimilarityResult {
  Metric metric = Metric::spearman;
  double value = 0.0;
  bool defined = false;
};

// Average (fractional) ranks, 1-based; ties share the mean of their covered
// positions. Exposed for reuse by the AUC computation and tests.
std::vector<double> average_ranks(const std::vector<double>& values);

// Pearson correlation of the average-rank vectors.
SimilarityResult spearman(const std::vector<double>& a,
                          const std::vector<double>& b);

// 1 - ||a_hat - b_hat|| / 2 over L2-normalized vectors (a zero vector stays
// zero); bounded to [0, 1].
SimilarityResult euclidean_similarity(const std::vector<double>& a,
                                      const std::vector<double>& b);

// Mann-Whitney AUC of |explanation| against the top-K' features of
// |ground_truth|, where K' = min(K, nonzero count of the ground truth) and
// ground-truth rank ties resolve to the lower feature index. A tied
// positive/negative score pair contributes 0.5.
SimilarityResult topk_auc(const std::vector<double>& explanation,
                          const std::vector<double>& ground_truth, int K);

}  // namespace ltrex
