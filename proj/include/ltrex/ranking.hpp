#pragma once

#include <vector>

namespace ltrex {

// Untruncated NDCG with gain 2^label - 1 and discount 1/log2(rank + 1) over
// 1-based ranks; score ties are broken by original index. Returns 0 when all
// labels are zero (IDCG = 0).
double ndcg(const std::vector<double>& scores, const std::vector<int>& labels);

// Pairwise lambda gradients: for each pair with label_i > label_j the
// magnitude is sigma * |dNDCG from swapping i and j in the current ordering|
// / (1 + exp(sigma * (score_i - score_j))), credited positively to the more
// relevant document. Over each query the output sums to zero.
std::vector<double> lambda_gradients(const std::vector<double>& scores,
                                     const std::vector<int>& labels,
                                     double sigma);

}  // namespace ltrex
