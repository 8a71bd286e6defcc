#include "ltrex/ranking.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace ltrex {

namespace {

double gain(int label) { return std::ldexp(1.0, label) - 1.0; }

// Discount for the document at 0-based position p.
double discount(std::size_t p) {
  return 1.0 / std::log2(static_cast<double>(p) + 2.0);
}

// Indices ordered by descending score, ties by ascending original index.
std::vector<std::size_t> ranking_order(const std::vector<double>& scores) {
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    return a < b;
  });
  return order;
}

double ideal_dcg(std::vector<int> labels) {
  std::sort(labels.begin(), labels.end(), std::greater<>());
  double idcg = 0.0;
  for (std::size_t p = 0; p < labels.size(); ++p)
    idcg += gain(labels[p]) * discount(p);
  return idcg;
}

}  // namespace

double ndcg(const std::vector<double>& scores, const std::vector<int>& labels) {
  if (scores.size() != labels.size() || scores.empty())
    throw std::invalid_argument("ndcg needs equal non-empty score/label lists");
  const double idcg = ideal_dcg(labels);
  if (idcg == 0.0) return 0.0;
  const auto order = ranking_order(scores);
  double dcg = 0.0;
  for (std::size_t p = 0; p < order.size(); ++p)
    dcg += gain(labels[order[p]]) * discount(p);
  return dcg / idcg;
}

std::vector<double> lambda_gradients(const std::vector<double>& scores,
                                     const std::vector<int>& labels,
                                     double sigma) {
  if (scores.size() != labels.size())
    throw std::invalid_argument("lambda_gradients length mismatch");
  if (!(sigma > 0.0)) throw std::invalid_argument("sigma must be positive");

  const std::size_t n = scores.size();
  std::vector<double> out(n, 0.0);
  const double idcg = ideal_dcg(labels);
  if (idcg == 0.0) return out;  // all labels zero: no ordered pairs

  const auto order = ranking_order(scores);
  std::vector<std::size_t> pos(n);
  for (std::size_t p = 0; p < n; ++p) pos[order[p]] = p;

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (labels[i] == labels[j]) continue;
      const std::size_t hi = labels[i] > labels[j] ? i : j;
      const std::size_t lo = labels[i] > labels[j] ? j : i;
      const double delta_dcg = (gain(labels[hi]) - gain(labels[lo])) *
                               (discount(pos[hi]) - discount(pos[lo]));
      const double delta_ndcg = std::abs(delta_dcg) / idcg;
      const double margin = scores[hi] - scores[lo];
      const double magnitude =
          sigma * delta_ndcg / (1.0 + std::exp(sigma * margin));
      out[hi] += magnitude;
      out[lo] -= magnitude;
    }
  }
  return out;
}

}  // namespace ltrex
