#include "ltrex/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace ltrex {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

SimilarityResult undefined_result(Metric m) { return {m, kNaN, false}; }

}  // namespace

std::string metric_name(Metric m) {
  switch (m) {
    case Metric::spearman: return "spearman";
    case Metric::euclidean: return "euclidean";
    default: return "topk_auc";
  }
}

Metric metric_from_name(const std::string& name) {
  if (name == "spearman") return Metric::spearman;
  if (name == "euclidean") return Metric::euclidean;
  if (name == "topk_auc") return Metric::topk_auc;
  throw std::invalid_argument("unknown metric: " + name);
}

std::vector<double> average_ranks(const std::vector<double>& values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (values[a] != values[b]) return values[a] < values[b];
    return a < b;
  });
  std::vector<double> ranks(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
    // positions i..j (0-based) share the mean 1-based rank
    const double shared = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = shared;
    i = j + 1;
  }
  return ranks;
}

SimilarityResult spearman(const std::vector<double>& a,
                          const std::vector<double>& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("spearman length mismatch");
  if (a.size() < 2)
    throw std::invalid_argument("spearman needs at least two entries");

  const auto ra = average_ranks(a);
  const auto rb = average_ranks(b);
  const double n = static_cast<double>(a.size());
  const double ma = std::accumulate(ra.begin(), ra.end(), 0.0) / n;
  const double mb = std::accumulate(rb.begin(), rb.end(), 0.0) / n;
  double cov = 0.0, va = 0.0, vb = 0.0;
  for (std::size_t i = 0; i < ra.size(); ++i) {
    const double da = ra[i] - ma;
    const double db = rb[i] - mb;
    cov += da * db;
    va += da * da;
    vb += db * db;
  }
  if (va == 0.0 || vb == 0.0) return undefined_result(Metric::spearman);
  const double value = cov / std::sqrt(va * vb);
  return {Metric::spearman, std::clamp(value, -1.0, 1.0), true};
}

SimilarityResult euclidean_similarity(const std::vector<double>& a,
                                      const std::vector<double>& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("euclidean_similarity length mismatch");
  double na = 0.0, nb = 0.0;
  for (double v : a) na += v * v;
  for (double v : b) nb += v * v;
  na = std::sqrt(na);
  nb = std::sqrt(nb);
  if (na == 0.0 && nb == 0.0) return undefined_result(Metric::euclidean);
  double dist_sq = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double ai = na == 0.0 ? 0.0 : a[i] / na;
    const double bi = nb == 0.0 ? 0.0 : b[i] / nb;
    dist_sq += (ai - bi) * (ai - bi);
  }
  const double value = 1.0 - std::sqrt(dist_sq) / 2.0;
  return {Metric::euclidean, std::clamp(value, 0.0, 1.0), true};
}

SimilarityResult topk_auc(const std::vector<double>& explanation,
                          const std::vector<double>& ground_truth, int K) {
  if (explanation.size() != ground_truth.size())
    throw std::invalid_argument("topk_auc length mismatch");
  if (K < 1) throw std::invalid_argument("K must be positive");

  const std::size_t n = ground_truth.size();
  std::size_t nonzero = 0;
  for (double g : ground_truth)
    if (g != 0.0) ++nonzero;
  const std::size_t k_eff = std::min<std::size_t>(static_cast<std::size_t>(K),
                                                  nonzero);
  if (k_eff == 0 || k_eff == n) return undefined_result(Metric::topk_auc);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const double ga = std::abs(ground_truth[a]);
    const double gb = std::abs(ground_truth[b]);
    if (ga != gb) return ga > gb;
    return a < b;
  });
  std::vector<bool> positive(n, false);
  for (std::size_t r = 0; r < k_eff; ++r) positive[order[r]] = true;

  std::vector<double> scores(n);
  for (std::size_t i = 0; i < n; ++i) scores[i] = std::abs(explanation[i]);
  const auto ranks = average_ranks(scores);

  double rank_sum = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    if (positive[i]) rank_sum += ranks[i];
  const double n_pos = static_cast<double>(k_eff);
  const double n_neg = static_cast<double>(n - k_eff);
  const double value = (rank_sum - n_pos * (n_pos + 1.0) / 2.0) / (n_pos * n_neg);
  return {Metric::topk_auc, value, true};
}

}  // namespace ltrex
