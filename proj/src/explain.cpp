#include "ltrex/explain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "ltrex/solvers.hpp"

namespace ltrex {

std::string technique_name(Technique t) {
  return t == Technique::lirme ? "LIRME" : "EXS";
}

Technique technique_from_name(const std::string& name) {
  if (name == "LIRME") return Technique::lirme;
  if (name == "EXS") return Technique::exs;
  throw std::invalid_argument("unknown technique: " + name);
}

std::string distance_kind_name(DistanceKind kind) {
  return kind == DistanceKind::euclidean ? "euclidean" : "cosine";
}

DistanceKind distance_kind_from_name(const std::string& name) {
  if (name == "euclidean") return DistanceKind::euclidean;
  if (name == "cosine") return DistanceKind::cosine;
  throw std::invalid_argument("unknown distance kind: " + name);
}

double kernel_weight(const std::vector<double>& a, const std::vector<double>& b,
                     double h, DistanceKind kind) {
  if (a.size() != b.size())
    throw std::invalid_argument("kernel_weight dimension mismatch");
  if (!(h > 0.0)) throw std::invalid_argument("kernel width must be positive");

  double dist = 0.0;
  if (kind == DistanceKind::euclidean) {
    double sq = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      const double diff = a[i] - b[i];
      sq += diff * diff;
    }
    return std::exp(-sq / h);
  }
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0.0 || nb == 0.0) {
    dist = 0.0;  // cosine distance defined as 0 against a zero vector
  } else {
    dist = 1.0 - dot / (std::sqrt(na) * std::sqrt(nb));
  }
  return std::exp(-(dist * dist) / h);
}

namespace {

void check_instance(const std::vector<double>& instance,
                    const FeatureStats& stats) {
  if (instance.size() != stats.feature_count())
    throw std::invalid_argument("instance/stats dimension mismatch");
}

double default_kernel_width(std::size_t d) {
  const double root = 0.75 * std::sqrt(static_cast<double>(d));
  return root * root;
}

}  // namespace

PerturbedSample lirme_sample(const std::vector<double>& instance,
                             const FeatureStats& stats, Rng& rng) {
  check_instance(instance, stats);
  const std::size_t d = instance.size();
  PerturbedSample sample;
  sample.z.resize(d);
  sample.x.resize(d);
  for (std::size_t f = 0; f < d; ++f) {
    const auto& q = stats.quartiles[f];
    const int own = quartile_index(instance[f], q);
    const int drawn = rng.uniform_int(1, 4);
    if (drawn == own) {
      sample.z[f] = 1.0;
      sample.x[f] = instance[f];
      continue;
    }
    sample.z[f] = 0.0;
    double lo = 0.0, hi = 0.0;
    switch (drawn) {
      case 1: lo = stats.mins[f]; hi = q.q1; break;
      case 2: lo = q.q1; hi = q.q2; break;
      case 3: lo = q.q2; hi = q.q3; break;
      default: lo = q.q3; hi = stats.maxs[f]; break;
    }
    sample.x[f] = rng.uniform(lo, hi);
  }
  return sample;
}

PerturbedSample exs_sample(const std::vector<double>& instance,
                           const FeatureStats& stats, Rng& rng) {
  check_instance(instance, stats);
  const std::size_t d = instance.size();
  PerturbedSample sample;
  sample.z.assign(d, 1.0);
  sample.x = instance;
  if (d == 0) return sample;

  const int replace = rng.uniform_int(1, static_cast<int>(d));
  std::vector<std::size_t> pool(d);
  std::iota(pool.begin(), pool.end(), std::size_t{0});
  for (int i = 0; i < replace; ++i) {  // partial Fisher-Yates
    const int j = rng.uniform_int(i, static_cast<int>(d) - 1);
    std::swap(pool[i], pool[j]);
    const std::size_t f = pool[i];
    sample.z[f] = 0.0;
    sample.x[f] = stats.means[f];
  }
  return sample;
}

std::vector<double> exs_transform(const std::vector<double>& sample_scores,
                                  double s_max) {
  if (s_max == 0.0)
    throw ExplainError("degenerate normalizer: best score is zero");
  std::vector<double> out(sample_scores.size());
  for (std::size_t j = 0; j < out.size(); ++j)
    out[j] = (s_max - sample_scores[j]) / s_max;
  return out;
}

namespace {

struct SampledBatch {
  std::vector<std::vector<double>> Z;
  std::vector<double> scores;
  std::vector<double> kernel_weights;
};

SampledBatch draw_batch(Technique technique, const ScoreFn& model,
                        const std::vector<double>& instance,
                        const FeatureStats& stats, const ExplainerConfig& cfg,
                        const std::string& qid, const std::string& docid) {
  if (cfg.num_samples < 1)
    throw std::invalid_argument("num_samples must be positive");
  check_instance(instance, stats);
  const double h =
      cfg.kernel_width.value_or(default_kernel_width(instance.size()));

  Rng rng(derive_seed(cfg.seed, qid, docid));
  SampledBatch batch;
  batch.Z.reserve(cfg.num_samples);
  batch.scores.reserve(cfg.num_samples);
  batch.kernel_weights.reserve(cfg.num_samples);
  for (int j = 0; j < cfg.num_samples; ++j) {
    PerturbedSample s = technique == Technique::lirme
                            ? lirme_sample(instance, stats, rng)
                            : exs_sample(instance, stats, rng);
    batch.scores.push_back(model(s.x));
    batch.kernel_weights.push_back(
        kernel_weight(s.x, instance, h, cfg.distance));
    batch.Z.push_back(std::move(s.z));
  }
  return batch;
}

}  // namespace

Explanation lirme_explain(const ScoreFn& model,
                          const std::vector<double>& instance,
                          const FeatureStats& stats, const ExplainerConfig& cfg,
                          const std::string& qid, const std::string& docid) {
  SampledBatch batch =
      draw_batch(Technique::lirme, model, instance, stats, cfg, qid, docid);
  const SurrogateFit fit =
      fit_weighted_lasso(batch.Z, batch.scores, batch.kernel_weights,
                         cfg.lasso_alpha, cfg.lasso_tol, cfg.lasso_max_iter);
  return {Technique::lirme, qid, docid, fit.weights, fit.intercept};
}

Explanation exs_explain(const ScoreFn& model,
                        const std::vector<std::vector<double>>& query_instances,
                        const std::vector<double>& instance,
                        const FeatureStats& stats, const ExplainerConfig& cfg,
                        const std::string& qid, const std::string& docid) {
  SampledBatch batch =
      draw_batch(Technique::exs, model, instance, stats, cfg, qid, docid);

  double s_max = -std::numeric_limits<double>::infinity();
  if (cfg.exs_smax_over_query) {
    if (query_instances.empty())
      throw std::invalid_argument("query instance list is empty");
    for (const auto& doc : query_instances) s_max = std::max(s_max, model(doc));
  } else {
    for (double s : batch.scores) s_max = std::max(s_max, s);
  }

  const std::vector<double> targets = exs_transform(batch.scores, s_max);
  const SurrogateFit fit = fit_weighted_linear_svr(
      batch.Z, targets, batch.kernel_weights, cfg.svr_c, cfg.svr_epsilon,
      cfg.svr_learning_rate, cfg.svr_max_iter);
  return {Technique::exs, qid, docid, fit.weights, fit.intercept};
}

}  // namespace ltrex
