#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ltrex/dataset.hpp"
#include "ltrex/rng.hpp"

namespace ltrex {

enum class Technique { lirme, exs };
enum class DistanceKind { euclidean, cosine };

std::string technique_name(Technique t);
Technique technique_from_name(const std::string& name);
std::string distance_kind_name(DistanceKind kind);
DistanceKind distance_kind_from_name(const std::string& name);

// Raised when an instance cannot be explained (for example a degenerate EXS
// normalizer); callers log and skip rather than abort.
class ExplainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ExplainerConfig {
  int num_samples = 2000;
  // Kernel width h in exp(-dist^2 / h); unset means (0.75 * sqrt(d))^2.
  std::optional<double> kernel_width;
  DistanceKind distance = DistanceKind::euclidean;
  double lasso_alpha = 0.01;
  double lasso_tol = 1e-6;
  int lasso_max_iter = 1000;
  double svr_c = 1.0;
  double svr_epsilon = 0.1;
  double svr_learning_rate = 0.1;
  int svr_max_iter = 2000;
  // When set, the EXS normalizer is the best model score over the query's
  // real documents instead of over the perturbation set.
  bool exs_smax_over_query = false;
  std::uint64_t seed = 0;
};

struct Explanation {
  Technique technique = Technique::lirme;
  std::string qid;
  std::string docid;
  std::vector<double> weights;
  double intercept = 0.0;
};

// One perturbed sample: binary interpretable vector z (1 where the instance
// was kept) and the raw-space point x it maps to.
struct PerturbedSample {
  std::vector<double> z;
  std::vector<double> x;
};

using ScoreFn = std::function<double(const std::vector<double>&)>;

// exp(-dist(a, b)^2 / h); dist is Euclidean or cosine distance
// (0 when either vector is zero).
double kernel_weight(const std::vector<double>& a, const std::vector<double>& b,
                     double h, DistanceKind kind);

// Quartile perturbation: per feature draw a quartile uniformly from
// {1,2,3,4}; z_f = 1 iff it matches the instance's quartile (keeping the
// instance value), otherwise the value is redrawn uniformly from the drawn
// quartile's empirical interval.
PerturbedSample lirme_sample(const std::vector<double>& instance,
                             const FeatureStats& stats, Rng& rng);

// Mean-replacement perturbation: a uniform count m in {1..d} of distinct
// features is replaced by the dataset mean (z_f = 0); the rest keep the
// instance value.
PerturbedSample exs_sample(const std::vector<double>& instance,
                           const FeatureStats& stats, Rng& rng);

// Elementwise (s_max - s) / s_max. Throws ExplainError when s_max is zero.
std::vector<double> exs_transform(const std::vector<double>& sample_scores,
                                  double s_max);

Explanation lirme_explain(const ScoreFn& model,
                          const std::vector<double>& instance,
                          const FeatureStats& stats, const ExplainerConfig& cfg,
                          const std::string& qid, const std::string& docid);

Explanation exs_explain(const ScoreFn& model,
                        const std::vector<std::vector<double>>& query_instances,
                        const std::vector<double>& instance,
                        const FeatureStats& stats, const ExplainerConfig& cfg,
                        const std::string& qid, const std::string& docid);

}  // namespace ltrex
