#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ltrex/attribution.hpp"
#include "ltrex/dataset.hpp"
#include "ltrex/explain.hpp"
#include "ltrex/metrics.hpp"
#include "ltrex/model_io.hpp"

namespace ltrex {

// ---- hyperparameter random search ----

struct TreeTrial {
  TreeParams params;
  double validation_mse = 0.0;
};

struct TreeSearchResult {
  TreeParams best_params;
  double best_mse = 0.0;
  std::vector<TreeTrial> trials;
};

// Uniform draws: min_samples_split_fraction in [0.1, 1],
// min_samples_leaf_fraction in [0.1, 0.5], max_depth in {1..20}. Targets are
// the raw relevance labels; selection minimizes validation MSE, ties going
// to the first-sampled trial.
TreeSearchResult random_search_tree(const Dataset& train, const Dataset& valid,
                                    int trials, std::uint64_t seed);

struct LambdaMartTrial {
  LambdaMartParams params;
  double validation_ndcg = 0.0;
};

struct LambdaMartSearchResult {
  LambdaMartParams best_params;
  double best_ndcg = 0.0;
  std::vector<LambdaMartTrial> trials;
};

// Same fraction ranges, max_depth in {5..40}, num_trees in {1..max_trees};
// selection maximizes mean validation NDCG over queries.
LambdaMartSearchResult random_search_lambdamart(const Dataset& train,
                                                const Dataset& valid,
                                                int trials, std::uint64_t seed,
                                                double learning_rate = 0.1,
                                                double sigma = 1.0,
                                                int max_trees = 5);

// Helpers shared by search and reporting.
double dataset_mse(const Model& model, const Dataset& ds);
double mean_ndcg(const Model& model, const Dataset& ds);

// ---- per-instance evaluation ----

struct EvalConfig {
  ExplainerConfig lirme;
  ExplainerConfig exs;
  int default_k = 5;
  int threads = 1;
};

// Everything needed to re-derive any accuracy record offline.
struct ExplanationRow {
  std::string qid;
  std::string docid;
  Technique technique = Technique::lirme;
  std::string model_kind;
  std::vector<double> weights;
  std::vector<double> gt_impurity;
  double gt_impurity_bias = 0.0;
  std::vector<double> gt_frequency;
  double path_depth = 0.0;
  double predicted_score = 0.0;
};

struct EvalRecord {
  std::string qid;
  std::string docid;
  Technique technique = Technique::lirme;
  GroundTruthMode gt_mode = GroundTruthMode::impurity;
  Metric metric = Metric::spearman;
  double value = 0.0;
  bool defined = false;
  double path_depth = 0.0;
};

struct SkipEntry {
  std::string qid;
  std::string docid;
  Technique technique = Technique::lirme;
  std::string reason;
};

struct EvalResult {
  std::vector<ExplanationRow> rows;
  std::vector<EvalRecord> records;
  std::vector<SkipEntry> skips;
};

// Explains every test instance with both techniques, extracts both ground
// truths and the path depth, and scores every (technique, gt_mode, metric)
// combination. Instances a technique cannot explain are logged in skips.
// Fans out across cfg.threads workers; outputs are sorted by
// (qid, docid, technique, ...) so results are schedule-independent.
EvalResult evaluate_explanations(const Model& model, const Dataset& test,
                                 const std::vector<QueryGroup>& groups,
                                 const FeatureStats& stats,
                                 const EvalConfig& cfg);

// ---- aggregation ----

struct AggregateCell {
  Technique technique = Technique::lirme;
  GroundTruthMode gt_mode = GroundTruthMode::impurity;
  Metric metric = Metric::spearman;
  std::optional<double> mean;
  std::optional<double> stddev;  // population
  int n_defined = 0;
  int n_undefined = 0;
};

std::vector<AggregateCell> aggregate(const std::vector<EvalRecord>& records);

struct DistSummary {
  std::optional<double> mean;
  std::optional<double> stddev;  // population
  std::optional<double> q1;
  std::optional<double> median;
  std::optional<double> q3;
  int n_defined = 0;
  int n_undefined = 0;
};

struct SweepCell {
  Technique technique = Technique::lirme;
  GroundTruthMode gt_mode = GroundTruthMode::impurity;
  int k = 0;
  DistSummary summary;
};

// Recomputes top-K AUC from the persisted vectors for every K in k_values
// (duplicates collapse); quartiles use the same interpolation rule as
// FeatureStats.
std::vector<SweepCell> sweep_k(const std::vector<ExplanationRow>& rows,
                               const std::vector<int>& k_values);

struct DepthCell {
  Technique technique = Technique::lirme;
  GroundTruthMode gt_mode = GroundTruthMode::impurity;
  Metric metric = Metric::spearman;
  long depth_bucket = 0;
  DistSummary summary;
};

// Buckets records by round(path_depth); buckets emerge sorted ascending.
std::vector<DepthCell> depth_buckets(const std::vector<ExplanationRow>& rows,
                                     const std::vector<EvalRecord>& records);

// ---- persistence ----

// Writes explanations.jsonl, records.csv, summary.csv, sweep_k.csv,
// depth.csv, and skips.log into out_dir (created if needed). Each file is
// written to a temp path and renamed into place.
void write_outputs(const EvalResult& result,
                   const std::vector<AggregateCell>& summary,
                   const std::vector<SweepCell>& sweep,
                   const std::vector<DepthCell>& depth,
                   const std::string& out_dir);

std::vector<ExplanationRow> read_explanations_jsonl(const std::string& path);
std::vector<EvalRecord> read_records_csv(const std::string& path);

struct AuditReport {
  int checked = 0;
  int mismatches = 0;
};

// Recomputes every record in out_dir from its explanation row and compares
// bit-exactly (defined flags, values, and path depth).
AuditReport audit_outputs(const std::string& out_dir, int default_k);

// ---- full pipeline ----

struct PipelineConfig {
  // LETOR files; when train_path is empty a synthetic triple is generated.
  std::string train_path;
  std::string valid_path;
  std::string test_path;
  int synth_queries = 50;
  int synth_docs = 10;
  int synth_features = 10;

  ModelKind model_kind = ModelKind::decision_tree;
  int search_trials = 100;
  double learning_rate = 0.1;
  double sigma = 1.0;
  int max_trees = 5;

  ExplainerConfig lirme;
  ExplainerConfig exs;
  int default_k = 5;
  std::vector<int> k_values = {1, 5, 10, 20, 30, 40};

  std::uint64_t seed = 0;
  int threads = 1;
  std::string out_dir;  // empty: skip writing
};

struct PipelineResult {
  Model model;
  double validation_metric = 0.0;  // MSE for trees, mean NDCG for LambdaMART
  EvalResult eval;
  std::vector<AggregateCell> summary;
  std::vector<SweepCell> sweep;
  std::vector<DepthCell> depth;
};

// Search, fit, evaluate, aggregate, and (when out_dir is set) persist.
PipelineResult run_eval(const PipelineConfig& cfg);

}  // namespace ltrex
