#include "ltrex/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <tuple>

#include <json.hpp>

#include "ltrex/ranking.hpp"
#include "ltrex/rng.hpp"

namespace fs = std::filesystem;

namespace ltrex {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string opt_g17(const std::optional<double>& v) {
  return v ? g17(*v) : std::string{};
}

std::vector<std::vector<double>> feature_matrix(const Dataset& ds) {
  std::vector<std::vector<double>> X;
  X.reserve(ds.size());
  for (const auto& inst : ds.instances) X.push_back(inst.features);
  return X;
}

std::vector<int> label_vector(const Dataset& ds) {
  std::vector<int> y;
  y.reserve(ds.size());
  for (const auto& inst : ds.instances) y.push_back(inst.label);
  return y;
}

}  // namespace

double dataset_mse(const Model& model, const Dataset& ds) {
  if (ds.empty()) throw std::invalid_argument("MSE of an empty dataset");
  double sum = 0.0;
  for (const auto& inst : ds.instances) {
    const double r = model_predict(model, inst.features) - inst.label;
    sum += r * r;
  }
  return sum / static_cast<double>(ds.size());
}

double mean_ndcg(const Model& model, const Dataset& ds) {
  const auto groups = split_queries(ds);
  if (groups.empty()) throw std::invalid_argument("NDCG of an empty dataset");
  double sum = 0.0;
  std::vector<double> scores;
  std::vector<int> labels;
  for (const auto& g : groups) {
    scores.clear();
    labels.clear();
    for (std::size_t i : g.member_indices) {
      scores.push_back(model_predict(model, ds.instances[i].features));
      labels.push_back(ds.instances[i].label);
    }
    sum += ndcg(scores, labels);
  }
  return sum / static_cast<double>(groups.size());
}

TreeSearchResult random_search_tree(const Dataset& train, const Dataset& valid,
                                    int trials, std::uint64_t seed) {
  if (train.empty() || valid.empty())
    throw std::invalid_argument("search needs non-empty train/valid splits");
  if (trials < 1) throw std::invalid_argument("trials must be positive");

  const auto X = feature_matrix(train);
  const auto labels = label_vector(train);
  std::vector<double> y(labels.begin(), labels.end());

  Rng rng(seed);
  TreeSearchResult result;
  for (int t = 0; t < trials; ++t) {
    TreeParams params;
    params.min_samples_split_fraction = rng.uniform(0.1, 1.0);
    params.min_samples_leaf_fraction = rng.uniform(0.1, 0.5);
    params.max_depth = rng.uniform_int(1, 20);

    const Model model =
        make_tree_model(fit_regression_tree(X, y, params, nullptr));
    const double mse = dataset_mse(model, valid);
    result.trials.push_back({params, mse});
    if (t == 0 || mse < result.best_mse) {
      result.best_mse = mse;
      result.best_params = params;
    }
  }
  return result;
}

LambdaMartSearchResult random_search_lambdamart(const Dataset& train,
                                                const Dataset& valid,
                                                int trials, std::uint64_t seed,
                                                double learning_rate,
                                                double sigma, int max_trees) {
  if (train.empty() || valid.empty())
    throw std::invalid_argument("search needs non-empty train/valid splits");
  if (trials < 1) throw std::invalid_argument("trials must be positive");
  if (max_trees < 1) throw std::invalid_argument("max_trees must be positive");

  const auto X = feature_matrix(train);
  const auto labels = label_vector(train);
  const auto groups = split_queries(train);

  Rng rng(seed);
  LambdaMartSearchResult result;
  for (int t = 0; t < trials; ++t) {
    LambdaMartParams params;
    params.learning_rate = learning_rate;
    params.sigma = sigma;
    params.tree_params.min_samples_split_fraction = rng.uniform(0.1, 1.0);
    params.tree_params.min_samples_leaf_fraction = rng.uniform(0.1, 0.5);
    params.tree_params.max_depth = rng.uniform_int(5, 40);
    params.num_trees = rng.uniform_int(1, max_trees);

    const Model model =
        make_lambdamart_model(fit_lambdamart(X, labels, groups, params));
    const double score = mean_ndcg(model, valid);
    result.trials.push_back({params, score});
    if (t == 0 || score > result.best_ndcg) {
      result.best_ndcg = score;
      result.best_params = params;
    }
  }
  return result;
}

namespace {

// Shared by live evaluation, the K sweep, and the offline audit so the
// recomputation path is identical.
SimilarityResult metric_result(Metric metric,
                               const std::vector<double>& weights,
                               const std::vector<double>& gt, int k) {
  switch (metric) {
    case Metric::spearman:
      if (weights.size() < 2)
        return {Metric::spearman, std::numeric_limits<double>::quiet_NaN(),
                false};
      return spearman(weights, gt);
    case Metric::euclidean:
      return euclidean_similarity(weights, gt);
    default:
      return topk_auc(weights, gt, k);
  }
}

constexpr Technique kTechniques[] = {Technique::lirme, Technique::exs};
constexpr GroundTruthMode kModes[] = {GroundTruthMode::impurity,
                                      GroundTruthMode::frequency};
constexpr Metric kMetrics[] = {Metric::spearman, Metric::euclidean,
                               Metric::topk_auc};

struct InstanceOutput {
  std::vector<ExplanationRow> rows;
  std::vector<EvalRecord> records;
  std::vector<SkipEntry> skips;
};

void sort_result(EvalResult& r) {
  auto row_key = [](const ExplanationRow& x) {
    return std::tie(x.qid, x.docid, x.technique);
  };
  std::sort(r.rows.begin(), r.rows.end(),
            [&](const auto& a, const auto& b) { return row_key(a) < row_key(b); });
  auto rec_key = [](const EvalRecord& x) {
    return std::tie(x.qid, x.docid, x.technique, x.gt_mode, x.metric);
  };
  std::sort(r.records.begin(), r.records.end(),
            [&](const auto& a, const auto& b) { return rec_key(a) < rec_key(b); });
  auto skip_key = [](const SkipEntry& x) {
    return std::tie(x.qid, x.docid, x.technique);
  };
  std::sort(r.skips.begin(), r.skips.end(),
            [&](const auto& a, const auto& b) { return skip_key(a) < skip_key(b); });
}

}  // namespace

EvalResult evaluate_explanations(const Model& model, const Dataset& test,
                                 const std::vector<QueryGroup>& groups,
                                 const FeatureStats& stats,
                                 const EvalConfig& cfg) {
  if (test.empty()) throw std::invalid_argument("empty test set");
  if (model.ensemble.trees.empty())
    throw std::invalid_argument("model has no trees");
  if (cfg.threads < 1) throw std::invalid_argument("threads must be positive");

  // Materialize each query's documents once for the EXS normalizer option.
  std::vector<std::vector<std::vector<double>>> group_docs(groups.size());
  struct Task {
    std::size_t instance_index;
    std::size_t group_index;
  };
  std::vector<Task> tasks;
  for (std::size_t g = 0; g < groups.size(); ++g) {
    for (std::size_t i : groups[g].member_indices) {
      group_docs[g].push_back(test.instances[i].features);
      tasks.push_back({i, g});
    }
  }

  const ScoreFn score_fn = [&model](const std::vector<double>& x) {
    return model_predict(model, x);
  };
  const std::string kind_name = model_kind_name(model.kind);

  std::vector<InstanceOutput> slots(tasks.size());
  std::atomic<std::size_t> next_task{0};
  std::atomic<bool> failed{false};
  std::exception_ptr first_error;
  std::mutex error_mutex;

  auto worker = [&]() {
    for (;;) {
      const std::size_t t = next_task.fetch_add(1);
      if (t >= tasks.size() || failed.load()) break;
      try {
        const auto& inst = test.instances[tasks[t].instance_index];
        const auto& docs = group_docs[tasks[t].group_index];
        InstanceOutput& out = slots[t];

        const double predicted = model_predict(model, inst.features);
        const Attribution imp = ensemble_attribution(
            model.ensemble, inst.features, GroundTruthMode::impurity);
        const Attribution freq = ensemble_attribution(
            model.ensemble, inst.features, GroundTruthMode::frequency);
        const double depth = path_depth(model.ensemble, inst.features);

        for (Technique tech : kTechniques) {
          Explanation expl;
          try {
            expl = tech == Technique::lirme
                       ? lirme_explain(score_fn, inst.features, stats,
                                       cfg.lirme, inst.qid, inst.docid)
                       : exs_explain(score_fn, docs, inst.features, stats,
                                     cfg.exs, inst.qid, inst.docid);
          } catch (const ExplainError& e) {
            out.skips.push_back({inst.qid, inst.docid, tech, e.what()});
            continue;
          }

          ExplanationRow row;
          row.qid = inst.qid;
          row.docid = inst.docid;
          row.technique = tech;
          row.model_kind = kind_name;
          row.weights = expl.weights;
          row.gt_impurity = imp.scores;
          row.gt_impurity_bias = imp.bias;
          row.gt_frequency = freq.scores;
          row.path_depth = depth;
          row.predicted_score = predicted;
          out.rows.push_back(std::move(row));

          for (GroundTruthMode mode : kModes) {
            const auto& gt = mode == GroundTruthMode::impurity ? imp.scores
                                                               : freq.scores;
            for (Metric metric : kMetrics) {
              const SimilarityResult res =
                  metric_result(metric, expl.weights, gt, cfg.default_k);
              out.records.push_back({inst.qid, inst.docid, tech, mode, metric,
                                     res.value, res.defined, depth});
            }
          }
        }
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        failed.store(true);
        break;
      }
    }
  };

  const std::size_t worker_count = std::min<std::size_t>(
      static_cast<std::size_t>(cfg.threads), tasks.size());
  if (worker_count <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t i = 0; i < worker_count; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (first_error) std::rethrow_exception(first_error);

  EvalResult result;
  for (auto& slot : slots) {
    std::move(slot.rows.begin(), slot.rows.end(),
              std::back_inserter(result.rows));
    std::move(slot.records.begin(), slot.records.end(),
              std::back_inserter(result.records));
    std::move(slot.skips.begin(), slot.skips.end(),
              std::back_inserter(result.skips));
  }
  sort_result(result);
  return result;
}

namespace {

struct Accumulator {
  std::vector<double> values;
  int n_undefined = 0;
};

DistSummary summarize(Accumulator& acc) {
  DistSummary s;
  s.n_defined = static_cast<int>(acc.values.size());
  s.n_undefined = acc.n_undefined;
  if (acc.values.empty()) return s;
  const double n = static_cast<double>(acc.values.size());
  double mean = 0.0;
  for (double v : acc.values) mean += v;
  mean /= n;
  double var = 0.0;
  for (double v : acc.values) var += (v - mean) * (v - mean);
  s.mean = mean;
  s.stddev = std::sqrt(var / n);
  std::sort(acc.values.begin(), acc.values.end());
  s.q1 = quantile_linear(acc.values, 0.25);
  s.median = quantile_linear(acc.values, 0.50);
  s.q3 = quantile_linear(acc.values, 0.75);
  return s;
}

}  // namespace

std::vector<AggregateCell> aggregate(const std::vector<EvalRecord>& records) {
  if (records.empty())
    throw std::invalid_argument("aggregate of an empty record list");
  std::map<std::tuple<int, int, int>, Accumulator> cells;
  for (const auto& rec : records) {
    auto& acc = cells[{static_cast<int>(rec.technique),
                       static_cast<int>(rec.gt_mode),
                       static_cast<int>(rec.metric)}];
    if (rec.defined)
      acc.values.push_back(rec.value);
    else
      ++acc.n_undefined;
  }
  std::vector<AggregateCell> out;
  for (auto& [key, acc] : cells) {
    AggregateCell cell;
    cell.technique = static_cast<Technique>(std::get<0>(key));
    cell.gt_mode = static_cast<GroundTruthMode>(std::get<1>(key));
    cell.metric = static_cast<Metric>(std::get<2>(key));
    cell.n_defined = static_cast<int>(acc.values.size());
    cell.n_undefined = acc.n_undefined;
    if (!acc.values.empty()) {
      const double n = static_cast<double>(acc.values.size());
      double mean = 0.0;
      for (double v : acc.values) mean += v;
      mean /= n;
      double var = 0.0;
      for (double v : acc.values) var += (v - mean) * (v - mean);
      cell.mean = mean;
      cell.stddev = std::sqrt(var / n);
    }
    out.push_back(std::move(cell));
  }
  return out;
}

std::vector<SweepCell> sweep_k(const std::vector<ExplanationRow>& rows,
                               const std::vector<int>& k_values) {
  if (rows.empty()) throw std::invalid_argument("sweep_k over no rows");
  if (k_values.empty()) throw std::invalid_argument("sweep_k needs K values");
  std::vector<int> ks(k_values);
  std::sort(ks.begin(), ks.end());
  ks.erase(std::unique(ks.begin(), ks.end()), ks.end());

  std::map<std::tuple<int, int, int>, Accumulator> cells;
  for (const auto& row : rows) {
    for (GroundTruthMode mode : kModes) {
      const auto& gt = mode == GroundTruthMode::impurity ? row.gt_impurity
                                                         : row.gt_frequency;
      for (int k : ks) {
        const SimilarityResult res = topk_auc(row.weights, gt, k);
        auto& acc = cells[{static_cast<int>(row.technique),
                           static_cast<int>(mode), k}];
        if (res.defined)
          acc.values.push_back(res.value);
        else
          ++acc.n_undefined;
      }
    }
  }
  std::vector<SweepCell> out;
  for (auto& [key, acc] : cells) {
    SweepCell cell;
    cell.technique = static_cast<Technique>(std::get<0>(key));
    cell.gt_mode = static_cast<GroundTruthMode>(std::get<1>(key));
    cell.k = std::get<2>(key);
    cell.summary = summarize(acc);
    out.push_back(std::move(cell));
  }
  return out;
}

std::vector<DepthCell> depth_buckets(const std::vector<ExplanationRow>& rows,
                                     const std::vector<EvalRecord>& records) {
  if (rows.empty() || records.empty())
    throw std::invalid_argument("depth_buckets over empty inputs");
  std::map<std::tuple<int, int, int, long>, Accumulator> cells;
  for (const auto& rec : records) {
    const long bucket = std::lround(rec.path_depth);
    auto& acc = cells[{static_cast<int>(rec.technique),
                       static_cast<int>(rec.gt_mode),
                       static_cast<int>(rec.metric), bucket}];
    if (rec.defined)
      acc.values.push_back(rec.value);
    else
      ++acc.n_undefined;
  }
  std::vector<DepthCell> out;
  for (auto& [key, acc] : cells) {
    DepthCell cell;
    cell.technique = static_cast<Technique>(std::get<0>(key));
    cell.gt_mode = static_cast<GroundTruthMode>(std::get<1>(key));
    cell.metric = static_cast<Metric>(std::get<2>(key));
    cell.depth_bucket = std::get<3>(key);
    cell.summary = summarize(acc);
    out.push_back(std::move(cell));
  }
  return out;
}

namespace {

void write_file_atomic(const fs::path& path, const std::string& content) {
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << content;
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  fs::rename(tmp, path);
}

ordered_json row_to_json(const ExplanationRow& row) {
  ordered_json j;
  j["qid"] = row.qid;
  j["docid"] = row.docid;
  j["technique"] = technique_name(row.technique);
  j["model"] = row.model_kind;
  j["weights"] = row.weights;
  j["gt_impurity"] = row.gt_impurity;
  j["gt_impurity_bias"] = row.gt_impurity_bias;
  j["gt_frequency"] = row.gt_frequency;
  j["path_depth"] = row.path_depth;
  j["predicted_score"] = row.predicted_score;
  return j;
}

ExplanationRow row_from_json(const ordered_json& j) {
  ExplanationRow row;
  row.qid = j.at("qid").get<std::string>();
  row.docid = j.at("docid").get<std::string>();
  row.technique = technique_from_name(j.at("technique").get<std::string>());
  row.model_kind = j.at("model").get<std::string>();
  row.weights = j.at("weights").get<std::vector<double>>();
  row.gt_impurity = j.at("gt_impurity").get<std::vector<double>>();
  row.gt_impurity_bias = j.at("gt_impurity_bias").get<double>();
  row.gt_frequency = j.at("gt_frequency").get<std::vector<double>>();
  row.path_depth = j.at("path_depth").get<double>();
  row.predicted_score = j.at("predicted_score").get<double>();
  return row;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const auto comma = line.find(',', start);
    if (comma == std::string::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

}  // namespace

void write_outputs(const EvalResult& result,
                   const std::vector<AggregateCell>& summary,
                   const std::vector<SweepCell>& sweep,
                   const std::vector<DepthCell>& depth,
                   const std::string& out_dir) {
  const fs::path dir(out_dir);
  fs::create_directories(dir);

  std::string jsonl;
  for (const auto& row : result.rows) {
    jsonl += row_to_json(row).dump();
    jsonl += '\n';
  }
  write_file_atomic(dir / "explanations.jsonl", jsonl);

  std::string records = "qid,docid,technique,gt_mode,metric,value,defined,path_depth\n";
  for (const auto& rec : result.records) {
    records += rec.qid + ',' + rec.docid + ',' + technique_name(rec.technique) +
               ',' + ground_truth_mode_name(rec.gt_mode) + ',' +
               metric_name(rec.metric) + ',' + g17(rec.value) + ',' +
               (rec.defined ? "true" : "false") + ',' + g17(rec.path_depth) +
               '\n';
  }
  write_file_atomic(dir / "records.csv", records);

  std::string summary_csv =
      "technique,gt_mode,metric,mean,std_population,n_defined,n_undefined\n";
  for (const auto& cell : summary) {
    summary_csv += technique_name(cell.technique) + ',' +
                   ground_truth_mode_name(cell.gt_mode) + ',' +
                   metric_name(cell.metric) + ',' + opt_g17(cell.mean) + ',' +
                   opt_g17(cell.stddev) + ',' + std::to_string(cell.n_defined) +
                   ',' + std::to_string(cell.n_undefined) + '\n';
  }
  write_file_atomic(dir / "summary.csv", summary_csv);

  std::string sweep_csv =
      "technique,gt_mode,k,mean,std_population,q1,median,q3,n_defined,n_undefined\n";
  for (const auto& cell : sweep) {
    sweep_csv += technique_name(cell.technique) + ',' +
                 ground_truth_mode_name(cell.gt_mode) + ',' +
                 std::to_string(cell.k) + ',' + opt_g17(cell.summary.mean) +
                 ',' + opt_g17(cell.summary.stddev) + ',' +
                 opt_g17(cell.summary.q1) + ',' + opt_g17(cell.summary.median) +
                 ',' + opt_g17(cell.summary.q3) + ',' +
                 std::to_string(cell.summary.n_defined) + ',' +
                 std::to_string(cell.summary.n_undefined) + '\n';
  }
  write_file_atomic(dir / "sweep_k.csv", sweep_csv);

  std::string depth_csv =
      "technique,gt_mode,metric,depth_bucket,mean,std_population,q1,median,q3,"
      "n_defined,n_undefined\n";
  for (const auto& cell : depth) {
    depth_csv += technique_name(cell.technique) + ',' +
                 ground_truth_mode_name(cell.gt_mode) + ',' +
                 metric_name(cell.metric) + ',' +
                 std::to_string(cell.depth_bucket) + ',' +
                 opt_g17(cell.summary.mean) + ',' +
                 opt_g17(cell.summary.stddev) + ',' + opt_g17(cell.summary.q1) +
                 ',' + opt_g17(cell.summary.median) + ',' +
                 opt_g17(cell.summary.q3) + ',' +
                 std::to_string(cell.summary.n_defined) + ',' +
                 std::to_string(cell.summary.n_undefined) + '\n';
  }
  write_file_atomic(dir / "depth.csv", depth_csv);

  std::string skips;
  for (const auto& skip : result.skips) {
    skips += skip.qid + '\t' + skip.docid + '\t' + technique_name(skip.technique) +
             '\t' + skip.reason + '\n';
  }
  write_file_atomic(dir / "skips.log", skips);
}

std::vector<ExplanationRow> read_explanations_jsonl(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::vector<ExplanationRow> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    rows.push_back(row_from_json(ordered_json::parse(line)));
  }
  return rows;
}

std::vector<EvalRecord> read_records_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::vector<EvalRecord> records;
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (header) {
      header = false;
      continue;
    }
    const auto fields = split_csv_line(line);
    if (fields.size() != 8)
      throw std::runtime_error("malformed record line: " + line);
    EvalRecord rec;
    rec.qid = fields[0];
    rec.docid = fields[1];
    rec.technique = technique_from_name(fields[2]);
    rec.gt_mode = ground_truth_mode_from_name(fields[3]);
    rec.metric = metric_from_name(fields[4]);
    rec.value = std::strtod(fields[5].c_str(), nullptr);
    rec.defined = fields[6] == "true";
    rec.path_depth = std::strtod(fields[7].c_str(), nullptr);
    records.push_back(std::move(rec));
  }
  return records;
}

AuditReport audit_outputs(const std::string& out_dir, int default_k) {
  const fs::path dir(out_dir);
  const auto rows = read_explanations_jsonl((dir / "explanations.jsonl").string());
  const auto records = read_records_csv((dir / "records.csv").string());

  std::map<std::tuple<std::string, std::string, int>, const ExplanationRow*>
      row_index;
  for (const auto& row : rows)
    row_index[{row.qid, row.docid, static_cast<int>(row.technique)}] = &row;

  AuditReport report;
  for (const auto& rec : records) {
    ++report.checked;
    const auto it =
        row_index.find({rec.qid, rec.docid, static_cast<int>(rec.technique)});
    if (it == row_index.end()) {
      ++report.mismatches;
      continue;
    }
    const ExplanationRow& row = *it->second;
    const auto& gt = rec.gt_mode == GroundTruthMode::impurity
                         ? row.gt_impurity
                         : row.gt_frequency;
    const SimilarityResult res =
        metric_result(rec.metric, row.weights, gt, default_k);
    const bool value_matches =
        res.defined == rec.defined && (!rec.defined || res.value == rec.value);
    if (!value_matches || row.path_depth != rec.path_depth) ++report.mismatches;
  }
  return report;
}

PipelineResult run_eval(const PipelineConfig& cfg) {
  Dataset train, valid, test;
  if (cfg.train_path.empty()) {
    train = synth_dataset(derive_seed(cfg.seed, "synth", "train"),
                          cfg.synth_queries, cfg.synth_docs, cfg.synth_features);
    valid = synth_dataset(derive_seed(cfg.seed, "synth", "valid"),
                          cfg.synth_queries, cfg.synth_docs, cfg.synth_features);
    test = synth_dataset(derive_seed(cfg.seed, "synth", "test"),
                         cfg.synth_queries, cfg.synth_docs, cfg.synth_features);
  } else {
    if (cfg.valid_path.empty() || cfg.test_path.empty())
      throw std::invalid_argument("train/valid/test paths must all be set");
    train = parse_letor_file(cfg.train_path);
    valid = parse_letor_file(cfg.valid_path);
    test = parse_letor_file(cfg.test_path);
  }

  const FeatureStats stats = compute_feature_stats(train);

  PipelineResult result;
  const std::uint64_t search_seed = derive_seed(cfg.seed, "search",
                                                model_kind_name(cfg.model_kind));
  if (cfg.model_kind == ModelKind::decision_tree) {
    const auto search =
        random_search_tree(train, valid, cfg.search_trials, search_seed);
    const auto X = feature_matrix(train);
    const auto labels = label_vector(train);
    std::vector<double> y(labels.begin(), labels.end());
    result.model = make_tree_model(
        fit_regression_tree(X, y, search.best_params, nullptr));
    result.validation_metric = search.best_mse;
  } else {
    const auto search = random_search_lambdamart(
        train, valid, cfg.search_trials, search_seed, cfg.learning_rate,
        cfg.sigma, cfg.max_trees);
    result.model = make_lambdamart_model(
        fit_lambdamart(feature_matrix(train), label_vector(train),
                       split_queries(train), search.best_params));
    result.validation_metric = search.best_ndcg;
  }

  EvalConfig ec;
  ec.lirme = cfg.lirme;
  ec.exs = cfg.exs;
  ec.lirme.seed = cfg.seed;
  ec.exs.seed = cfg.seed;
  ec.default_k = cfg.default_k;
  ec.threads = cfg.threads;

  result.eval = evaluate_explanations(result.model, test, split_queries(test),
                                      stats, ec);
  if (!result.eval.records.empty()) result.summary = aggregate(result.eval.records);
  if (!result.eval.rows.empty()) {
    result.sweep = sweep_k(result.eval.rows, cfg.k_values);
    result.depth = depth_buckets(result.eval.rows, result.eval.records);
  }

  if (!cfg.out_dir.empty())
    write_outputs(result.eval, result.summary, result.sweep, result.depth,
                  cfg.out_dir);
  return result;
}

}  // namespace ltrex
