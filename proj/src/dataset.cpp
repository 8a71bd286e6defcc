#include "ltrex/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <utility>

#include "ltrex/rng.hpp"

namespace ltrex {

ParseError::ParseError(std::size_t line, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ": " + message),
      line_(line) {}

namespace {

std::vector<std::string_view> tokenize(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

bool parse_int(std::string_view tok, long& out) {
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc{} && ptr == last;
}

bool parse_real(std::string_view tok, double& out) {
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc{} && ptr == last && std::isfinite(out);
}

// Extracts the value of a `docid = <token>` fragment, tolerating optional
// whitespace around '='. Returns empty if absent.
std::string find_docid(std::string_view comment) {
  std::size_t pos = comment.find("docid");
  while (pos != std::string_view::npos) {
    const bool at_boundary =
        pos == 0 ||
        std::isspace(static_cast<unsigned char>(comment[pos - 1])) != 0;
    if (at_boundary) {
      std::size_t p = pos + 5;
      while (p < comment.size() &&
             std::isspace(static_cast<unsigned char>(comment[p])))
        ++p;
      if (p < comment.size() && comment[p] == '=') {
        ++p;
        while (p < comment.size() &&
               std::isspace(static_cast<unsigned char>(comment[p])))
          ++p;
        std::size_t q = p;
        while (q < comment.size() &&
               !std::isspace(static_cast<unsigned char>(comment[q])))
          ++q;
        if (q > p) return std::string(comment.substr(p, q - p));
      }
    }
    pos = comment.find("docid", pos + 1);
  }
  return {};
}

struct RawInstance {
  std::string qid;
  std::string docid;
  int label = 0;
  std::vector<std::pair<std::size_t, double>> feats;  // (1-based idx, value)
};

}  // namespace

Dataset parse_letor(std::istream& in) {
  std::vector<RawInstance> raw;
  std::set<std::pair<std::string, std::string>> seen_ids;
  std::size_t max_index = 0;
  std::size_t lineno = 0;
  std::string line;

  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();

    std::string_view payload(line);
    std::string_view comment;
    if (auto hash = payload.find('#'); hash != std::string_view::npos) {
      comment = payload.substr(hash + 1);
      payload = payload.substr(0, hash);
    }

    const auto toks = tokenize(payload);
    if (toks.empty()) continue;  // blank line

    RawInstance inst;
    long label = 0;
    if (!parse_int(toks[0], label) || label < 0)
      throw ParseError(lineno, "expected non-negative integer label, got '" +
                                   std::string(toks[0]) + "'");
    inst.label = static_cast<int>(label);

    if (toks.size() < 2 || toks[1].substr(0, 4) != "qid:" ||
        toks[1].size() == 4)
      throw ParseError(lineno, "expected qid:<id> after the label");
    inst.qid = std::string(toks[1].substr(4));

    std::set<std::size_t> line_indices;
    for (std::size_t t = 2; t < toks.size(); ++t) {
      const auto tok = toks[t];
      const auto colon = tok.find(':');
      if (colon == std::string_view::npos)
        throw ParseError(lineno,
                         "expected <idx>:<val>, got '" + std::string(tok) + "'");
      long idx = 0;
      if (!parse_int(tok.substr(0, colon), idx) || idx < 1)
        throw ParseError(lineno, "feature index must be a positive integer");
      double val = 0.0;
      if (!parse_real(tok.substr(colon + 1), val))
        throw ParseError(lineno, "non-numeric feature value in '" +
                                     std::string(tok) + "'");
      if (!line_indices.insert(static_cast<std::size_t>(idx)).second)
        throw ParseError(lineno, "duplicate feature index " +
                                     std::to_string(idx) + " on one line");
      inst.feats.emplace_back(static_cast<std::size_t>(idx), val);
      max_index = std::max(max_index, static_cast<std::size_t>(idx));
    }

    inst.docid = find_docid(comment);
    if (inst.docid.empty()) inst.docid = std::to_string(lineno);
    if (!seen_ids.insert({inst.qid, inst.docid}).second)
      throw ParseError(lineno, "duplicate (qid, docid) pair: (" + inst.qid +
                                   ", " + inst.docid + ")");
    raw.push_back(std::move(inst));
  }

  Dataset ds;
  ds.feature_count = max_index;
  ds.instances.reserve(raw.size());
  for (auto& r : raw) {
    Instance inst;
    inst.qid = std::move(r.qid);
    inst.docid = std::move(r.docid);
    inst.label = r.label;
    inst.features.assign(max_index, 0.0);
    for (const auto& [idx, val] : r.feats) inst.features[idx - 1] = val;
    ds.instances.push_back(std::move(inst));
  }
  return ds;
}

Dataset parse_letor(const std::string& text) {
  std::istringstream in(text);
  return parse_letor(in);
}

Dataset parse_letor_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open dataset file: " + path);
  return parse_letor(in);
}

std::string serialize_letor(const Dataset& ds) {
  std::string out;
  char buf[64];
  for (const auto& inst : ds.instances) {
    out += std::to_string(inst.label);
    out += " qid:";
    out += inst.qid;
    for (std::size_t f = 0; f < inst.features.size(); ++f) {
      std::snprintf(buf, sizeof(buf), " %zu:%.17g", f + 1, inst.features[f]);
      out += buf;
    }
    out += " #docid = ";
    out += inst.docid;
    out += '\n';
  }
  return out;
}

std::vector<QueryGroup> split_queries(const Dataset& ds) {
  std::vector<QueryGroup> groups;
  std::map<std::string, std::size_t> index;  // qid -> position in groups
  for (std::size_t i = 0; i < ds.instances.size(); ++i) {
    const auto& qid = ds.instances[i].qid;
    auto [it, inserted] = index.try_emplace(qid, groups.size());
    if (inserted) groups.push_back({qid, {}});
    groups[it->second].member_indices.push_back(i);
  }
  return groups;
}

double quantile_linear(const std::vector<double>& sorted_values, double p) {
  if (sorted_values.empty())
    throw std::invalid_argument("quantile of empty sample");
  const std::size_t n = sorted_values.size();
  if (n == 1) return sorted_values[0];
  const double pos = p * static_cast<double>(n - 1);
  const auto k = static_cast<std::size_t>(std::floor(pos));
  const double gamma = pos - std::floor(pos);
  if (k + 1 >= n) return sorted_values[n - 1];
  return sorted_values[k] + gamma * (sorted_values[k + 1] - sorted_values[k]);
}

FeatureStats compute_feature_stats(const Dataset& ds) {
  if (ds.empty())
    throw std::invalid_argument("feature stats require a non-empty dataset");
  const std::size_t n = ds.size();
  const std::size_t d = ds.feature_count;
  FeatureStats stats;
  stats.means.resize(d);
  stats.quartiles.resize(d);
  stats.mins.resize(d);
  stats.maxs.resize(d);

  std::vector<double> column(n);
  for (std::size_t f = 0; f < d; ++f) {
    for (std::size_t i = 0; i < n; ++i) column[i] = ds.instances[i].features[f];
    stats.means[f] =
        std::accumulate(column.begin(), column.end(), 0.0) / double(n);
    std::sort(column.begin(), column.end());
    stats.mins[f] = column.front();
    stats.maxs[f] = column.back();
    stats.quartiles[f] = {quantile_linear(column, 0.25),
                          quantile_linear(column, 0.50),
                          quantile_linear(column, 0.75)};
  }
  return stats;
}

int quartile_index(double value, const Quartiles& q) {
  if (std::isnan(value))
    throw std::invalid_argument("quartile_index of NaN value");
  if (!(q.q1 <= q.q2 && q.q2 <= q.q3))
    throw std::invalid_argument("quartile boundaries must be ordered");
  if (value <= q.q1) return 1;
  if (value <= q.q2) return 2;
  if (value <= q.q3) return 3;
  return 4;
}

Dataset synth_dataset(std::uint64_t seed, int num_queries, int docs_per_query,
                      int feature_count) {
  if (num_queries < 1 || docs_per_query < 1 || feature_count < 1)
    throw std::invalid_argument("synth_dataset counts must be positive");

  // Fixed sparse signal over the first three features.
  const double signal[3] = {1.0, 0.8, 0.6};
  const int signal_dims = std::min(feature_count, 3);

  Rng rng(seed);
  Dataset ds;
  ds.feature_count = static_cast<std::size_t>(feature_count);

  std::size_t doc_counter = 0;
  for (int q = 0; q < num_queries; ++q) {
    const std::string qid = std::to_string(q + 1);
    std::vector<double> scores(docs_per_query);
    const std::size_t base = ds.instances.size();
    for (int i = 0; i < docs_per_query; ++i) {
      Instance inst;
      inst.qid = qid;
      char buf[32];
      std::snprintf(buf, sizeof(buf), "d%06zu", ++doc_counter);
      inst.docid = buf;
      inst.features.resize(feature_count);
      for (int f = 0; f < feature_count; ++f) inst.features[f] = rng.uniform();
      double s = 0.0;
      for (int f = 0; f < signal_dims; ++f) s += signal[f] * inst.features[f];
      s += 0.3 * rng.uniform();
      scores[i] = s;
      ds.instances.push_back(std::move(inst));
    }

    // Grade by within-query score rank: top ~20% get 2, next ~30% get 1.
    std::vector<int> order(docs_per_query);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      if (scores[a] != scores[b]) return scores[a] > scores[b];
      return a < b;
    });
    const int n2 = std::max(1, docs_per_query / 5);
    const int n1 = std::min(docs_per_query - n2,
                            std::max(1, (3 * docs_per_query) / 10));
    for (int r = 0; r < docs_per_query; ++r) {
      int label = 0;
      if (r < n2)
        label = 2;
      else if (r < n2 + n1)
        label = 1;
      ds.instances[base + order[r]].label = label;
    }
  }
  return ds;
}

}  // namespace ltrex
