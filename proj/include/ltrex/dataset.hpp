#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace ltrex {

// One labeled document: a dense feature vector with a relevance grade,
// attached to a query.
struct Instance {
  std::string qid;
  std::string docid;
  int label = 0;
  std::vector<double> features;
};

struct Dataset {
  std::size_t feature_count = 0;
  std::vector<Instance> instances;

  bool empty() const { return instances.empty(); }
  std::size_t size() const { return instances.size(); }
};

// Indices into Dataset::instances that share one qid, in file order.
struct QueryGroup {
  std::string qid;
  std::vector<std::size_t> member_indices;
};

struct Quartiles {
  double q1 = 0.0;
  double q2 = 0.0;
  double q3 = 0.0;
};

// Per-feature summary of a dataset: arithmetic means, empirical quartile
// boundaries, and the observed value range.
struct FeatureStats {
  std::vector<double> means;
  std::vector<Quartiles> quartiles;
  std::vector<double> mins;
  std::vector<double> maxs;

  std::size_t feature_count() const { return means.size(); }
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& message);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Parses SVMlight/LETOR lines: `<label> qid:<id> <idx>:<val> ... [#comment]`.
// Feature indices are 1-based; indices missing from a line are filled with
// 0.0 once the global feature count (max index seen) is known. A
// `docid = <token>` fragment in the comment is captured as the document id;
// otherwise the 1-based line number is used.
Dataset parse_letor(std::istream& in);
Dataset parse_letor(const std::string& text);
Dataset parse_letor_file(const std::string& path);

// Inverse of parse_letor; feature values at 17 significant digits so a
// round trip reproduces the dataset exactly.
std::string serialize_letor(const Dataset& ds);

// One group per distinct qid, in first-appearance order. Groups partition
// the instance list.
std::vector<QueryGroup> split_queries(const Dataset& ds);

// Empirical quantile with linear interpolation between the closest order
// statistics: x_(k) + frac * (x_(k+1) - x_(k)) at position p * (n - 1).
// `sorted_values` must be ascending and non-empty.
double quantile_linear(const std::vector<double>& sorted_values, double p);

FeatureStats compute_feature_stats(const Dataset& ds);

// 1-based quartile bucket of `value`: intervals are closed on the right,
// so exactly Q2 maps to bucket 2 and anything above Q3 to bucket 4.
int quartile_index(double value, const Quartiles& q);

// Deterministic synthetic ranking data: features uniform in [0, 1], labels
// in {0, 1, 2} assigned per query by ranking a fixed sparse linear score of
// the features (plus noise), so trees have signal to learn.
Dataset synth_dataset(std::uint64_t seed, int num_queries, int docs_per_query,
                      int feature_count);

}  // namespace ltrex
