#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "ltrex/dataset.hpp"
#include "ltrex/rng.hpp"

using namespace ltrex;

TEST_CASE("parse_letor reads a dense line with a docid comment") {
  const auto ds = parse_letor(
      "2 qid:10 1:0.786 2:0.0 3:0.722 4:0.780 #docid=GX001\n");
  REQUIRE(ds.size() == 1);
  CHECK(ds.feature_count == 4);
  const auto& inst = ds.instances[0];
  CHECK(inst.qid == "10");
  CHECK(inst.docid == "GX001");
  CHECK(inst.label == 2);
  CHECK(inst.features == std::vector<double>{0.786, 0.0, 0.722, 0.780});
}

TEST_CASE("parse_letor handles empty input") {
  const auto ds = parse_letor(std::string{});
  CHECK(ds.feature_count == 0);
  CHECK(ds.empty());
}

TEST_CASE("parse_letor rejects a line without a leading label") {
  CHECK_THROWS_AS(parse_letor("qid:3 1:0.5\n"), ParseError);
  try {
    parse_letor("\n\nqid:3 1:0.5\n");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
}

TEST_CASE("parse_letor rejects malformed feature tokens") {
  CHECK_THROWS_AS(parse_letor("1 qid:1 1:abc\n"), ParseError);
  CHECK_THROWS_AS(parse_letor("1 qid:1 1:0.5 1:0.7\n"), ParseError);
  CHECK_THROWS_AS(parse_letor("1.5 qid:1 1:0.5\n"), ParseError);
  CHECK_THROWS_AS(parse_letor("1 qid:1 0:0.5\n"), ParseError);
}

TEST_CASE("parse_letor fills missing indices and spans the max index") {
  const auto ds = parse_letor("0 qid:1 3:1.5\n1 qid:1 1:2.0 5:0.25\n");
  CHECK(ds.feature_count == 5);
  CHECK(ds.instances[0].features == std::vector<double>{0, 0, 1.5, 0, 0});
  CHECK(ds.instances[1].features == std::vector<double>{2.0, 0, 0, 0, 0.25});
}

TEST_CASE("parse_letor docid defaults to the line number") {
  const auto ds = parse_letor("0 qid:1 1:1\n\n2 qid:1 1:2 # inc = 0.5\n");
  REQUIRE(ds.size() == 2);
  CHECK(ds.instances[0].docid == "1");
  CHECK(ds.instances[1].docid == "3");
}

TEST_CASE("parse_letor accepts spaced docid fragments") {
  const auto ds =
      parse_letor("0 qid:1 1:1 #docid = GX008-86 inc = 1 prob = 0.08\n");
  CHECK(ds.instances[0].docid == "GX008-86");
}

TEST_CASE("parse_letor rejects duplicate (qid, docid) pairs") {
  CHECK_THROWS_AS(
      parse_letor("0 qid:1 1:1 #docid = a\n1 qid:1 1:2 #docid = a\n"),
      ParseError);
}

TEST_CASE("split_queries groups by first appearance") {
  Dataset ds;
  ds.feature_count = 1;
  for (const char* qid : {"a", "a", "b"})
    ds.instances.push_back({qid, std::to_string(ds.size()), 0, {0.0}});
  auto groups = split_queries(ds);
  REQUIRE(groups.size() == 2);
  CHECK(groups[0].qid == "a");
  CHECK(groups[0].member_indices == std::vector<std::size_t>{0, 1});
  CHECK(groups[1].member_indices == std::vector<std::size_t>{2});

  CHECK(split_queries(Dataset{}).empty());

  Dataset interleaved;
  interleaved.feature_count = 1;
  for (const char* qid : {"a", "b", "a"})
    interleaved.instances.push_back(
        {qid, std::to_string(interleaved.size()), 0, {0.0}});
  groups = split_queries(interleaved);
  REQUIRE(groups.size() == 2);
  CHECK(groups[0].member_indices == std::vector<std::size_t>{0, 2});
  CHECK(groups[1].member_indices == std::vector<std::size_t>{1});
}

TEST_CASE("split_queries partitions the instance list") {
  const auto ds = synth_dataset(7, 13, 6, 4);
  const auto groups = split_queries(ds);
  std::set<std::size_t> seen;
  for (const auto& g : groups) {
    CHECK(!g.member_indices.empty());
    for (auto i : g.member_indices) {
      CHECK(ds.instances[i].qid == g.qid);
      CHECK(seen.insert(i).second);  // disjoint
    }
  }
  CHECK(seen.size() == ds.size());  // cover
}

TEST_CASE("feature stats quartiles follow the interpolation rule") {
  Dataset ds;
  ds.feature_count = 1;
  for (double v : {0.0, 1.0, 2.0, 3.0})
    ds.instances.push_back({"q", std::to_string(ds.size()), 0, {v}});
  const auto stats = compute_feature_stats(ds);
  CHECK(stats.quartiles[0].q1 == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(stats.quartiles[0].q2 == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(stats.quartiles[0].q3 == doctest::Approx(2.25).epsilon(1e-12));
  CHECK(stats.means[0] == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(stats.mins[0] == 0.0);
  CHECK(stats.maxs[0] == 3.0);
}

TEST_CASE("feature stats on constant and singleton features") {
  Dataset ds;
  ds.feature_count = 1;
  for (int i = 0; i < 5; ++i)
    ds.instances.push_back({"q", std::to_string(i), 0, {0.7}});
  auto stats = compute_feature_stats(ds);
  CHECK(stats.quartiles[0].q1 == 0.7);
  CHECK(stats.quartiles[0].q2 == 0.7);
  CHECK(stats.quartiles[0].q3 == 0.7);
  CHECK(stats.means[0] == doctest::Approx(0.7).epsilon(1e-12));

  Dataset single;
  single.feature_count = 1;
  single.instances.push_back({"q", "d", 0, {5.0}});
  stats = compute_feature_stats(single);
  CHECK(stats.means[0] == 5.0);
  CHECK(stats.quartiles[0].q1 == 5.0);
  CHECK(stats.quartiles[0].q3 == 5.0);

  CHECK_THROWS_AS(compute_feature_stats(Dataset{}), std::invalid_argument);
}

TEST_CASE("stats means match the arithmetic mean within 1e-12 relative") {
  const auto ds = synth_dataset(11, 9, 7, 5);
  const auto stats = compute_feature_stats(ds);
  for (std::size_t f = 0; f < ds.feature_count; ++f) {
    double sum = 0.0;
    for (const auto& inst : ds.instances) sum += inst.features[f];
    const double mean = sum / double(ds.size());
    CHECK(std::abs(stats.means[f] - mean) <= 1e-12 * std::abs(mean));
  }
}

TEST_CASE("quartile_index maps boundaries to the right buckets") {
  const Quartiles q{1.0, 2.0, 3.0};
  CHECK(quartile_index(0.5, q) == 1);
  CHECK(quartile_index(1.0, q) == 1);
  CHECK(quartile_index(2.0, q) == 2);  // boundary closed on the right
  CHECK(quartile_index(2.5, q) == 3);
  CHECK(quartile_index(3.5, q) == 4);

  const Quartiles degenerate{0.7, 0.7, 0.7};
  CHECK(quartile_index(0.7, degenerate) == 1);
  CHECK(quartile_index(0.7 + 1e-12, degenerate) == 4);

  CHECK_THROWS_AS(quartile_index(std::nan(""), q), std::invalid_argument);
}

TEST_CASE("quartile_index is monotone in the value") {
  Rng rng(404);
  for (int trial = 0; trial < 200; ++trial) {
    double b1 = rng.uniform(), b2 = rng.uniform(), b3 = rng.uniform();
    if (b1 > b2) std::swap(b1, b2);
    if (b2 > b3) std::swap(b2, b3);
    if (b1 > b2) std::swap(b1, b2);
    const Quartiles q{b1, b2, b3};
    const double v1 = rng.uniform(-0.5, 1.5);
    const double v2 = rng.uniform(-0.5, 1.5);
    const double lo = std::min(v1, v2), hi = std::max(v1, v2);
    CHECK(quartile_index(lo, q) <= quartile_index(hi, q));
  }
}

TEST_CASE("quartile buckets hold about a quarter of the data each") {
  const auto ds = synth_dataset(27, 20, 10, 6);
  const auto stats = compute_feature_stats(ds);
  const double n = double(ds.size());
  for (std::size_t f = 0; f < ds.feature_count; ++f) {
    int counts[5] = {0, 0, 0, 0, 0};
    int boundary_ties = 0;
    for (const auto& inst : ds.instances) {
      const double v = inst.features[f];
      ++counts[quartile_index(v, stats.quartiles[f])];
      if (v == stats.quartiles[f].q1 || v == stats.quartiles[f].q2 ||
          v == stats.quartiles[f].q3)
        ++boundary_ties;
    }
    for (int b = 1; b <= 4; ++b)
      CHECK(std::abs(counts[b] - n / 4.0) <= boundary_ties + 1.0);
  }
}

TEST_CASE("synth_dataset is deterministic and respects counts") {
  const auto a = synth_dataset(42, 50, 10, 8);
  const auto b = synth_dataset(42, 50, 10, 8);
  CHECK(serialize_letor(a) == serialize_letor(b));
  CHECK(a.size() == 500);
  CHECK(split_queries(a).size() == 50);

  const auto c = synth_dataset(43, 50, 10, 8);
  CHECK(serialize_letor(a) != serialize_letor(c));
}

TEST_CASE("synth_dataset labels stay in {0, 1, 2}") {
  for (std::uint64_t seed : {1ULL, 9ULL, 77ULL}) {
    const auto ds = synth_dataset(seed, 12, 7, 3);
    for (const auto& inst : ds.instances) {
      CHECK(inst.label >= 0);
      CHECK(inst.label <= 2);
    }
    bool any_positive = false;
    for (const auto& inst : ds.instances) any_positive |= inst.label > 0;
    CHECK(any_positive);
  }
}

TEST_CASE("serialize/parse round trip reproduces the dataset") {
  for (std::uint64_t seed : {3ULL, 123ULL}) {
    const auto ds = synth_dataset(seed, 8, 5, 6);
    const auto reparsed = parse_letor(serialize_letor(ds));
    REQUIRE(reparsed.size() == ds.size());
    CHECK(reparsed.feature_count == ds.feature_count);
    for (std::size_t i = 0; i < ds.size(); ++i) {
      CHECK(reparsed.instances[i].qid == ds.instances[i].qid);
      CHECK(reparsed.instances[i].docid == ds.instances[i].docid);
      CHECK(reparsed.instances[i].label == ds.instances[i].label);
      CHECK(reparsed.instances[i].features == ds.instances[i].features);
    }
    CHECK(serialize_letor(reparsed) == serialize_letor(ds));
  }
}
