#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "ltrex/attribution.hpp"
#include "ltrex/dataset.hpp"
#include "ltrex/harness.hpp"
#include "ltrex/rng.hpp"

using namespace ltrex;
using namespace ltrex::testing;

TEST_CASE("reference fixture reproduces the path decomposition") {
  const auto tree = reference_tree();
  const auto x = reference_instance();

  const auto imp = impurity_attribution(tree, x);
  CHECK(imp.bias == doctest::Approx(0.375).epsilon(1e-12));
  CHECK(imp.scores[kLmirJmUrl] == doctest::Approx(0.231).epsilon(1e-9));
  CHECK(imp.scores[kLmirAbsTitle] == doctest::Approx(-0.074).epsilon(1e-9));
  CHECK(imp.scores[kBm25Body] == doctest::Approx(-0.074).epsilon(1e-9));
  CHECK(imp.scores[kBm25Title] == doctest::Approx(0.057).epsilon(1e-9));

  double total = imp.bias;
  for (double s : imp.scores) total += s;
  CHECK(std::abs(total - tree_predict(tree, x)) <= 1e-12);

  const auto freq = frequency_attribution(tree, x);
  CHECK(freq.bias == 0.0);
  for (int f : {kLmirJmUrl, kLmirAbsTitle, kBm25Body, kBm25Title})
    CHECK(freq.scores[f] == 0.25);
}

TEST_CASE("single-leaf tree attribution") {
  RegressionTree stump;
  stump.feature_count = 3;
  stump.nodes = {leaf(0.9, 1.0)};
  const std::vector<double> x = {0.0, 0.0, 0.0};

  const auto imp = impurity_attribution(stump, x);
  CHECK(imp.bias == 0.9);
  CHECK(imp.scores == std::vector<double>{0.0, 0.0, 0.0});

  const auto freq = frequency_attribution(stump, x);
  CHECK(freq.scores == std::vector<double>{0.0, 0.0, 0.0});
  CHECK(path_depth(stump, x) == 0.0);
}

TEST_CASE("repeated split features accumulate their deltas") {
  // Path 0 -> 1 -> 2 splits twice on feature 0 with deltas +0.2 and -0.05.
  RegressionTree tree;
  tree.feature_count = 1;
  tree.nodes = {
      internal(0.30, 1.0, 0, 0.50, 1, 4),   // 0
      internal(0.50, 0.5, 0, 0.25, 2, 3),   // 1
      leaf(0.45, 0.25),                     // 2
      leaf(0.55, 0.25),                     // 3
      leaf(0.10, 0.5),                      // 4
  };
  const auto imp = impurity_attribution(tree, {0.1});
  CHECK(imp.scores[0] == doctest::Approx(0.15).epsilon(1e-12));
  CHECK(imp.bias == 0.30);
}

TEST_CASE("frequency counts split occurrences along the path") {
  // Path splits on [f1, f1, f2].
  RegressionTree tree;
  tree.feature_count = 3;
  tree.nodes = {
      internal(0.5, 1.0, 1, 0.5, 1, 6),     // 0
      internal(0.4, 0.5, 1, 0.25, 2, 5),    // 1
      internal(0.3, 0.25, 2, 0.5, 3, 4),    // 2
      leaf(0.2, 0.125),                     // 3
      leaf(0.4, 0.125),                     // 4
      leaf(0.5, 0.25),                      // 5
      leaf(0.6, 0.5),                       // 6
  };
  const std::vector<double> x = {0.0, 0.1, 0.3};
  const auto freq = frequency_attribution(tree, x);
  CHECK(freq.scores[1] == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(freq.scores[2] == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(freq.scores[0] == 0.0);
  CHECK(path_depth(tree, x) == 3.0);
}

TEST_CASE("frequency attribution ignores node value magnitudes") {
  auto tree = reference_tree();
  const auto x = reference_instance();
  const auto before = frequency_attribution(tree, x);
  for (auto& node : tree.nodes) node.value = node.value * 3.7 + 11.0;
  const auto after = frequency_attribution(tree, x);
  CHECK(before.scores == after.scores);
}

TEST_CASE("ensemble attribution averages per-tree attributions") {
  const auto tree = reference_tree();
  const auto x = reference_instance();

  BoostedEnsemble twin;
  twin.feature_count = 4;
  twin.trees = {tree, tree};
  const auto imp = ensemble_attribution(twin, x, GroundTruthMode::impurity);
  const auto single = impurity_attribution(tree, x);
  CHECK(imp.bias == single.bias);
  CHECK(imp.scores == single.scores);

  BoostedEnsemble one;
  one.feature_count = 4;
  one.trees = {tree};
  const auto only = ensemble_attribution(one, x, GroundTruthMode::frequency);
  CHECK(only.scores == frequency_attribution(tree, x).scores);
}

TEST_CASE("disjoint single-split trees average to half each") {
  RegressionTree t0, t1;
  t0.feature_count = t1.feature_count = 2;
  t0.nodes = {internal(0.5, 1.0, 0, 0.5, 1, 2), leaf(0.2, 0.5), leaf(0.8, 0.5)};
  t1.nodes = {internal(0.5, 1.0, 1, 0.5, 1, 2), leaf(0.3, 0.5), leaf(0.7, 0.5)};
  BoostedEnsemble ens;
  ens.feature_count = 2;
  ens.trees = {t0, t1};
  const auto freq =
      ensemble_attribution(ens, {0.1, 0.9}, GroundTruthMode::frequency);
  CHECK(freq.scores[0] == 0.5);
  CHECK(freq.scores[1] == 0.5);

  double sum = 0.0;
  for (double s : freq.scores) sum += s;
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("ensemble path depth averages tree depths") {
  // Chain trees of depth 2 and 4 along the all-left path: internal node i
  // has left child i+1 and a right leaf parked after the chain.
  auto chain = [](int depth) {
    RegressionTree t;
    t.feature_count = 1;
    for (int i = 0; i < depth; ++i)
      t.nodes.push_back(internal(0.0, 1.0, 0, 0.5, i + 1, depth + 1 + i));
    t.nodes.push_back(leaf(0.0, 0.5));  // terminal all-left leaf, id = depth
    for (int i = 0; i < depth; ++i) t.nodes.push_back(leaf(0.0, 0.5));
    return t;
  };
  BoostedEnsemble ens;
  ens.feature_count = 1;
  ens.trees = {chain(2), chain(4)};
  CHECK(path_depth(ens, {0.0}) == 3.0);

  BoostedEnsemble empty;
  CHECK_THROWS_AS(path_depth(empty, {0.0}), std::invalid_argument);
  CHECK_THROWS_AS(ensemble_attribution(empty, {0.0}, GroundTruthMode::impurity),
                  std::invalid_argument);
}

TEST_CASE("impurity sum identity holds on fitted trees") {
  const auto ds = synth_dataset(61, 25, 8, 5);
  std::vector<std::vector<double>> X;
  std::vector<double> y;
  for (const auto& inst : ds.instances) {
    X.push_back(inst.features);
    y.push_back(inst.label);
  }
  for (const TreeParams params :
       {TreeParams{2, 0.1, 0.1}, TreeParams{5, 0.05, 0.05},
        TreeParams{10, 0.01, 0.01}}) {
    const auto tree = fit_regression_tree(X, y, params);
    for (const auto& inst : ds.instances) {
      const auto imp = impurity_attribution(tree, inst.features);
      double total = imp.bias;
      for (double s : imp.scores) total += s;
      CHECK(std::abs(total - tree_predict(tree, inst.features)) <= 1e-9);
    }
  }
}

TEST_CASE("attribution support stays on the decision path") {
  const auto tree = reference_tree();
  const auto x = reference_instance();
  const auto path = decision_path(tree, x);
  std::vector<bool> on_path(tree.feature_count, false);
  for (std::size_t k = 0; k + 1 < path.size(); ++k)
    on_path[path[k].split_feature] = true;
  for (GroundTruthMode mode :
       {GroundTruthMode::impurity, GroundTruthMode::frequency}) {
    const auto attr = tree_attribution(tree, x, mode);
    for (std::size_t f = 0; f < attr.scores.size(); ++f)
      if (attr.scores[f] != 0.0) CHECK(on_path[f]);
  }
}
