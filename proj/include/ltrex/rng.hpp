#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace ltrex {

// Deterministic random source. std::mt19937_64 is fully specified by the
// standard; the distribution classes are not, so every draw goes through the
// hand-rolled transforms below and results are reproducible across builds.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1).
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform on [lo, hi].
  double uniform(double lo, double hi) { return lo + uniform() * (hi - lo); }

  // Uniform on {lo, ..., hi} inclusive. Modulo bias is below 2^-57 for the
  // spans used here (<= a few hundred).
  int uniform_int(int lo, int hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<int>(next_u64() % span);
  }

 private:
  std::mt19937_64 engine_;
};

// Stable substream seed for one (qid, docid) work item, so per-instance
// results do not depend on evaluation order or thread scheduling.
std::uint64_t derive_seed(std::uint64_t global_seed, std::string_view qid,
                          std::string_view docid);

}  // namespace ltrex
