#pragma once

#include <cstdint>
#include <vector>

namespace lpdec {

// Splittable counter-based generator. Every consumer derives its own stream
// from (master seed, trial id, step id, ...) via fork(), so results do not
// depend on scheduling or worker count. Output is the SplitMix64 finalizer
// applied to key + counter * golden-ratio increment.
class SplitRng {
 public:
  explicit SplitRng(std::uint64_t key) : key_(key) {}

  // Child stream for substream id `stream`; independent of draws made here.
  SplitRng fork(std::uint64_t stream) const;

  std::uint64_t next_u64();

  // Uniform in [0, k), k >= 1. Rejection sampling, no modulo bias.
  std::uint64_t below(std::uint64_t k);

  // k distinct values from {0,...,n-1}, ascending. Partial Fisher-Yates.
  std::vector<int> subset(int n, int k);

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace lpdec
