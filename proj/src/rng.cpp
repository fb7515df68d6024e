#include "lpdec/rng.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace lpdec {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ULL;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBULL;
  z ^= z >> 31;
  return z;
}

}  // namespace

SplitRng SplitRng::fork(std::uint64_t stream) const {
  return SplitRng(mix64(key_ ^ mix64((stream + 1) * kGolden)));
}

std::uint64_t SplitRng::next_u64() { return mix64(key_ + (++counter_) * kGolden); }

std::uint64_t SplitRng::below(std::uint64_t k) {
  if (k == 0) throw std::invalid_argument("below(0)");
  if (k == 1) return 0;
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % k;
  std::uint64_t v;
  do {
    v = next_u64();
  } while (v >= limit);
  return v % k;
}

std::vector<int> SplitRng::subset(int n, int k) {
  if (k < 0 || k > n) throw std::invalid_argument("subset: k out of range");
  std::vector<int> pool(n);
  std::iota(pool.begin(), pool.end(), 0);
  for (int i = 0; i < k; ++i) {
    const int j = i + static_cast<int>(below(static_cast<std::uint64_t>(n - i)));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(k);
  std::sort(pool.begin(), pool.end());
  return pool;
}

}  // namespace lpdec
