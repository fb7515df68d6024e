#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace lpdec {

// Bipartite variable/check adjacency of a parity-check matrix H.
// Indices are 0-based everywhere in memory; the 1-based convention of the
// alist format and of CLI output is translated at those boundaries only.
// Immutable after construction and safe to share across threads.
class TannerCode {
 public:
  // `checks[j]` lists the variable neighbors of check j. Validates ranges,
  // duplicate-freeness and nonzero check degrees; throws std::invalid_argument.
  static TannerCode from_check_neighbors(int n, std::vector<std::vector<int>> checks);

  int num_vars() const { return n_; }
  int num_checks() const { return static_cast<int>(check_neighbors_.size()); }

  const std::vector<int>& check_neighbors(int j) const { return check_neighbors_[j]; }
  const std::vector<int>& var_neighbors(int i) const { return var_neighbors_[i]; }

  int max_check_degree() const;
  int max_var_degree() const;

  bool operator==(const TannerCode& other) const = default;

 private:
  TannerCode() = default;
  int n_ = 0;
  std::vector<std::vector<int>> check_neighbors_;
  std::vector<std::vector<int>> var_neighbors_;
};

// Quasi-cyclic layout: a rows x cols grid of p x p circulant permutation
// blocks, block (a,b) being the identity cyclically shifted by exponents[a][b].
struct QcSpec {
  int rows = 0;
  int cols = 0;
  int circulant_size = 0;
  std::vector<std::vector<int>> exponents;

  void validate() const;  // throws std::invalid_argument
};

TannerCode build_qc_code(const QcSpec& spec);

// Rank of H over GF(2), by bitset Gaussian elimination.
int gf2_rank(const TannerCode& code);

// The [155,64,20] quasi-cyclic code: 3x5 blocks of 31x31 circulants with
// exponent matrix 2^a * 5^b mod 31. H has 93 rows (GF(2) rank 91).
TannerCode tanner_155();

// FNV-1a over the canonical alist text; stable id for reports and CLI headers.
std::string code_fingerprint(const TannerCode& code);

}  // namespace lpdec
