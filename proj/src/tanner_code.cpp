#include "lpdec/tanner_code.hpp"

#include <algorithm>
#include <stdexcept>

#include "lpdec/alist.hpp"

namespace lpdec {

TannerCode TannerCode::from_check_neighbors(int n, std::vector<std::vector<int>> checks) {
  if (n < 1) throw std::invalid_argument("code must have at least one variable");
  if (checks.empty()) throw std::invalid_argument("code must have at least one check");
  TannerCode code;
  code.n_ = n;
  code.var_neighbors_.resize(n);
  for (int j = 0; j < static_cast<int>(checks.size()); ++j) {
    auto& row = checks[j];
    if (row.empty()) throw std::invalid_argument("check " + std::to_string(j) + " has degree 0");
    std::sort(row.begin(), row.end());
    if (std::adjacent_find(row.begin(), row.end()) != row.end())
      throw std::invalid_argument("check " + std::to_string(j) + " has a duplicate variable");
    if (row.front() < 0 || row.back() >= n)
      throw std::invalid_argument("check " + std::to_string(j) + " has an out-of-range variable");
    for (int i : row) code.var_neighbors_[i].push_back(j);
  }
  code.check_neighbors_ = std::move(checks);
  return code;
}

int TannerCode::max_check_degree() const {
  std::size_t d = 0;
  for (const auto& row : check_neighbors_) d = std::max(d, row.size());
  return static_cast<int>(d);
}

int TannerCode::max_var_degree() const {
  std::size_t d = 0;
  for (const auto& col : var_neighbors_) d = std::max(d, col.size());
  return static_cast<int>(d);
}

void QcSpec::validate() const {
  if (rows < 1 || cols < 1) throw std::invalid_argument("QcSpec: rows and cols must be >= 1");
  if (circulant_size < 1) throw std::invalid_argument("QcSpec: circulant_size must be >= 1");
  if (static_cast<int>(exponents.size()) != rows)
    throw std::invalid_argument("QcSpec: exponent row count mismatch");
  for (const auto& row : exponents) {
    if (static_cast<int>(row.size()) != cols)
      throw std::invalid_argument("QcSpec: exponent col count mismatch");
    for (int e : row)
      if (e < 0 || e >= circulant_size)
        throw std::invalid_argument("QcSpec: exponent out of [0, circulant_size)");
  }
}

TannerCode build_qc_code(const QcSpec& spec) {
  spec.validate();
  const int p = spec.circulant_size;
  const int n = spec.cols * p;
  std::vector<std::vector<int>> checks(static_cast<std::size_t>(spec.rows) * p);
  // Block (a,b): row r within the block has its 1 in column (r + shift) mod p.
  for (int a = 0; a < spec.rows; ++a)
    for (int r = 0; r < p; ++r) {
      auto& row = checks[static_cast<std::size_t>(a) * p + r];
      for (int b = 0; b < spec.cols; ++b) {
        const int c = (r + spec.exponents[a][b]) % p;
        row.push_back(b * p + c);
      }
    }
  return TannerCode::from_check_neighbors(n, std::move(checks));
}

int gf2_rank(const TannerCode& code) {
  const int n = code.num_vars();
  const int m = code.num_checks();
  const int words = (n + 63) / 64;
  std::vector<std::vector<std::uint64_t>> rows(m, std::vector<std::uint64_t>(words, 0));
  for (int j = 0; j < m; ++j)
    for (int i : code.check_neighbors(j)) rows[j][i >> 6] ^= 1ULL << (i & 63);

  int rank = 0;
  for (int col = 0; col < n && rank < m; ++col) {
    const int w = col >> 6;
    const std::uint64_t bit = 1ULL << (col & 63);
    int pivot = -1;
    for (int r = rank; r < m; ++r)
      if (rows[r][w] & bit) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    std::swap(rows[rank], rows[pivot]);
    for (int r = 0; r < m; ++r)
      if (r != rank && (rows[r][w] & bit))
        for (int t = 0; t < words; ++t) rows[r][t] ^= rows[rank][t];
    ++rank;
  }
  return rank;
}

TannerCode tanner_155() {
  QcSpec spec;
  spec.rows = 3;
  spec.cols = 5;
  spec.circulant_size = 31;
  spec.exponents.assign(3, std::vector<int>(5));
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 5; ++b) {
      // row multipliers from the order-3 subgroup, column multipliers from
      // the order-5 subgroup, so all 15 shifts are distinct
      long long v = 1;
      for (int t = 0; t < a; ++t) v = v * 5 % 31;
      for (int t = 0; t < b; ++t) v = v * 2 % 31;
      spec.exponents[a][b] = static_cast<int>(v);
    }
  return build_qc_code(spec);
}

std::string code_fingerprint(const TannerCode& code) {
  const std::string text = write_alist(code);
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

}  // namespace lpdec
