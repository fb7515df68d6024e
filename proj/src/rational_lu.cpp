#include "lpdec/rational_lu.hpp"

#include <algorithm>

#include "lpdec/lp.hpp"

namespace lpdec {

namespace {

using SparseRow = std::vector<std::pair<int, Rational>>;

const Rational* find_entry(const SparseRow& row, int col) {
  auto it = std::lower_bound(row.begin(), row.end(), col,
                             [](const auto& e, int c) { return e.first < c; });
  if (it == row.end() || it->first != col) return nullptr;
  return &it->second;
}

// row -= mult * pivot, dropping entries that cancel exactly
SparseRow subtract_multiple(const SparseRow& row, const Rational& mult, const SparseRow& pivot) {
  SparseRow out;
  out.reserve(row.size() + pivot.size());
  size_t a = 0, b = 0;
  while (a < row.size() || b < pivot.size()) {
    if (b == pivot.size() || (a < row.size() && row[a].first < pivot[b].first)) {
      out.push_back(row[a++]);
    } else if (a == row.size() || pivot[b].first < row[a].first) {
      out.emplace_back(pivot[b].first, -mult * pivot[b].second);
      ++b;
    } else {
      Rational v = row[a].second - mult * pivot[b].second;
      if (v != 0) out.emplace_back(row[a].first, std::move(v));
      ++a;
      ++b;
    }
  }
  return out;
}

}  // namespace

RationalLu RationalLu::factor(int m, const std::vector<std::vector<std::pair<int, Rational>>>& cols) {
  RationalLu lu;
  lu.m_ = m;
  lu.pivot_row_.resize(m);
  lu.urows_.resize(m);
  lu.lsteps_.resize(m);

  std::vector<SparseRow> rows(m);
  for (int q = 0; q < m; ++q)
    for (const auto& [r, v] : cols[q])
      if (v != 0) rows[r].emplace_back(q, v);
  for (auto& row : rows) std::sort(row.begin(), row.end());

  std::vector<bool> alive(m, true);
  std::vector<int> position(m, -1);  // original row -> pivot position

  for (int k = 0; k < m; ++k) {
    int pivot = -1;
    size_t best_nnz = 0;
    for (int r = 0; r < m; ++r) {
      if (!alive[r]) continue;
      if (!find_entry(rows[r], k)) continue;
      if (pivot < 0 || rows[r].size() < best_nnz) {
        pivot = r;
        best_nnz = rows[r].size();
      }
    }
    if (pivot < 0)
      throw SolverError(SolverError::Kind::SingularBasis, "rational basis is singular");
    alive[pivot] = false;
    position[pivot] = k;
    lu.pivot_row_[k] = pivot;
    const Rational& diag = rows[pivot].front().second;  // sorted, leading col is k
    for (int r = 0; r < m; ++r) {
      if (!alive[r]) continue;
      const Rational* entry = find_entry(rows[r], k);
      if (!entry) continue;
      Rational mult = *entry / diag;
      rows[r] = subtract_multiple(rows[r], mult, rows[pivot]);
      lu.lsteps_[r].push_back({k, std::move(mult)});  // indexed by original row for now
    }
  }

  // lsteps_ was accumulated per original row; rekey it by pivot position
  std::vector<std::vector<LStep>> steps(m);
  for (int r = 0; r < m; ++r) steps[position[r]] = std::move(lu.lsteps_[r]);
  lu.lsteps_ = std::move(steps);
  for (int k = 0; k < m; ++k) lu.urows_[k] = std::move(rows[lu.pivot_row_[k]]);
  return lu;
}

std::vector<Rational> RationalLu::solve(const std::vector<Rational>& rhs) const {
  std::vector<Rational> z(m_);
  for (int k = 0; k < m_; ++k) {
    z[k] = rhs[pivot_row_[k]];
    for (const LStep& s : lsteps_[k]) z[k] -= s.mult * z[s.target];
  }
  std::vector<Rational> x(m_);
  for (int k = m_ - 1; k >= 0; --k) {
    Rational acc = std::move(z[k]);
    const auto& row = urows_[k];
    for (size_t t = 1; t < row.size(); ++t) acc -= row[t].second * x[row[t].first];
    x[k] = acc / row.front().second;
  }
  return x;
}

std::vector<Rational> RationalLu::solve_transposed(const std::vector<Rational>& c) const {
  std::vector<Rational> t(m_);
  std::vector<Rational> acc(m_, Rational(0));
  for (int k = 0; k < m_; ++k) {
    const auto& row = urows_[k];
    t[k] = (c[k] - acc[k]) / row.front().second;
    for (size_t i = 1; i < row.size(); ++i) acc[row[i].first] += row[i].second * t[k];
  }
  for (int j = m_ - 1; j >= 0; --j)
    for (const LStep& s : lsteps_[j]) t[s.target] -= s.mult * t[j];
  std::vector<Rational> y(m_);
  for (int k = 0; k < m_; ++k) y[pivot_row_[k]] = std::move(t[k]);
  return y;
}

}  // namespace lpdec
