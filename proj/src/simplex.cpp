#include "lpdec/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lpdec/rational_lu.hpp"

namespace lpdec {

namespace {
constexpr double kTieTol = 1e-9;
// rows whose pivot element is below this never leave the basis
constexpr double kPivotFloor = 1e-9;
constexpr int kDegenerateStreakLimit = 12;
}  // namespace

SimplexEngine::SimplexEngine(int num_structural, Options options)
    : options_(options), num_structural_(num_structural) {
  cols_.resize(num_structural);
  cols_d_.resize(num_structural);
  cost_.assign(num_structural, Rational(0));
  cost_d_.assign(num_structural, 0.0);
  Bound unit_box;
  unit_box.lo = 0;
  unit_box.hi = 1;
  unit_box.lo_d = 0.0;
  unit_box.hi_d = 1.0;
  bounds_.assign(num_structural, unit_box);
  status_.assign(num_structural, VarStatus::AtLower);
  value_.assign(num_structural, 0.0);
  basis_pos_.assign(num_structural, -1);
}

void SimplexEngine::set_objective(std::vector<Rational> structural_costs) {
  cost_ = std::move(structural_costs);
  cost_d_.resize(cost_.size());
  for (size_t i = 0; i < cost_.size(); ++i) cost_d_[i] = to_double(cost_[i]);
  certified_ = false;
}

void SimplexEngine::set_bounds(int var, Rational lo, Rational hi) {
  Bound& b = bounds_[var];
  b.lo_finite = b.hi_finite = true;
  b.lo_d = to_double(lo);
  b.hi_d = to_double(hi);
  b.lo = std::move(lo);
  b.hi = std::move(hi);
  certified_ = false;
}

bool SimplexEngine::is_fixed(int col) const {
  const Bound& b = bounds_[col];
  return b.lo_finite && b.hi_finite && b.lo == b.hi;
}

int SimplexEngine::make_unit_col(int row, int coeff, Bound bound, bool artificial) {
  int col = num_cols();
  unit_row_.push_back(row);
  unit_coeff_.push_back(coeff);
  is_artificial_.push_back(artificial);
  bounds_.push_back(std::move(bound));
  status_.push_back(bounds_.back().lo_finite ? VarStatus::AtLower : VarStatus::AtUpper);
  value_.push_back(0.0);
  basis_pos_.push_back(-1);
  row_units_[row].push_back(col);
  return col;
}

int SimplexEngine::add_row(std::vector<std::pair<int, Rational>> coeffs, Relation rel,
                           Rational rhs) {
  std::sort(coeffs.begin(), coeffs.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  int row = num_rows();
  for (auto& [var, v] : coeffs) {
    if (var < 0 || var >= num_structural_)
      throw std::invalid_argument("constraint variable out of range");
    if (v == 0) continue;
    cols_[var].emplace_back(row, v);
    cols_d_[var].emplace_back(row, to_double(v));
  }
  row_rhs_d_.push_back(to_double(rhs));
  row_rhs_.push_back(std::move(rhs));
  row_units_.emplace_back();

  Bound slack;
  switch (rel) {
    case Relation::LessEq:
      slack.lo = 0;
      slack.lo_d = 0.0;
      slack.hi_finite = false;
      slack.hi_d = kInf;
      break;
    case Relation::Eq:
      slack.lo = slack.hi = 0;
      slack.lo_d = slack.hi_d = 0.0;
      break;
    case Relation::GreaterEq:
      slack.lo_finite = false;
      slack.lo_d = -kInf;
      slack.hi = 0;
      slack.hi_d = 0.0;
      break;
  }
  int col = make_unit_col(row, 1, slack, false);
  slack_col_.push_back(col);
  // the new slack joins the basis so a warm restart stays valid
  basic_.push_back(col);
  basis_pos_[col] = row;
  status_[col] = VarStatus::Basic;
  certified_ = false;
  return row;
}

double SimplexEngine::col_dot(int col, const std::vector<double>& y) const {
  if (is_unit(col)) return unit_coeff(col) * y[unit_row(col)];
  double acc = 0.0;
  for (const auto& [r, v] : cols_d_[col]) acc += v * y[r];
  return acc;
}

double SimplexEngine::current_cost(int col) const {
  if (phase_one_) return is_unit(col) && is_artificial_[col - num_structural_] ? 1.0 : 0.0;
  double base = col < num_structural_ ? cost_d_[col] : 0.0;
  if (col < static_cast<int>(perturb_.size())) base += perturb_[col];
  return base;
}

double SimplexEngine::bound_value(int col) const {
  const Bound& b = bounds_[col];
  return status_[col] == VarStatus::AtUpper ? b.hi_d : b.lo_d;
}

void SimplexEngine::factorize() {
  int m = num_rows();
  lu_.assign(static_cast<size_t>(m) * m, 0.0);
  lu_perm_.resize(m);
  for (int q = 0; q < m; ++q) {
    int c = basic_[q];
    if (is_unit(c)) {
      lu_[static_cast<size_t>(unit_row(c)) * m + q] = unit_coeff(c);
    } else {
      for (const auto& [r, v] : cols_d_[c]) lu_[static_cast<size_t>(r) * m + q] = v;
    }
  }
  for (int k = 0; k < m; ++k) {
    int piv = k;
    double best = std::fabs(lu_[static_cast<size_t>(k) * m + k]);
    for (int i = k + 1; i < m; ++i) {
      double a = std::fabs(lu_[static_cast<size_t>(i) * m + k]);
      if (a > best) {
        best = a;
        piv = i;
      }
    }
    if (best < 1e-13)
      throw SolverError(SolverError::Kind::SingularBasis, "basis is numerically singular");
    lu_perm_[k] = piv;
    if (piv != k)
      for (int j = 0; j < m; ++j)
        std::swap(lu_[static_cast<size_t>(k) * m + j], lu_[static_cast<size_t>(piv) * m + j]);
    double d = lu_[static_cast<size_t>(k) * m + k];
    for (int i = k + 1; i < m; ++i) {
      double l = lu_[static_cast<size_t>(i) * m + k] / d;
      lu_[static_cast<size_t>(i) * m + k] = l;
      if (l == 0.0) continue;
      for (int j = k + 1; j < m; ++j)
        lu_[static_cast<size_t>(i) * m + j] -= l * lu_[static_cast<size_t>(k) * m + j];
    }
  }
  etas_.clear();
}

void SimplexEngine::ftran(std::vector<double>& v) const {
  int m = num_rows();
  for (int k = 0; k < m; ++k)
    if (lu_perm_[k] != k) std::swap(v[k], v[lu_perm_[k]]);
  for (int k = 0; k < m; ++k) {
    double vk = v[k];
    if (vk == 0.0) continue;
    for (int i = k + 1; i < m; ++i) v[i] -= lu_[static_cast<size_t>(i) * m + k] * vk;
  }
  for (int k = m - 1; k >= 0; --k) {
    v[k] /= lu_[static_cast<size_t>(k) * m + k];
    double vk = v[k];
    if (vk == 0.0) continue;
    for (int i = 0; i < k; ++i) v[i] -= lu_[static_cast<size_t>(i) * m + k] * vk;
  }
  for (const Eta& e : etas_) {
    double t = v[e.row] / e.col[e.row];
    for (int i = 0; i < m; ++i)
      if (i != e.row) v[i] -= e.col[i] * t;
    v[e.row] = t;
  }
}

void SimplexEngine::btran(std::vector<double>& v) const {
  int m = num_rows();
  for (auto it = etas_.rbegin(); it != etas_.rend(); ++it) {
    double dot = 0.0;
    for (int i = 0; i < m; ++i) dot += it->col[i] * v[i];
    v[it->row] = (v[it->row] - (dot - it->col[it->row] * v[it->row])) / it->col[it->row];
  }
  for (int k = 0; k < m; ++k) {
    v[k] /= lu_[static_cast<size_t>(k) * m + k];
    double vk = v[k];
    if (vk == 0.0) continue;
    for (int i = k + 1; i < m; ++i) v[i] -= lu_[static_cast<size_t>(k) * m + i] * vk;
  }
  for (int k = m - 1; k >= 0; --k) {
    double acc = v[k];
    for (int i = k + 1; i < m; ++i) acc -= lu_[static_cast<size_t>(i) * m + k] * v[i];
    v[k] = acc;
  }
  for (int k = m - 1; k >= 0; --k)
    if (lu_perm_[k] != k) std::swap(v[k], v[lu_perm_[k]]);
}

void SimplexEngine::compute_values() {
  int m = num_rows();
  for (int c = 0; c < num_cols(); ++c)
    if (basis_pos_[c] < 0) value_[c] = bound_value(c);
  std::vector<double> rhs = row_rhs_d_;
  for (int c = 0; c < num_cols(); ++c) {
    if (basis_pos_[c] >= 0 || value_[c] == 0.0) continue;
    if (is_unit(c)) {
      rhs[unit_row(c)] -= unit_coeff(c) * value_[c];
    } else {
      for (const auto& [r, v] : cols_d_[c]) rhs[r] -= v * value_[c];
    }
  }
  ftran(rhs);
  for (int q = 0; q < m; ++q) value_[basic_[q]] = rhs[q];
}

std::vector<double> SimplexEngine::ftran_col(int col) const {
  std::vector<double> alpha(num_rows(), 0.0);
  if (is_unit(col)) {
    alpha[unit_row(col)] = unit_coeff(col);
  } else {
    for (const auto& [r, v] : cols_d_[col]) alpha[r] = v;
  }
  ftran(alpha);
  return alpha;
}

void SimplexEngine::crash_basis(const std::vector<std::pair<int, int>>& crash_hint) {
  int m = num_rows();
  for (int c = 0; c < num_cols(); ++c) {
    status_[c] = bounds_[c].lo_finite ? VarStatus::AtLower : VarStatus::AtUpper;
    basis_pos_[c] = -1;
  }
  basic_.assign(m, -1);
  for (const auto& [row, col] : crash_hint) basic_[row] = col;
  for (int q = 0; q < m; ++q)
    if (basic_[q] < 0) basic_[q] = slack_col_[q];
  for (int q = 0; q < m; ++q) {
    basis_pos_[basic_[q]] = q;
    status_[basic_[q]] = VarStatus::Basic;
  }
  factorize();
  compute_values();
}

bool SimplexEngine::crash_point_infeasible() const {
  for (int q = 0; q < num_rows(); ++q) {
    const Bound& b = bounds_[basic_[q]];
    double v = value_[basic_[q]];
    if (b.lo_finite && v < b.lo_d - options_.feas_tol) return true;
    if (b.hi_finite && v > b.hi_d + options_.feas_tol) return true;
  }
  return false;
}

void SimplexEngine::install_artificials() {
  int m = num_rows();
  for (int q = 0; q < m; ++q) {
    int c = basic_[q];
    basis_pos_[c] = -1;
    if (!bounds_[c].lo_finite) {
      status_[c] = VarStatus::AtUpper;
    } else if (!bounds_[c].hi_finite) {
      status_[c] = VarStatus::AtLower;
    } else {
      double v = value_[c];
      status_[c] = std::fabs(v - bounds_[c].lo_d) <= std::fabs(v - bounds_[c].hi_d)
                       ? VarStatus::AtLower
                       : VarStatus::AtUpper;
    }
    value_[c] = bound_value(c);
  }
  std::vector<double> residual = row_rhs_d_;
  for (int c = 0; c < num_cols(); ++c) {
    if (value_[c] == 0.0) continue;
    if (is_unit(c)) {
      residual[unit_row(c)] -= unit_coeff(c) * value_[c];
    } else {
      for (const auto& [r, v] : cols_d_[c]) residual[r] -= v * value_[c];
    }
  }
  for (int q = 0; q < m; ++q) {
    Bound art;
    art.lo = 0;
    art.lo_d = 0.0;
    art.hi_finite = false;
    art.hi_d = kInf;
    int col = make_unit_col(q, residual[q] >= 0.0 ? 1 : -1, art, true);
    basic_[q] = col;
    basis_pos_[col] = q;
    status_[col] = VarStatus::Basic;
    value_[col] = std::fabs(residual[q]);
  }
  factorize();
  compute_values();
}

void SimplexEngine::retire_artificials() {
  for (int c = num_structural_; c < num_cols(); ++c) {
    if (!is_artificial_[c - num_structural_]) continue;
    Bound& b = bounds_[c];
    b.lo_finite = b.hi_finite = true;
    b.lo = b.hi = 0;
    b.lo_d = b.hi_d = 0.0;
    if (basis_pos_[c] < 0) {
      status_[c] = VarStatus::AtLower;
      value_[c] = 0.0;
    }
  }
}

void SimplexEngine::primal_loop() {
  int m = num_rows();
  const int limit = iter_budget_ > 0 ? iter_budget_ : options_.max_iter;
  for (int iter = 0; iter < limit; ++iter) {
    if (static_cast<int>(etas_.size()) >= options_.refactor_every) factorize();
    compute_values();

    std::vector<double> y(m);
    for (int q = 0; q < m; ++q) y[q] = current_cost(basic_[q]);
    btran(y);

    int enter = -1, sigma = 0;
    double best = options_.opt_tol;
    for (int c = 0; c < num_cols(); ++c) {
      if (basis_pos_[c] >= 0 || is_fixed(c)) continue;
      double d = current_cost(c) - col_dot(c, y);
      double viol;
      int dir;
      if (status_[c] == VarStatus::AtLower && d < -options_.opt_tol) {
        viol = -d;
        dir = 1;
      } else if (status_[c] == VarStatus::AtUpper && d > options_.opt_tol) {
        viol = d;
        dir = -1;
      } else {
        continue;
      }
      if (bland_) {
        enter = c;
        sigma = dir;
        break;
      }
      if (viol > best) {
        best = viol;
        enter = c;
        sigma = dir;
      }
    }
    if (enter < 0) return;

    std::vector<double> alpha = ftran_col(enter);
    const Bound& eb = bounds_[enter];
    bool own_finite = eb.lo_finite && eb.hi_finite;
    double own_room = own_finite ? eb.hi_d - eb.lo_d : kInf;

    double t = own_room;
    for (int q = 0; q < m; ++q) {
      if (std::fabs(alpha[q]) <= kPivotFloor) continue;
      double da = -sigma * alpha[q];
      const Bound& b = bounds_[basic_[q]];
      double room;
      if (da > options_.zero_tol && b.hi_finite) {
        room = (b.hi_d - value_[basic_[q]]) / da;
      } else if (da < -options_.zero_tol && b.lo_finite) {
        room = (b.lo_d - value_[basic_[q]]) / da;
      } else {
        continue;
      }
      t = std::min(t, std::max(room, 0.0));
    }
    if (t == kInf)
      throw SolverError(SolverError::Kind::Numeric, "primal ray with negative reduced cost");

    int leave_row = -1;
    if (bland_) {
      int best_id = own_room <= t + kTieTol ? enter : std::numeric_limits<int>::max();
      for (int q = 0; q < m; ++q) {
        if (std::fabs(alpha[q]) <= kPivotFloor) continue;
        double da = -sigma * alpha[q];
        const Bound& b = bounds_[basic_[q]];
        double room;
        if (da > options_.zero_tol && b.hi_finite) {
          room = (b.hi_d - value_[basic_[q]]) / da;
        } else if (da < -options_.zero_tol && b.lo_finite) {
          room = (b.lo_d - value_[basic_[q]]) / da;
        } else {
          continue;
        }
        if (std::max(room, 0.0) <= t + kTieTol && basic_[q] < best_id) {
          best_id = basic_[q];
          leave_row = q;
        }
      }
      if (best_id == enter) leave_row = -1;
    } else {
      double best_mag = 0.0;
      for (int q = 0; q < m; ++q) {
        if (std::fabs(alpha[q]) <= kPivotFloor) continue;
        double da = -sigma * alpha[q];
        const Bound& b = bounds_[basic_[q]];
        double room;
        if (da > options_.zero_tol && b.hi_finite) {
          room = (b.hi_d - value_[basic_[q]]) / da;
        } else if (da < -options_.zero_tol && b.lo_finite) {
          room = (b.lo_d - value_[basic_[q]]) / da;
        } else {
          continue;
        }
        if (std::max(room, 0.0) <= t + kTieTol && std::fabs(alpha[q]) > best_mag) {
          best_mag = std::fabs(alpha[q]);
          leave_row = q;
        }
      }
      if (own_room < t - kTieTol) leave_row = -1;
      if (leave_row < 0 && own_room > t + kTieTol)
        throw SolverError(SolverError::Kind::Numeric, "ratio test found no pivot row");
    }

    if (t <= kTieTol) {
      if (++degenerate_streak_ >= kDegenerateStreakLimit) bland_ = true;
    } else {
      degenerate_streak_ = 0;
      if (!force_bland_) bland_ = false;
    }

    if (leave_row < 0) {
      status_[enter] = status_[enter] == VarStatus::AtLower ? VarStatus::AtUpper
                                                            : VarStatus::AtLower;
      continue;
    }

    if (std::fabs(alpha[leave_row]) < 1e-8 && !etas_.empty()) {
      // the accumulated etas may have fabricated this pivot; redo the
      // iteration against a fresh factorization before touching the basis
      factorize();
      continue;
    }

    int leave_col = basic_[leave_row];
    double da = -sigma * alpha[leave_row];
    status_[leave_col] = da > 0 ? VarStatus::AtUpper : VarStatus::AtLower;
    basis_pos_[leave_col] = -1;
    basic_[leave_row] = enter;
    basis_pos_[enter] = leave_row;
    status_[enter] = VarStatus::Basic;
    if (std::fabs(alpha[leave_row]) < 1e-8) {
      factorize();
    } else {
      etas_.push_back({leave_row, std::move(alpha)});
    }
  }
  throw SolverError(SolverError::Kind::IterationLimit, "primal simplex iteration limit");
}

void SimplexEngine::dual_loop() {
  int m = num_rows();
  int stall = 0;
  const int limit = iter_budget_ > 0 ? iter_budget_ : options_.max_iter;
  for (int iter = 0; iter < limit; ++iter) {
    if (static_cast<int>(etas_.size()) >= options_.refactor_every) factorize();
    compute_values();

    int leave_row = -1, need = 0;
    double worst = options_.feas_tol;
    for (int q = 0; q < m; ++q) {
      const Bound& b = bounds_[basic_[q]];
      double v = value_[basic_[q]];
      if (b.lo_finite && b.lo_d - v > worst) {
        worst = b.lo_d - v;
        leave_row = q;
        need = 1;
      }
      if (b.hi_finite && v - b.hi_d > worst) {
        worst = v - b.hi_d;
        leave_row = q;
        need = -1;
      }
    }
    if (leave_row < 0) return;

    std::vector<double> rho(m, 0.0);
    rho[leave_row] = 1.0;
    btran(rho);
    std::vector<double> y(m);
    for (int q = 0; q < m; ++q) y[q] = current_cost(basic_[q]);
    btran(y);

    int enter = -1;
    double best_theta = kInf, best_mag = 0.0;
    for (int c = 0; c < num_cols(); ++c) {
      if (basis_pos_[c] >= 0 || is_fixed(c)) continue;
      double w = col_dot(c, rho);
      if (std::fabs(w) <= kPivotFloor) continue;
      bool at_lower = status_[c] == VarStatus::AtLower;
      bool eligible = at_lower ? (need > 0 ? w < 0 : w > 0) : (need > 0 ? w > 0 : w < 0);
      if (!eligible) continue;
      double d = current_cost(c) - col_dot(c, y);
      double theta = std::fabs(d) / std::fabs(w);
      bool better;
      if (bland_) {
        better = theta < best_theta - kTieTol ||
                 (theta <= best_theta + kTieTol && (enter < 0 || c < enter));
      } else {
        better = theta < best_theta - kTieTol ||
                 (theta <= best_theta + kTieTol && std::fabs(w) > best_mag);
      }
      if (better) {
        best_theta = std::min(theta, best_theta);
        best_mag = std::fabs(w);
        enter = c;
      }
    }
    if (enter < 0)
      throw SolverError(SolverError::Kind::Numeric, "dual simplex found no entering column");

    std::vector<double> alpha = ftran_col(enter);
    if (std::fabs(alpha[leave_row]) < 1e-9) {
      factorize();
      if (++stall > 3)
        throw SolverError(SolverError::Kind::Numeric, "dual pivot element vanished");
      continue;
    }
    stall = 0;

    if (best_theta <= kTieTol) {
      if (++degenerate_streak_ >= kDegenerateStreakLimit) bland_ = true;
    } else {
      degenerate_streak_ = 0;
      if (!force_bland_) bland_ = false;
    }

    int leave_col = basic_[leave_row];
    status_[leave_col] = need > 0 ? VarStatus::AtLower : VarStatus::AtUpper;
    basis_pos_[leave_col] = -1;
    basic_[leave_row] = enter;
    basis_pos_[enter] = leave_row;
    status_[enter] = VarStatus::Basic;
    etas_.push_back({leave_row, std::move(alpha)});
  }
  throw SolverError(SolverError::Kind::IterationLimit, "dual simplex iteration limit");
}

Rational SimplexEngine::exact_cost(int col) const {
  if (phase_one_)
    return is_unit(col) && is_artificial_[col - num_structural_] ? Rational(1) : Rational(0);
  return col < num_structural_ ? cost_[col] : Rational(0);
}

Rational SimplexEngine::exact_bound_value(int col) const {
  const Bound& b = bounds_[col];
  if (status_[col] == VarStatus::AtUpper) {
    if (!b.hi_finite)
      throw SolverError(SolverError::Kind::Numeric, "nonbasic column at infinite bound");
    return b.hi;
  }
  if (!b.lo_finite)
    throw SolverError(SolverError::Kind::Numeric, "nonbasic column at infinite bound");
  return b.lo;
}

Rational SimplexEngine::exact_col_dot(int col, const std::vector<Rational>& y) const {
  if (is_unit(col)) {
    const Rational& yr = y[unit_row(col)];
    return unit_coeff(col) > 0 ? yr : -yr;
  }
  Rational acc = 0;
  for (const auto& [r, v] : cols_[col]) acc += v * y[r];
  return acc;
}

std::vector<Rational> SimplexEngine::exact_col_dense(int col) const {
  std::vector<Rational> dense(num_rows(), Rational(0));
  if (is_unit(col)) {
    dense[unit_row(col)] = unit_coeff(col);
  } else {
    for (const auto& [r, v] : cols_[col]) dense[r] = v;
  }
  return dense;
}

// Recomputes the basic solution in rational arithmetic and runs exact
// Bland pivots until the basis is exactly optimal for the active costs.
// Leaves exact_value_ holding the certified point.
Rational SimplexEngine::exact_optimize() {
  int m = num_rows();
  int pivots = 0;
  bool pivoted = false;
  while (true) {
    std::vector<std::vector<std::pair<int, Rational>>> basis_cols(m);
    for (int q = 0; q < m; ++q) {
      int c = basic_[q];
      if (is_unit(c)) {
        basis_cols[q].emplace_back(unit_row(c), Rational(unit_coeff(c)));
      } else {
        basis_cols[q] = cols_[c];
      }
    }
    RationalLu lu = RationalLu::factor(m, basis_cols);

    std::vector<Rational> rhs = row_rhs_;
    for (int c = 0; c < num_cols(); ++c) {
      if (basis_pos_[c] >= 0) continue;
      Rational v = exact_bound_value(c);
      if (v == 0) continue;
      if (is_unit(c)) {
        rhs[unit_row(c)] -= unit_coeff(c) * v;
      } else {
        for (const auto& [r, a] : cols_[c]) rhs[r] -= a * v;
      }
    }
    std::vector<Rational> xb = lu.solve(rhs);

    for (int q = 0; q < m; ++q) {
      const Bound& b = bounds_[basic_[q]];
      if ((b.lo_finite && xb[q] < b.lo) || (b.hi_finite && xb[q] > b.hi))
        throw SolverError(SolverError::Kind::Numeric, "basis infeasible in exact arithmetic");
    }

    std::vector<Rational> cb(m);
    for (int q = 0; q < m; ++q) cb[q] = exact_cost(basic_[q]);
    std::vector<Rational> y = lu.solve_transposed(cb);

    int enter = -1, sigma = 0;
    for (int c = 0; c < num_cols(); ++c) {
      if (basis_pos_[c] >= 0 || is_fixed(c)) continue;
      Rational d = exact_cost(c) - exact_col_dot(c, y);
      if (status_[c] == VarStatus::AtLower && d < 0) {
        enter = c;
        sigma = 1;
        break;
      }
      if (status_[c] == VarStatus::AtUpper && d > 0) {
        enter = c;
        sigma = -1;
        break;
      }
    }

    if (enter < 0) {
      exact_value_.assign(num_cols(), Rational(0));
      Rational objective = 0;
      for (int c = 0; c < num_cols(); ++c) {
        exact_value_[c] = basis_pos_[c] >= 0 ? xb[basis_pos_[c]] : exact_bound_value(c);
        if (exact_value_[c] != 0) objective += exact_cost(c) * exact_value_[c];
      }
      if (pivoted) {
        factorize();
        compute_values();
      }
      return objective;
    }

    std::vector<Rational> alpha = lu.solve(exact_col_dense(enter));
    const Bound& eb = bounds_[enter];
    bool has_t = false;
    Rational t;
    if (eb.lo_finite && eb.hi_finite) {
      t = eb.hi - eb.lo;
      has_t = true;
    }
    for (int q = 0; q < m; ++q) {
      if (alpha[q] == 0) continue;
      Rational delta = sigma > 0 ? Rational(-alpha[q]) : alpha[q];
      const Bound& b = bounds_[basic_[q]];
      Rational room;
      if (delta > 0 && b.hi_finite) {
        room = (b.hi - xb[q]) / delta;
      } else if (delta < 0 && b.lo_finite) {
        room = (b.lo - xb[q]) / delta;
      } else {
        continue;
      }
      if (!has_t || room < t) {
        t = room;
        has_t = true;
      }
    }
    if (!has_t)
      throw SolverError(SolverError::Kind::Numeric, "exact ratio test unbounded");

    int leave_row = -1;
    int best_id = eb.lo_finite && eb.hi_finite && eb.hi - eb.lo == t
                      ? enter
                      : std::numeric_limits<int>::max();
    for (int q = 0; q < m; ++q) {
      if (alpha[q] == 0) continue;
      Rational delta = sigma > 0 ? Rational(-alpha[q]) : alpha[q];
      const Bound& b = bounds_[basic_[q]];
      Rational room;
      if (delta > 0 && b.hi_finite) {
        room = (b.hi - xb[q]) / delta;
      } else if (delta < 0 && b.lo_finite) {
        room = (b.lo - xb[q]) / delta;
      } else {
        continue;
      }
      if (room == t && basic_[q] < best_id) {
        best_id = basic_[q];
        leave_row = q;
      }
    }

    if (leave_row < 0) {
      status_[enter] = status_[enter] == VarStatus::AtLower ? VarStatus::AtUpper
                                                            : VarStatus::AtLower;
    } else {
      int leave_col = basic_[leave_row];
      Rational delta = sigma > 0 ? Rational(-alpha[leave_row]) : alpha[leave_row];
      status_[leave_col] = delta > 0 ? VarStatus::AtUpper : VarStatus::AtLower;
      basis_pos_[leave_col] = -1;
      basic_[leave_row] = enter;
      basis_pos_[enter] = leave_row;
      status_[enter] = VarStatus::Basic;
    }
    pivoted = true;
    if (++pivots > options_.max_exact_pivots)
      throw SolverError(SolverError::Kind::IterationLimit, "exact pivot limit");
  }
}

void SimplexEngine::certify() {
  exact_objective_ = exact_optimize();
  exact_structural_.assign(exact_value_.begin(), exact_value_.begin() + num_structural_);
  certified_ = true;
}

LpStatus SimplexEngine::run_float(const std::vector<std::pair<int, int>>& crash_hint) {
  certified_ = false;
  crash_basis(crash_hint);
  if (crash_point_infeasible()) {
    install_artificials();
    phase_one_ = true;
    primal_loop();
    double infeasibility = 0.0;
    for (int c = num_structural_; c < num_cols(); ++c)
      if (is_artificial_[c - num_structural_]) infeasibility += std::fabs(value_[c]);
    if (infeasibility > 1e-7) {
      Rational exact_infeasibility = exact_optimize();
      if (exact_infeasibility > 0) {
        phase_one_ = false;
        return LpStatus::Infeasible;
      }
    }
    phase_one_ = false;
    retire_artificials();
  }
  primal_loop();
  return LpStatus::Optimal;
}

LpStatus SimplexEngine::run_to_optimal(const std::vector<std::pair<int, int>>& crash_hint) {
  LpStatus status = run_float(crash_hint);
  if (status == LpStatus::Optimal) certify();
  return status;
}

// Deterministic per-column cost jitter for the float loops. Massively
// degenerate instances can stall both Dantzig and Bland pricing inside
// tolerance-width plateaus; the jitter spreads the plateau apart. Exact
// costs never see it, so the certified answer is still optimal for the
// true objective.
void SimplexEngine::set_perturbation(bool on) {
  if (!on) {
    perturb_.clear();
    return;
  }
  double scale = 0.0;
  for (double c : cost_d_) scale = std::max(scale, std::fabs(c));
  scale = (scale == 0.0 ? 1.0 : scale) * 1e-6;
  perturb_.resize(num_cols());
  for (size_t c = 0; c < perturb_.size(); ++c) {
    uint64_t h = (c + 1) * 0x9e3779b97f4a7c15ull;
    h ^= h >> 32;
    h *= 0xd6e8feb86659fd93ull;
    h ^= h >> 32;
    perturb_[c] = scale * (static_cast<double>(h % 2048) / 1024.0 - 1.0);
  }
}

// A phase-2 stall still leaves a primal-feasible basis behind, and the
// exact Bland pivots in certify() terminate on their own, so finishing
// exactly from the stalled basis beats giving up. Guarded to later
// attempts so instances the float loops already handle stay untouched.
bool SimplexEngine::rescue_from_stall(int attempt, const SolverError& err) {
  if (attempt < 1 || phase_one_ || err.kind() != SolverError::Kind::IterationLimit) return false;
  try {
    certify();
    return true;
  } catch (const SolverError&) {
    return false;
  }
}

LpStatus SimplexEngine::solve(const std::vector<std::pair<int, int>>& crash_hint) {
  for (int attempt = 0;; ++attempt) {
    bland_ = force_bland_ = attempt == 1;
    set_perturbation(attempt == 2);
    degenerate_streak_ = 0;
    try {
      LpStatus status = run_to_optimal(crash_hint);
      set_perturbation(false);
      return status;
    } catch (const SolverError& err) {
      set_perturbation(false);
      if (rescue_from_stall(attempt, err)) return LpStatus::Optimal;
      phase_one_ = false;
      if (attempt >= 2) throw;
    }
  }
}

LpStatus SimplexEngine::solve_float(const std::vector<std::pair<int, int>>& crash_hint) {
  for (int attempt = 0;; ++attempt) {
    bland_ = force_bland_ = attempt == 1;
    set_perturbation(attempt == 2);
    degenerate_streak_ = 0;
    try {
      LpStatus status = run_float(crash_hint);
      set_perturbation(false);
      return status;
    } catch (const SolverError& err) {
      set_perturbation(false);
      if (rescue_from_stall(attempt, err)) return LpStatus::Optimal;
      phase_one_ = false;
      if (attempt >= 2) throw;
    }
  }
}

LpStatus SimplexEngine::resolve_dual() {
  certified_ = false;
  iter_budget_ = std::max(options_.resolve_iter, 6 * (num_rows() + num_cols()));
  try {
    factorize();
    compute_values();
    dual_loop();
    iter_budget_ = 0;
    certify();
    return LpStatus::Optimal;
  } catch (const SolverError&) {
    iter_budget_ = 0;
    return solve();
  }
}

LpStatus SimplexEngine::resolve_primal(std::vector<Rational> structural_costs) {
  set_objective(std::move(structural_costs));
  iter_budget_ = std::max(options_.resolve_iter, 6 * (num_rows() + num_cols()));
  try {
    factorize();
    compute_values();
    primal_loop();
    iter_budget_ = 0;
    certify();
    return LpStatus::Optimal;
  } catch (const SolverError&) {
    iter_budget_ = 0;
    return solve();
  }
}

LpStatus SimplexEngine::resolve_dual_float() {
  certified_ = false;
  iter_budget_ = std::max(options_.resolve_iter, 6 * (num_rows() + num_cols()));
  try {
    factorize();
    compute_values();
    dual_loop();
    iter_budget_ = 0;
    return LpStatus::Optimal;
  } catch (const SolverError&) {
    iter_budget_ = 0;
    return solve_float();
  }
}

LpStatus SimplexEngine::resolve_primal_float(std::vector<Rational> structural_costs) {
  set_objective(std::move(structural_costs));
  iter_budget_ = std::max(options_.resolve_iter, 6 * (num_rows() + num_cols()));
  try {
    factorize();
    compute_values();
    primal_loop();
    iter_budget_ = 0;
    return LpStatus::Optimal;
  } catch (const SolverError&) {
    iter_budget_ = 0;
    return solve_float();
  }
}

LpStatus SimplexEngine::certify_now() {
  if (certified_) return LpStatus::Optimal;
  try {
    certify();
    return LpStatus::Optimal;
  } catch (const SolverError&) {
    return solve();
  }
}

Rational SimplexEngine::row_activity(int row) const {
  Rational activity = row_rhs_[row];
  for (int u : row_units_[row]) {
    if (exact_value_[u] == 0) continue;
    activity -= unit_coeff_[u - num_structural_] * exact_value_[u];
  }
  return activity;
}

bool SimplexEngine::row_tight(int row) const { return row_activity(row) == row_rhs_[row]; }

void LpProblem::validate() const {
  if (num_vars < 0) throw std::invalid_argument("negative variable count");
  if (static_cast<int>(objective.size()) != num_vars)
    throw std::invalid_argument("objective size does not match variable count");
  if (static_cast<int>(var_bounds.size()) != num_vars)
    throw std::invalid_argument("bounds size does not match variable count");
  for (const auto& [lo, hi] : var_bounds)
    if (lo > hi) throw std::invalid_argument("lower bound exceeds upper bound");
  for (const LinearConstraint& con : constraints) {
    std::vector<int> seen;
    for (const auto& [var, coeff] : con.coeffs) {
      if (var < 0 || var >= num_vars)
        throw std::invalid_argument("constraint variable out of range");
      seen.push_back(var);
    }
    std::sort(seen.begin(), seen.end());
    if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
      throw std::invalid_argument("constraint repeats a variable");
  }
}

LpSolution solve_lp(const LpProblem& problem,
                    const std::vector<std::pair<int, int>>& crash_hint) {
  problem.validate();
  SimplexEngine engine(problem.num_vars);
  for (int i = 0; i < problem.num_vars; ++i)
    engine.set_bounds(i, problem.var_bounds[i].first, problem.var_bounds[i].second);
  engine.set_objective(problem.objective);
  for (const LinearConstraint& con : problem.constraints)
    engine.add_row(con.coeffs, con.rel, con.rhs);

  LpSolution solution;
  solution.status = engine.solve(crash_hint);
  if (solution.status != LpStatus::Optimal) return solution;
  solution.objective_value = engine.objective_value();
  solution.vertex = engine.structural_values();
  solution.var_status.resize(problem.num_vars);
  for (int i = 0; i < problem.num_vars; ++i) solution.var_status[i] = engine.var_status(i);
  solution.row_tight.resize(problem.constraints.size());
  for (size_t r = 0; r < problem.constraints.size(); ++r)
    solution.row_tight[r] = engine.row_tight(static_cast<int>(r));
  return solution;
}

}  // namespace lpdec
