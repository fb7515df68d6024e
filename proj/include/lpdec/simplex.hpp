#pragma once

#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "lpdec/lp.hpp"
#include "lpdec/rational.hpp"

namespace lpdec {

// Revised bounded-variable simplex over double arithmetic with an exact
// rational finishing pass. The double phase finds a candidate basis fast;
// certify() then recomputes the basic solution and all reduced costs in
// rational arithmetic and, if the basis is not exactly optimal, finishes
// with exact Bland pivots. Every result handed out is exact.
//
// Columns: structural variables first, then one unit column per row (the
// row's slack), then any phase-1 artificials. Unit columns have a single
// +-1 entry. Rows can be appended between solves; reoptimize_dual() warm
// starts from the previous optimal basis after rows are added.
class SimplexEngine {
 public:
  struct Options {
    double feas_tol = 1e-9;
    double opt_tol = 1e-9;
    double zero_tol = 1e-11;  // pivot magnitudes below this count as zero
    int max_iter = 200000;
    // Warm resolves stall far more often than they legitimately run long
    // (degenerate duals after a cut batch can spin for the full max_iter),
    // and their fallback is a cheap fresh solve, so they get a short leash
    // scaled up on large instances.
    int resolve_iter = 3000;
    int refactor_every = 64;
    int max_exact_pivots = 5000;
  };

  explicit SimplexEngine(int num_structural) : SimplexEngine(num_structural, Options()) {}
  SimplexEngine(int num_structural, Options options);

  void set_objective(std::vector<Rational> structural_costs);
  void set_bounds(int var, Rational lo, Rational hi);

  // Returns the row index. The slack column is created automatically.
  int add_row(std::vector<std::pair<int, Rational>> coeffs, Relation rel, Rational rhs);

  // Fresh solve: crash basis, phase 1 if the crash point is infeasible,
  // then primal phase 2, then exact certification. crash_hint maps a row
  // to a structural column that forms a feasible starting basis together
  // with the remaining rows' slacks (used when the caller knows one).
  LpStatus solve(const std::vector<std::pair<int, int>>& crash_hint = {});

  // Re-optimize after add_row() calls, starting from the last certified
  // basis (which stays dual feasible). Ends with exact certification.
  LpStatus resolve_dual();

  // Re-optimize after an objective change from the current basis.
  LpStatus resolve_primal(std::vector<Rational> structural_costs);

  // Float-only variants for separation loops that re-solve many times and
  // certify once at the end. Exact accessors are invalid until certify_now()
  // (or a certifying solve) succeeds. Infeasible results are still exact.
  LpStatus solve_float(const std::vector<std::pair<int, int>>& crash_hint = {});
  LpStatus resolve_dual_float();
  LpStatus resolve_primal_float(std::vector<Rational> structural_costs);
  LpStatus certify_now();

  // Current floating-point point, one entry per column (structural columns
  // first). Fresh after any solve/resolve call.
  const std::vector<double>& float_values() const { return value_; }

  int num_rows() const { return static_cast<int>(row_rhs_.size()); }
  int num_structural() const { return num_structural_; }

  // Exact certified results; valid after a solve that returned Optimal.
  const Rational& objective_value() const { return exact_objective_; }
  const std::vector<Rational>& structural_values() const { return exact_structural_; }
  Rational row_activity(int row) const;  // exact a.x for that row
  bool row_tight(int row) const;
  VarStatus var_status(int var) const { return status_[var]; }

 private:
  struct Bound {
    bool lo_finite = true, hi_finite = true;
    Rational lo = 0, hi = 0;
    double lo_d = 0.0, hi_d = 0.0;
  };
  struct Eta {
    int row;
    std::vector<double> col;  // B^{-1} a_q before the pivot
  };

  static constexpr double kInf = std::numeric_limits<double>::infinity();

  // column access
  int num_cols() const { return num_structural_ + static_cast<int>(unit_row_.size()); }
  bool is_unit(int col) const { return col >= num_structural_; }
  int unit_row(int col) const { return unit_row_[col - num_structural_]; }
  int unit_coeff(int col) const { return unit_coeff_[col - num_structural_]; }
  bool is_fixed(int col) const;
  double col_dot(int col, const std::vector<double>& y) const;
  int make_unit_col(int row, int coeff, Bound bound, bool artificial);

  // double-precision machinery
  void factorize();
  void ftran(std::vector<double>& v) const;
  void btran(std::vector<double>& v) const;
  void compute_values();
  std::vector<double> ftran_col(int col) const;
  double current_cost(int col) const;
  double bound_value(int col) const;
  void crash_basis(const std::vector<std::pair<int, int>>& crash_hint);
  void primal_loop();
  void dual_loop();
  bool crash_point_infeasible() const;
  void install_artificials();
  void retire_artificials();
  LpStatus run_float(const std::vector<std::pair<int, int>>& crash_hint);
  LpStatus run_to_optimal(const std::vector<std::pair<int, int>>& crash_hint);
  void set_perturbation(bool on);
  bool rescue_from_stall(int attempt, const SolverError& err);

  // exact machinery
  Rational exact_cost(int col) const;
  Rational exact_bound_value(int col) const;
  Rational exact_col_dot(int col, const std::vector<Rational>& y) const;
  std::vector<Rational> exact_col_dense(int col) const;
  Rational exact_optimize();  // exact Bland pivots until optimal for current costs
  void certify();

  Options options_;
  int num_structural_;
  std::vector<std::vector<std::pair<int, Rational>>> cols_;    // structural, rational
  std::vector<std::vector<std::pair<int, double>>> cols_d_;    // structural, double
  std::vector<Rational> cost_;                                 // structural costs
  std::vector<double> cost_d_;
  std::vector<Bound> bounds_;       // per column (structural + unit)
  std::vector<int> unit_row_;       // per unit column
  std::vector<int> unit_coeff_;     // per unit column, +-1
  std::vector<bool> is_artificial_; // per unit column
  std::vector<Rational> row_rhs_;
  std::vector<double> row_rhs_d_;
  std::vector<int> slack_col_;                  // per row
  std::vector<std::vector<int>> row_units_;     // per row: unit columns touching it
  bool phase_one_ = false;

  std::vector<int> basic_;          // per row: basic column
  std::vector<VarStatus> status_;   // per column
  std::vector<double> value_;       // per column, current point
  std::vector<int> basis_pos_;      // per column: row if basic, else -1

  // dense LU of the basis (row-major), with partial-pivot permutation
  std::vector<double> lu_;
  std::vector<int> lu_perm_;
  std::vector<Eta> etas_;
  bool bland_ = false;
  bool force_bland_ = false;
  int degenerate_streak_ = 0;
  int iter_budget_ = 0;  // 0 means options_.max_iter; set by warm resolves
  std::vector<double> perturb_;  // float-only cost jitter, empty when off

  // exact certified state
  std::vector<Rational> exact_value_;  // per column
  std::vector<Rational> exact_structural_;
  Rational exact_objective_;
  bool certified_ = false;
};

// Solves a general problem through the engine. crash_hint as in
// SimplexEngine::solve.
LpSolution solve_lp(const LpProblem& problem,
                    const std::vector<std::pair<int, int>>& crash_hint = {});

}  // namespace lpdec
