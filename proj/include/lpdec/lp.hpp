#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "lpdec/rational.hpp"

namespace lpdec {

enum class Relation { LessEq, Eq, GreaterEq };

struct LinearConstraint {
  std::vector<std::pair<int, Rational>> coeffs;  // unique variable indices
  Relation rel = Relation::LessEq;
  Rational rhs = 0;
};

// min objective . x  subject to the constraints and finite box bounds.
struct LpProblem {
  int num_vars = 0;
  std::vector<Rational> objective;
  std::vector<std::pair<Rational, Rational>> var_bounds;  // [lo, hi], lo <= hi
  std::vector<LinearConstraint> constraints;

  void validate() const;  // throws std::invalid_argument
};

enum class LpStatus { Optimal, Infeasible };
enum class VarStatus : unsigned char { Basic, AtLower, AtUpper };

// A basic optimal vertex with exact rational values. Every field is certified
// in rational arithmetic: the vertex satisfies each constraint exactly, and
// optimality of the basis is verified on exact reduced costs.
struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  Rational objective_value;
  std::vector<Rational> vertex;      // one exact value per structural variable
  std::vector<VarStatus> var_status; // Basic / AtLower / AtUpper per variable
  std::vector<bool> row_tight;       // constraint holds with equality at the vertex
};

// Solver malfunction (iteration limit, numerically unrecoverable basis).
// Distinct from Infeasible, which is a regular status.
class SolverError : public std::runtime_error {
 public:
  enum class Kind { IterationLimit, SingularBasis, Numeric };
  SolverError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

}  // namespace lpdec
