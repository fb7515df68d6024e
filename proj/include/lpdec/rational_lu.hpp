#pragma once

#include <utility>
#include <vector>

#include "lpdec/rational.hpp"

namespace lpdec {

// Sparse LU factorization of a square rational matrix, used to certify
// simplex bases exactly. Pivot rows are chosen by minimum fill count, so
// the factors stay sparse for the mostly +-1 bases that show up here.
class RationalLu {
 public:
  // cols[q] holds the sparse column q as (row, value) pairs.
  // Throws SolverError(SingularBasis) if the matrix is singular.
  static RationalLu factor(int m, const std::vector<std::vector<std::pair<int, Rational>>>& cols);

  // Solves B x = rhs.
  std::vector<Rational> solve(const std::vector<Rational>& rhs) const;
  // Solves B^T y = c.
  std::vector<Rational> solve_transposed(const std::vector<Rational>& c) const;

  int size() const { return m_; }

 private:
  struct LStep {
    int target;  // pivot position of the row the multiple was subtracted from
    Rational mult;
  };

  int m_ = 0;
  std::vector<int> pivot_row_;                        // pivot position -> original row
  std::vector<std::vector<std::pair<int, Rational>>> urows_;  // upper factor, diag first
  std::vector<std::vector<LStep>> lsteps_;            // per pivot position
};

}  // namespace lpdec
