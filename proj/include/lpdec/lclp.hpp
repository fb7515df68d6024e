#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "lpdec/lp.hpp"
#include "lpdec/rational.hpp"
#include "lpdec/tanner_code.hpp"

namespace lpdec {

// Noise realization over the BSC with the all-zero codeword sent: the set
// of flipped positions. 0-based internally (1-based only at file/CLI/JSON
// boundaries).
struct FlipSupport {
  int n = 0;
  std::vector<int> support;  // sorted, unique, each in [0, n)

  // Validates, sorts and dedup-checks. Throws std::invalid_argument.
  static FlipSupport make(int n, std::vector<int> positions);
  bool contains(int position) const;
  int size() const { return static_cast<int>(support.size()); }
  bool operator==(const FlipSupport&) const = default;
};

// Scaled log-likelihoods: +1 where the received bit is 0, -1 where it was
// flipped.
struct LlrVector {
  std::vector<int> gamma;
};

LlrVector llr_from_flips(const FlipSupport& flips);

// The f-part of a decoding-polytope vertex, exact.
struct PseudoCodeword {
  std::vector<Rational> f;

  bool is_zero() const;
  bool is_integral() const;
  std::vector<int> support() const;  // positions with f_i > 0
  bool operator==(const PseudoCodeword&) const = default;
};

enum class DecodeKind { AllZero, NonzeroCodeword, FractionalPcw, ZeroCostTie };

// Anything other than AllZero is a decoding failure; a zero-cost tie counts
// as failure.
struct DecodeOutcome {
  DecodeKind kind = DecodeKind::AllZero;
  std::optional<PseudoCodeword> pcw;  // absent exactly for AllZero
  Rational cost;

  bool failure() const { return kind != DecodeKind::AllZero; }
};

enum class DecodeBackend { Full, Projected };

// Checks with degree beyond this are rejected by build_lclp: the w-block
// has 2^(degree-1) variables per check.
inline constexpr int kMaxCheckDegree = 16;

// Even-size subsets of {0,...,degree-1} as bitmasks in ascending order; the
// w-variable blocks of build_lclp index subsets in this order (mask bit t is
// the t-th neighbor of the check).
std::vector<unsigned> even_subset_masks(int degree);

// Variables: n f-variables first, then one w variable per check and
// even-size subset of its neighborhood (empty set included). All bounds
// [0,1]. Rows: per-check normalization sum_T w_{j,T} = 1 (rows 0..m-1),
// then couplings f_i = sum_{T ni i} w_{j,T} grouped by check, neighbors
// ascending. Objective: gamma on the f-variables, 0 on w.
LpProblem build_lclp(const TannerCode& code, const LlrVector& llr);

// Feasible starting basis for build_lclp output: the all-zero codeword,
// with w_{j,empty} basic in each normalization row.
std::vector<std::pair<int, int>> lclp_crash_hint(const TannerCode& code);

// C(flips, pcw) = sum_{i not in supp} p_i - sum_{i in supp} p_i, exact.
Rational cost(const FlipSupport& flips, const PseudoCodeword& pcw);

// LP-decode the noise realization. Classification of the exact optimum:
// negative optimum is a failure (NonzeroCodeword when the vertex is 0/1,
// FractionalPcw otherwise); optimum zero with a nonzero vertex is a
// ZeroCostTie; optimum zero with the zero vertex triggers the zero-cost
// probe, whose nonzero point (if any) makes it a ZeroCostTie, else AllZero.
DecodeOutcome decode(const TannerCode& code, const FlipSupport& flips,
                     DecodeBackend backend = DecodeBackend::Full);

// Maximize sum f over the decoding polytope with the decoding cost forced
// <= 0; a nonzero optimum witnesses a zero-cost failure. Meaningful when
// the primary optimum is 0. Always solved on the f-projection (same optimum,
// and the witness is the f-part of a polytope point), so the backend choice
// does not change the result.
std::optional<PseudoCodeword> probe_zero_cost(const TannerCode& code, const FlipSupport& flips,
                                              DecodeBackend backend = DecodeBackend::Full);

}  // namespace lpdec
