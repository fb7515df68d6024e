#include "lpdec/lclp.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <string>

#include "lpdec/projected.hpp"
#include "lpdec/simplex.hpp"

namespace lpdec {

FlipSupport FlipSupport::make(int n, std::vector<int> positions) {
  if (n <= 0) throw std::invalid_argument("flip support needs a positive length");
  std::sort(positions.begin(), positions.end());
  for (size_t k = 0; k < positions.size(); ++k) {
    if (positions[k] < 0 || positions[k] >= n)
      throw std::invalid_argument("flip position " + std::to_string(positions[k]) +
                                  " out of range");
    if (k > 0 && positions[k] == positions[k - 1])
      throw std::invalid_argument("flip position " + std::to_string(positions[k]) + " repeated");
  }
  FlipSupport flips;
  flips.n = n;
  flips.support = std::move(positions);
  return flips;
}

bool FlipSupport::contains(int position) const {
  return std::binary_search(support.begin(), support.end(), position);
}

LlrVector llr_from_flips(const FlipSupport& flips) {
  LlrVector llr;
  llr.gamma.assign(flips.n, 1);
  for (int i : flips.support) llr.gamma[i] = -1;
  return llr;
}

bool PseudoCodeword::is_zero() const {
  for (const Rational& x : f)
    if (x != 0) return false;
  return true;
}

bool PseudoCodeword::is_integral() const {
  for (const Rational& x : f)
    if (x != 0 && x != 1) return false;
  return true;
}

std::vector<int> PseudoCodeword::support() const {
  std::vector<int> s;
  for (int i = 0; i < static_cast<int>(f.size()); ++i)
    if (f[i] > 0) s.push_back(i);
  return s;
}

std::vector<unsigned> even_subset_masks(int degree) {
  std::vector<unsigned> masks;
  masks.reserve(1u << (degree - 1));
  for (unsigned mask = 0; mask < (1u << degree); ++mask)
    if (std::popcount(mask) % 2 == 0) masks.push_back(mask);
  return masks;
}

namespace {

std::vector<int> w_offsets(const TannerCode& code) {
  std::vector<int> offsets(code.num_checks() + 1);
  offsets[0] = code.num_vars();
  for (int j = 0; j < code.num_checks(); ++j) {
    int degree = static_cast<int>(code.check_neighbors(j).size());
    if (degree > kMaxCheckDegree)
      throw std::invalid_argument("check degree " + std::to_string(degree) + " exceeds " +
                                  std::to_string(kMaxCheckDegree));
    offsets[j + 1] = offsets[j] + (1 << (degree - 1));
  }
  return offsets;
}

void check_llr(const TannerCode& code, const LlrVector& llr) {
  if (static_cast<int>(llr.gamma.size()) != code.num_vars())
    throw std::invalid_argument("llr length does not match the code");
  for (int g : llr.gamma)
    if (g != 1 && g != -1) throw std::invalid_argument("llr entries must be +-1");
}

}  // namespace

LpProblem build_lclp(const TannerCode& code, const LlrVector& llr) {
  check_llr(code, llr);
  const int n = code.num_vars();
  const int m = code.num_checks();
  const std::vector<int> offsets = w_offsets(code);

  LpProblem problem;
  problem.num_vars = offsets[m];
  problem.objective.assign(problem.num_vars, Rational(0));
  for (int i = 0; i < n; ++i) problem.objective[i] = llr.gamma[i];
  problem.var_bounds.assign(problem.num_vars, {Rational(0), Rational(1)});

  for (int j = 0; j < m; ++j) {
    const auto masks = even_subset_masks(static_cast<int>(code.check_neighbors(j).size()));
    LinearConstraint normalization;
    normalization.rel = Relation::Eq;
    normalization.rhs = 1;
    for (size_t idx = 0; idx < masks.size(); ++idx)
      normalization.coeffs.emplace_back(offsets[j] + static_cast<int>(idx), Rational(1));
    problem.constraints.push_back(std::move(normalization));
  }
  for (int j = 0; j < m; ++j) {
    const auto& neighbors = code.check_neighbors(j);
    const auto masks = even_subset_masks(static_cast<int>(neighbors.size()));
    for (int t = 0; t < static_cast<int>(neighbors.size()); ++t) {
      LinearConstraint coupling;
      coupling.rel = Relation::Eq;
      coupling.rhs = 0;
      coupling.coeffs.emplace_back(neighbors[t], Rational(1));
      for (size_t idx = 0; idx < masks.size(); ++idx)
        if ((masks[idx] >> t) & 1u)
          coupling.coeffs.emplace_back(offsets[j] + static_cast<int>(idx), Rational(-1));
      problem.constraints.push_back(std::move(coupling));
    }
  }
  return problem;
}

std::vector<std::pair<int, int>> lclp_crash_hint(const TannerCode& code) {
  const std::vector<int> offsets = w_offsets(code);
  std::vector<std::pair<int, int>> hint;
  hint.reserve(code.num_checks());
  for (int j = 0; j < code.num_checks(); ++j) hint.emplace_back(j, offsets[j]);
  return hint;
}

Rational cost(const FlipSupport& flips, const PseudoCodeword& pcw) {
  if (static_cast<int>(pcw.f.size()) != flips.n)
    throw std::invalid_argument("pseudo-codeword length does not match the flip support");
  Rational total = 0;
  for (int i = 0; i < flips.n; ++i) {
    if (flips.contains(i))
      total -= pcw.f[i];
    else
      total += pcw.f[i];
  }
  return total;
}

namespace {

std::vector<Rational> gamma_costs(const LlrVector& llr) {
  std::vector<Rational> costs(llr.gamma.size());
  for (size_t i = 0; i < llr.gamma.size(); ++i) costs[i] = llr.gamma[i];
  return costs;
}

void add_zero_cost_row(SimplexEngine& engine, const LlrVector& llr) {
  std::vector<std::pair<int, Rational>> coeffs;
  coeffs.reserve(llr.gamma.size());
  for (int i = 0; i < static_cast<int>(llr.gamma.size()); ++i)
    coeffs.emplace_back(i, Rational(llr.gamma[i]));
  engine.add_row(std::move(coeffs), Relation::LessEq, Rational(0));
}

std::optional<PseudoCodeword> probe_projected_in(ProjectedLp& lp, const TannerCode& code,
                                                 const LlrVector& llr) {
  add_zero_cost_row(lp.engine(), llr);
  if (lp.reoptimize(std::vector<Rational>(code.num_vars(), Rational(-1))) != LpStatus::Optimal)
    throw SolverError(SolverError::Kind::Numeric, "zero-cost probe reported infeasible");
  if (lp.engine().objective_value() == 0) return std::nullopt;
  PseudoCodeword pcw;
  pcw.f = lp.engine().structural_values();
  return pcw;
}

// The probe runs on the f-projection regardless of the decode backend: the
// maximum of sum f is the same there, and over the full formulation the
// all-zero face makes the second LP hopelessly degenerate.
std::optional<PseudoCodeword> probe_fresh(const TannerCode& code, const LlrVector& llr) {
  ProjectedLp lp(code);
  lp.engine().set_objective(std::vector<Rational>(code.num_vars(), Rational(-1)));
  return probe_projected_in(lp, code, llr);
}

DecodeOutcome classify(const TannerCode& code, const FlipSupport& flips, const Rational& optimum,
                       PseudoCodeword pcw, DecodeBackend backend, ProjectedLp* lp,
                       const LlrVector& llr) {
  if (optimum > 0)
    throw SolverError(SolverError::Kind::Numeric, "positive decoding optimum");
  DecodeOutcome outcome;
  outcome.cost = optimum;
  if (optimum < 0) {
    outcome.kind = pcw.is_integral() ? DecodeKind::NonzeroCodeword : DecodeKind::FractionalPcw;
    outcome.pcw = std::move(pcw);
    return outcome;
  }
  if (!pcw.is_zero()) {
    outcome.kind = DecodeKind::ZeroCostTie;
    outcome.pcw = std::move(pcw);
    return outcome;
  }
  std::optional<PseudoCodeword> tie =
      backend == DecodeBackend::Full ? probe_fresh(code, llr) : probe_projected_in(*lp, code, llr);
  if (tie) {
    outcome.kind = DecodeKind::ZeroCostTie;
    outcome.pcw = std::move(tie);
  } else {
    outcome.kind = DecodeKind::AllZero;
  }
  return outcome;
}

}  // namespace

DecodeOutcome decode(const TannerCode& code, const FlipSupport& flips, DecodeBackend backend) {
  if (flips.n != code.num_vars())
    throw std::invalid_argument("flip support length does not match the code");
  const LlrVector llr = llr_from_flips(flips);

  if (backend == DecodeBackend::Full) {
    LpSolution solution = solve_lp(build_lclp(code, llr), lclp_crash_hint(code));
    if (solution.status != LpStatus::Optimal)
      throw SolverError(SolverError::Kind::Numeric, "decoding LP reported infeasible");
    PseudoCodeword pcw;
    pcw.f.assign(solution.vertex.begin(), solution.vertex.begin() + code.num_vars());
    return classify(code, flips, solution.objective_value, std::move(pcw), backend, nullptr,
                    llr);
  }

  ProjectedLp lp(code);
  lp.engine().set_objective(gamma_costs(llr));
  if (lp.optimize() != LpStatus::Optimal)
    throw SolverError(SolverError::Kind::Numeric, "decoding LP reported infeasible");
  PseudoCodeword pcw;
  pcw.f = lp.engine().structural_values();
  return classify(code, flips, lp.engine().objective_value(), std::move(pcw), backend, &lp,
                  llr);
}

std::optional<PseudoCodeword> probe_zero_cost(const TannerCode& code, const FlipSupport& flips,
                                              DecodeBackend) {
  if (flips.n != code.num_vars())
    throw std::invalid_argument("flip support length does not match the code");
  const LlrVector llr = llr_from_flips(flips);
  return probe_fresh(code, llr);
}

}  // namespace lpdec
