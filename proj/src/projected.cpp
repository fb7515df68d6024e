#include "lpdec/projected.hpp"

#include <bit>
#include <cmath>

namespace lpdec {

std::optional<OddSetCut> most_violated_odd_set(const TannerCode& code, int check,
                                               const std::vector<Rational>& f) {
  const auto& neighbors = code.check_neighbors(check);
  const int d = static_cast<int>(neighbors.size());
  unsigned mask = 0;
  Rational lhs = 0;
  for (int t = 0; t < d; ++t) {
    const Rational& x = f[neighbors[t]];
    if (x > Rational(1, 2)) {
      mask |= 1u << t;
      lhs += 1 - x;
    } else {
      lhs += x;
    }
  }
  if (std::popcount(mask) % 2 == 0) {
    int best_t = 0;
    Rational best_delta;
    for (int t = 0; t < d; ++t) {
      Rational delta = abs(1 - 2 * f[neighbors[t]]);
      if (t == 0 || delta < best_delta) {
        best_delta = delta;
        best_t = t;
      }
    }
    mask ^= 1u << best_t;
    lhs += best_delta;
  }
  if (lhs < 1) return OddSetCut{check, mask};
  return std::nullopt;
}

std::optional<OddSetCut> most_violated_odd_set(const TannerCode& code, int check,
                                               const std::vector<double>& f, double tol) {
  const auto& neighbors = code.check_neighbors(check);
  const int d = static_cast<int>(neighbors.size());
  unsigned mask = 0;
  double lhs = 0;
  for (int t = 0; t < d; ++t) {
    double x = f[neighbors[t]];
    if (x > 0.5) {
      mask |= 1u << t;
      lhs += 1 - x;
    } else {
      lhs += x;
    }
  }
  if (std::popcount(mask) % 2 == 0) {
    int best_t = 0;
    double best_delta = 2.0;
    for (int t = 0; t < d; ++t) {
      double delta = std::fabs(1 - 2 * f[neighbors[t]]);
      if (delta < best_delta) {
        best_delta = delta;
        best_t = t;
      }
    }
    mask ^= 1u << best_t;
    lhs += best_delta;
  }
  if (lhs < 1 - tol) return OddSetCut{check, mask};
  return std::nullopt;
}

std::pair<std::vector<std::pair<int, Rational>>, Rational> odd_set_row(const TannerCode& code,
                                                                       const OddSetCut& cut) {
  const auto& neighbors = code.check_neighbors(cut.check);
  std::vector<std::pair<int, Rational>> coeffs;
  coeffs.reserve(neighbors.size());
  int set_size = 0;
  for (int t = 0; t < static_cast<int>(neighbors.size()); ++t) {
    const bool in_set = (cut.mask >> t) & 1u;
    coeffs.emplace_back(neighbors[t], in_set ? Rational(-1) : Rational(1));
    set_size += in_set;
  }
  return {std::move(coeffs), Rational(1 - set_size)};
}

Rational odd_set_lhs(const TannerCode& code, const OddSetCut& cut,
                     const std::vector<Rational>& f) {
  const auto& neighbors = code.check_neighbors(cut.check);
  Rational lhs = 0;
  for (int t = 0; t < static_cast<int>(neighbors.size()); ++t) {
    if ((cut.mask >> t) & 1u) {
      lhs += 1 - f[neighbors[t]];
    } else {
      lhs += f[neighbors[t]];
    }
  }
  return lhs;
}

ProjectedLp::ProjectedLp(const TannerCode& code) : code_(&code), engine_(code.num_vars()) {}

int ProjectedLp::add_violated_float() {
  const std::vector<double>& values = engine_.float_values();
  std::vector<double> f(values.begin(), values.begin() + code_->num_vars());
  int added = 0;
  for (int j = 0; j < code_->num_checks(); ++j) {
    auto cut = most_violated_odd_set(*code_, j, f, 1e-7);
    if (!cut || added_.count(*cut)) continue;
    auto [coeffs, rhs] = odd_set_row(*code_, *cut);
    engine_.add_row(std::move(coeffs), Relation::GreaterEq, std::move(rhs));
    added_.insert(*cut);
    ++added;
  }
  return added;
}

LpStatus ProjectedLp::cut_loop() {
  while (true) {
    while (add_violated_float() > 0)
      if (engine_.resolve_dual_float() == LpStatus::Infeasible) return LpStatus::Infeasible;
    if (engine_.certify_now() == LpStatus::Infeasible) return LpStatus::Infeasible;

    const std::vector<Rational>& f = engine_.structural_values();
    int added = 0;
    for (int j = 0; j < code_->num_checks(); ++j) {
      auto cut = most_violated_odd_set(*code_, j, f);
      if (!cut || added_.count(*cut)) continue;
      auto [coeffs, rhs] = odd_set_row(*code_, *cut);
      engine_.add_row(std::move(coeffs), Relation::GreaterEq, std::move(rhs));
      added_.insert(*cut);
      ++added;
    }
    if (added == 0) return LpStatus::Optimal;
    if (engine_.resolve_dual_float() == LpStatus::Infeasible) return LpStatus::Infeasible;
  }
}

LpStatus ProjectedLp::optimize() {
  if (engine_.solve_float() == LpStatus::Infeasible) return LpStatus::Infeasible;
  return cut_loop();
}

LpStatus ProjectedLp::reoptimize(std::vector<Rational> costs) {
  if (engine_.resolve_primal_float(std::move(costs)) == LpStatus::Infeasible)
    return LpStatus::Infeasible;
  return cut_loop();
}

}  // namespace lpdec
