#include "lpdec/pcw.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <optional>
#include <stdexcept>

#include "lpdec/projected.hpp"
#include "lpdec/simplex.hpp"

namespace lpdec {

namespace {

void reject_zero(const PseudoCodeword& pcw) {
  if (pcw.f.empty() || pcw.is_zero())
    throw std::invalid_argument("the zero vector has no pseudo-codeword weight");
}

// indices sorted by descending coordinate, index ascending within ties
std::vector<int> descending_order(const std::vector<Rational>& f) {
  std::vector<int> order(f.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return f[a] > f[b]; });
  return order;
}

}  // namespace

WeightReport bsc_weight(const PseudoCodeword& pcw) {
  reject_zero(pcw);
  const std::vector<int> order = descending_order(pcw.f);
  Rational total = 0;
  for (const Rational& x : pcw.f) total += x;

  Rational prefix = 0;
  WeightReport report;
  for (size_t k = 0; k < order.size(); ++k) {
    prefix += pcw.f[order[k]];
    if (2 * prefix >= total) {
      report.e = static_cast<int>(k) + 1;
      report.equality_case = 2 * prefix == total;
      report.w_bsc = report.equality_case ? 2 * report.e : 2 * report.e - 1;
      return report;
    }
  }
  throw std::logic_error("median size not found");
}

MedianSet enumerate_medians(const PseudoCodeword& pcw) {
  const WeightReport report = bsc_weight(pcw);
  const std::vector<int> order = descending_order(pcw.f);
  const Rational& threshold = pcw.f[order[report.e - 1]];

  MedianSet medians;
  medians.e = report.e;
  for (int i = 0; i < static_cast<int>(pcw.f.size()); ++i) {
    if (pcw.f[i] > threshold)
      medians.forced.push_back(i);
    else if (pcw.f[i] == threshold)
      medians.choices.push_back(i);
  }
  medians.choose = report.e - static_cast<int>(medians.forced.size());
  return medians;
}

BigInt MedianSet::median_count() const {
  BigInt count = 1;
  const int n = static_cast<int>(choices.size());
  for (int k = 1; k <= choose; ++k) count = count * (n - k + 1) / k;
  return count;
}

FlipSupport pick_median(const PseudoCodeword& pcw, SplitRng& rng) {
  const MedianSet medians = enumerate_medians(pcw);
  std::vector<int> positions = medians.forced;
  for (int k : rng.subset(static_cast<int>(medians.choices.size()), medians.choose))
    positions.push_back(medians.choices[k]);
  return FlipSupport::make(static_cast<int>(pcw.f.size()), std::move(positions));
}

Rational frac_weight(const PseudoCodeword& pcw) {
  Rational total = 0;
  for (const Rational& x : pcw.f) total += x;
  return total;
}

Rational max_frac_weight(const PseudoCodeword& pcw) {
  reject_zero(pcw);
  const Rational& top = *std::max_element(pcw.f.begin(), pcw.f.end());
  return frac_weight(pcw) / top;
}

WeightBoundsReport check_weight_bounds(const PseudoCodeword& pcw) {
  WeightBoundsReport report;
  report.weight = bsc_weight(pcw);
  report.w_frac = frac_weight(pcw);
  report.w_max_frac = max_frac_weight(pcw);

  // ceil(w_frac / 2), exactly
  BigInt num = numerator(report.w_frac);
  BigInt den = 2 * denominator(report.w_frac);
  BigInt half_up = (num + den - 1) / den;
  report.frac_bound_ok = report.weight.w_bsc >= 2 * half_up - 1;
  report.max_frac_bound_ok = report.weight.w_bsc + 1 >= report.w_max_frac;
  return report;
}

namespace {

struct FacetCandidate {
  int fix_var = -1;  // upper box face f_i = 1 when >= 0, else the odd set
  OddSetCut cut;
};

std::vector<FacetCandidate> facet_candidates(const TannerCode& code) {
  std::vector<FacetCandidate> candidates;
  for (int i = 0; i < code.num_vars(); ++i) candidates.push_back({i, {}});
  for (int j = 0; j < code.num_checks(); ++j) {
    const int degree = static_cast<int>(code.check_neighbors(j).size());
    for (unsigned mask = 1; mask < (1u << degree); ++mask) {
      const int size = std::popcount(mask);
      if (size % 2 == 1 && size >= 3) candidates.push_back({-1, {j, mask}});
    }
  }
  return candidates;
}

struct FacetMinimum {
  Rational value;
  std::vector<Rational> vertex;
};

std::optional<FacetMinimum> facet_minimum(const TannerCode& code, const FacetCandidate& facet) {
  ProjectedLp lp(code);
  lp.engine().set_objective(std::vector<Rational>(code.num_vars(), Rational(1)));
  if (facet.fix_var >= 0) {
    lp.engine().set_bounds(facet.fix_var, 1, 1);
  } else {
    auto [coeffs, rhs] = odd_set_row(code, facet.cut);
    lp.engine().add_row(std::move(coeffs), Relation::Eq, std::move(rhs));
  }
  if (lp.optimize() != LpStatus::Optimal) return std::nullopt;  // empty face
  return FacetMinimum{lp.engine().objective_value(), lp.engine().structural_values()};
}

}  // namespace

FractionalDistanceReport fractional_distance_report(const TannerCode& code, int workers) {
  const std::vector<FacetCandidate> candidates = facet_candidates(code);
  std::vector<std::optional<FacetMinimum>> results(candidates.size());
  parallel_for(candidates.size(), workers,
               [&](std::size_t k) { results[k] = facet_minimum(code, candidates[k]); });

  FractionalDistanceReport report;
  bool found = false;
  for (size_t k = 0; k < results.size(); ++k) {
    const auto& result = results[k];
    if (!result || result->value <= 0) continue;
    if (!found || result->value < report.distance) {
      report.distance = result->value;
      report.minimizer = result->vertex;
      found = true;
    }
    if (candidates[k].fix_var < 0 &&
        (!report.parity_distance || result->value < *report.parity_distance)) {
      report.parity_distance = result->value;
      report.parity_minimizer = result->vertex;
    }
  }
  if (!found)
    throw std::invalid_argument("no nonzero vertex reachable; the code admits only the zero word");
  return report;
}

Rational fractional_distance(const TannerCode& code, int workers) {
  return fractional_distance_report(code, workers).distance;
}

}  // namespace lpdec
