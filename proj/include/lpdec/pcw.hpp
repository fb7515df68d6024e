#pragma once

#include <optional>
#include <vector>

#include "lpdec/lclp.hpp"
#include "lpdec/parallel.hpp"
#include "lpdec/rational.hpp"
#include "lpdec/rng.hpp"
#include "lpdec/tanner_code.hpp"

namespace lpdec {

// BSC pseudo-codeword weight. e is the median size: the smallest count of
// coordinates whose sum reaches half the total, decided exactly.
struct WeightReport {
  int w_bsc = 0;
  int e = 0;
  bool equality_case = false;  // the e largest sum to exactly half the total
};

// Every median consists of all of `forced` plus `choose` positions out of
// `choices` (the coordinates tied at the threshold value).
struct MedianSet {
  int e = 0;
  std::vector<int> forced;   // ascending
  std::vector<int> choices;  // ascending
  int choose = 0;

  BigInt median_count() const;  // C(|choices|, choose)
};

// Both throw std::invalid_argument on the zero vector.
WeightReport bsc_weight(const PseudoCodeword& pcw);
MedianSet enumerate_medians(const PseudoCodeword& pcw);

// One median drawn uniformly over the tie resolutions.
FlipSupport pick_median(const PseudoCodeword& pcw, SplitRng& rng);

Rational frac_weight(const PseudoCodeword& pcw);

// frac_weight / max coordinate; rejects the zero vector.
Rational max_frac_weight(const PseudoCodeword& pcw);

// w_bsc >= 2*ceil(w_frac/2) - 1 and w_bsc + 1 >= w_max_frac, both exact.
struct WeightBoundsReport {
  WeightReport weight;
  Rational w_frac;
  Rational w_max_frac;
  bool frac_bound_ok = false;
  bool max_frac_bound_ok = false;

  bool pass() const { return frac_bound_ok && max_frac_bound_ok; }
};

WeightBoundsReport check_weight_bounds(const PseudoCodeword& pcw);

// Minimum frac_weight over the nonzero vertices of the projected decoding
// polytope, with a vertex attaining it. Computed facet by facet: for every
// inequality of the projection not tight at the origin (upper box bounds,
// odd sets of size >= 3), minimize the coordinate sum over the polytope
// with that inequality tightened to equality; the answer is the smallest
// strictly positive optimum. Per-facet LPs run in parallel; the reduction
// is deterministic (first candidate in a fixed order wins ties).
//
// The restriction of the same minimization to the odd-set faces alone is
// reported separately: it can be strictly larger when the overall minimum
// is attained only on box faces, and it is absent when no check has degree
// >= 3 or every odd-set face is empty.
struct FractionalDistanceReport {
  Rational distance;
  std::vector<Rational> minimizer;  // vertex of the projected polytope
  std::optional<Rational> parity_distance;
  std::vector<Rational> parity_minimizer;  // empty when parity_distance is absent
};

FractionalDistanceReport fractional_distance_report(const TannerCode& code,
                                                    int workers = default_workers());
Rational fractional_distance(const TannerCode& code, int workers = default_workers());

}  // namespace lpdec
