#pragma once

#include <optional>
#include <vector>

#include "lpdec/lclp.hpp"
#include "lpdec/pcw.hpp"
#include "lpdec/rng.hpp"
#include "lpdec/tanner_code.hpp"

namespace lpdec {

enum class IsaBranch { WeightDropped, SubsetSearch };

// One step of the search. WeightDropped: the median's pseudo-codeword is
// strictly lighter and becomes the next input. SubsetSearch: equal weight,
// so every one-removed subset of the median is decoded (all recorded, in
// ascending removed-position order); if none fails the median is the
// instanton, otherwise a uniformly chosen failing subset's pseudo-codeword
// continues the descent.
struct IsaStep {
  int step_index = 0;  // 1-based, matches steps_used
  PseudoCodeword input_pcw;
  WeightReport input_weight;
  FlipSupport median;
  DecodeOutcome median_outcome;
  IsaBranch branch = IsaBranch::WeightDropped;
  std::vector<DecodeOutcome> subset_outcomes;  // SubsetSearch only
  std::optional<int> chosen_subset;            // index into median.support; empty on halt
  bool halted = false;
};

enum class IsaStatus { Halted, InsufficientNoise };

struct IsaResult {
  IsaStatus status = IsaStatus::InsufficientNoise;
  FlipSupport instanton;     // meaningful only when Halted
  PseudoCodeword final_pcw;  // pseudo-codeword of the halting median
  std::vector<IsaStep> trace;
  int k0 = 0;
  int steps_used = 0;
};

// Median-descent instanton search. InsufficientNoise when the initial
// vector already decodes to zero. The pseudo-codeword weight strictly
// decreases every step, so the run halts within 2*k0 steps; violations of
// that bound or of the weight lemmas throw std::logic_error since they
// would mean the decoder or the weight computation is broken. Randomness
// (median tie resolution, failing-subset choice) is drawn from rng.fork(l)
// at step l, so a run is reproducible from (initial, rng) alone.
IsaResult isa_run(const TannerCode& code, const FlipSupport& initial, const SplitRng& rng,
                  DecodeBackend backend = DecodeBackend::Projected);

// Independent instanton check, decoding everything afresh: the candidate
// itself must fail, and every one-removed subset must decode to zero (the
// decoder's AllZero already certifies that no nonzero zero-cost point
// exists). Checking one-removed subsets suffices because failures are
// monotone under support growth.
struct InstantonReport {
  bool candidate_fails = false;
  bool subsets_clean = false;
  DecodeOutcome candidate_outcome;
  std::vector<DecodeOutcome> subset_outcomes;  // ascending removed position

  bool verified() const { return candidate_fails && subsets_clean; }
};

InstantonReport verify_instanton(const TannerCode& code, const FlipSupport& candidate,
                                 DecodeBackend backend = DecodeBackend::Projected);

}  // namespace lpdec
