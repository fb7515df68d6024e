#include "lpdec/isa.hpp"

#include <stdexcept>
#include <utility>

namespace lpdec {

namespace {

FlipSupport one_removed(const FlipSupport& flips, int index) {
  std::vector<int> positions = flips.support;
  positions.erase(positions.begin() + index);
  return FlipSupport::make(flips.n, std::move(positions));
}

}  // namespace

IsaResult isa_run(const TannerCode& code, const FlipSupport& initial, const SplitRng& rng,
                  DecodeBackend backend) {
  IsaResult result;
  result.k0 = initial.size();

  DecodeOutcome start = decode(code, initial, backend);
  if (!start.failure()) return result;

  PseudoCodeword p = *start.pcw;
  if (bsc_weight(p).w_bsc > 2 * result.k0)
    throw std::logic_error("initial pseudo-codeword heavier than twice the flip count");

  result.status = IsaStatus::Halted;
  const int step_limit = 2 * result.k0;
  for (int l = 1;; ++l) {
    if (l > step_limit) throw std::logic_error("instanton search exceeded its step bound");

    IsaStep step;
    step.step_index = l;
    step.input_pcw = p;
    step.input_weight = bsc_weight(p);

    SplitRng step_rng = rng.fork(l);
    step.median = pick_median(p, step_rng);
    step.median_outcome = decode(code, step.median, backend);
    if (!step.median_outcome.failure())
      throw std::logic_error("median of a pseudo-codeword decoded to all-zero");

    const PseudoCodeword& p_m = *step.median_outcome.pcw;
    const int w_m = bsc_weight(p_m).w_bsc;
    if (w_m > step.input_weight.w_bsc)
      throw std::logic_error("median pseudo-codeword gained weight");

    if (w_m < step.input_weight.w_bsc) {
      step.branch = IsaBranch::WeightDropped;
      p = p_m;
      result.trace.push_back(std::move(step));
      continue;
    }

    step.branch = IsaBranch::SubsetSearch;
    std::vector<int> failing;
    for (int t = 0; t < step.median.size(); ++t) {
      DecodeOutcome outcome = decode(code, one_removed(step.median, t), backend);
      if (outcome.failure()) {
        if (*outcome.pcw == step.input_pcw)
          throw std::logic_error("one-removed subset reproduced the input pseudo-codeword");
        failing.push_back(t);
      }
      step.subset_outcomes.push_back(std::move(outcome));
    }

    if (failing.empty()) {
      step.halted = true;
      result.instanton = step.median;
      result.final_pcw = p_m;
      result.trace.push_back(std::move(step));
      result.steps_used = l;
      return result;
    }

    const int choice = failing[step_rng.below(failing.size())];
    step.chosen_subset = choice;
    PseudoCodeword next = *step.subset_outcomes[choice].pcw;
    if (bsc_weight(next).w_bsc >= step.input_weight.w_bsc)
      throw std::logic_error("subset pseudo-codeword failed to lose weight");
    p = std::move(next);
    result.trace.push_back(std::move(step));
  }
}

InstantonReport verify_instanton(const TannerCode& code, const FlipSupport& candidate,
                                 DecodeBackend backend) {
  if (candidate.size() < 1) throw std::invalid_argument("empty candidate support");

  InstantonReport report;
  report.candidate_outcome = decode(code, candidate, backend);
  report.candidate_fails = report.candidate_outcome.failure();

  report.subsets_clean = true;
  for (int t = 0; t < candidate.size(); ++t) {
    DecodeOutcome outcome = decode(code, one_removed(candidate, t), backend);
    if (outcome.failure()) report.subsets_clean = false;
    report.subset_outcomes.push_back(std::move(outcome));
  }
  return report;
}

}  // namespace lpdec
