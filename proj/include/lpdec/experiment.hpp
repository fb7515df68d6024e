#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "lpdec/lclp.hpp"
#include "lpdec/parallel.hpp"
#include "lpdec/rational.hpp"
#include "lpdec/tanner_code.hpp"

namespace lpdec {

// One halted trial before deduplication.
struct InstantonHit {
  FlipSupport support;
  int pcw_weight = 0;
  Rational frac_weight;
  int trial = 0;
};

struct InstantonRecord {
  std::vector<int> support;  // ascending, the dedup key
  int size = 0;
  int pcw_weight = 0;  // BSC weight of the converged pseudo-codeword
  Rational frac_weight;
  int first_seen_trial = 0;
  int hit_count = 0;

  bool operator==(const InstantonRecord&) const = default;
};

struct BatchTallies {
  long long halted = 0;
  long long insufficient_noise = 0;
  long long solver_failures = 0;
  long long step_bound_ok = 0;     // steps_used <= 2 k0
  long long weight_bounds_ok = 0;  // final pseudo-codeword passed check_weight_bounds

  bool operator==(const BatchTallies&) const = default;
};

// frequency_bars[s] counts trials that halted at an instanton of size s; the
// 0 bin counts trials that never left the all-zero codeword (insufficient
// noise, plus the rare solver failure), so the bars always sum to `trials`.
// unique_bars[s] counts distinct instantons of size s.
struct BatchReport {
  std::string code_fingerprint;
  int k0 = 0;
  int trials = 0;
  std::uint64_t master_seed = 0;
  std::vector<long long> frequency_bars;
  std::vector<long long> unique_bars;
  BatchTallies tallies;
  std::vector<int> failed_trials;  // trials lost to solver errors
  std::vector<InstantonRecord> records;

  bool operator==(const BatchReport&) const = default;
};

// Groups hits by support, sums hit counts, keeps the earliest trial, and
// orders records by size then lexicographic support. Order-independent in
// the input.
std::vector<InstantonRecord> dedup(const std::vector<InstantonHit>& hits);

// Runs `trials` independent searches. Trial t flips the k0-subset drawn from
// rng.fork(t).fork(0) and feeds rng.fork(t).fork(1) to the search, where rng
// seeds from master_seed, so any single trial can be replayed in isolation
// and the report is identical for every worker count.
BatchReport run_batch(const TannerCode& code, int k0, int trials, std::uint64_t master_seed,
                      DecodeBackend backend = DecodeBackend::Projected,
                      int workers = default_workers());

// Decodes every support of size 1..max_size in ascending-size lexicographic
// order, skipping supersets of failures already found, and returns the
// minimal failing supports. Throws when the decode budget runs out.
std::vector<FlipSupport> brute_force_instantons(const TannerCode& code, int max_size,
                                                DecodeBackend backend = DecodeBackend::Full,
                                                long long decode_cap = 2000000);

// Schema version 1; see docs/report_schema.md. Supports are 1-based in the
// file, rationals are "p/q" strings, keys are sorted.
nlohmann::json report_to_json(const BatchReport& report);
BatchReport report_from_json(const nlohmann::json& j);

// Bar table with header "size,frequency_count,unique_count".
std::string report_to_csv(const BatchReport& report);

// Writes JSON or CSV depending on the file extension.
void export_report(const BatchReport& report, const std::string& path);
BatchReport import_report(const std::string& path);

}  // namespace lpdec
