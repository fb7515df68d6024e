#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "lpdec/experiment.hpp"
#include "lpdec/isa.hpp"
#include "lpdec/pcw.hpp"
#include "lpdec/rng.hpp"

using namespace lpdec;

namespace {

TannerCode hamming_code() {
  return TannerCode::from_check_neighbors(7, {{0, 1, 2, 4}, {0, 1, 3, 5}, {0, 2, 3, 6}});
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream body;
  body << in.rdbuf();
  return body.str();
}

}  // namespace

TEST_CASE("dedup merges hits that share a support") {
  Rational seven_thirds(7, 3);
  std::vector<InstantonHit> hits = {
      {FlipSupport::make(12, {1, 5, 9}), 3, seven_thirds, 7},
      {FlipSupport::make(12, {0, 2}), 3, 3, 5},
      {FlipSupport::make(12, {9, 1, 5}), 3, seven_thirds, 3},
  };
  std::vector<InstantonRecord> records = dedup(hits);
  REQUIRE(records.size() == 2);
  CHECK(records[0].support == std::vector<int>{0, 2});
  CHECK(records[0].size == 2);
  CHECK(records[0].hit_count == 1);
  CHECK(records[1].support == std::vector<int>{1, 5, 9});
  CHECK(records[1].hit_count == 2);
  CHECK(records[1].first_seen_trial == 3);
  CHECK(records[1].frac_weight == seven_thirds);

  std::vector<InstantonHit> reversed(hits.rbegin(), hits.rend());
  CHECK(dedup(reversed) == records);
}

TEST_CASE("batch trials replay in isolation") {
  TannerCode code = hamming_code();
  BatchReport report = run_batch(code, 2, 12, 0xbead);
  CHECK(report.k0 == 2);
  CHECK(report.trials == 12);
  CHECK(report.code_fingerprint == code_fingerprint(code));

  std::vector<long long> bars(1, 0);
  std::vector<InstantonHit> hits;
  SplitRng master(0xbead);
  for (int t = 0; t < 12; ++t) {
    SplitRng trial_rng = master.fork(t);
    SplitRng draw = trial_rng.fork(0);
    FlipSupport initial = FlipSupport::make(7, draw.subset(7, 2));
    IsaResult result = isa_run(code, initial, trial_rng.fork(1));
    if (result.status != IsaStatus::Halted) {
      ++bars[0];
      continue;
    }
    int size = result.instanton.size();
    if (static_cast<int>(bars.size()) <= size) bars.resize(size + 1, 0);
    ++bars[size];
    hits.push_back({result.instanton, bsc_weight(result.final_pcw).w_bsc,
                    frac_weight(result.final_pcw), t});
  }
  CHECK(report.frequency_bars == bars);
  CHECK(report.records == dedup(hits));

  long long total = 0;
  for (long long bar : report.frequency_bars) total += bar;
  CHECK(total == report.trials);
  long long hit_sum = 0;
  for (const InstantonRecord& record : report.records) hit_sum += record.hit_count;
  CHECK(hit_sum == report.tallies.halted);
  REQUIRE(report.unique_bars.size() == report.frequency_bars.size());
  for (std::size_t s = 0; s < report.unique_bars.size(); ++s)
    CHECK(report.unique_bars[s] <= report.frequency_bars[s]);
}

TEST_CASE("reports are identical across worker counts") {
  TannerCode code = hamming_code();
  BatchReport serial = run_batch(code, 2, 12, 0xbead, DecodeBackend::Projected, 1);
  BatchReport wide = run_batch(code, 2, 12, 0xbead, DecodeBackend::Projected, 3);
  CHECK(serial == wide);
  CHECK(report_to_json(serial).dump(2) == report_to_json(wide).dump(2));
}

TEST_CASE("golden report files stay stable") {
  BatchReport report = run_batch(hamming_code(), 2, 12, 0xbead);
  CHECK(report_to_json(report).dump(2) + "\n" == slurp(LPDEC_DATA_DIR "/golden_batch.json"));
  CHECK(report_to_csv(report) == slurp(LPDEC_DATA_DIR "/golden_batch.csv"));
}

TEST_CASE("round trip preserves every field") {
  BatchReport report = run_batch(hamming_code(), 2, 12, 0xbead);
  CHECK(report_from_json(report_to_json(report)) == report);

  BatchReport empty = run_batch(hamming_code(), 2, 0, 1);
  CHECK(empty.trials == 0);
  CHECK(empty.frequency_bars == std::vector<long long>{0});
  CHECK(empty.unique_bars == std::vector<long long>{0});
  CHECK(empty.records.empty());
  CHECK(report_from_json(report_to_json(empty)) == empty);
  CHECK(report_to_csv(empty) == "size,frequency_count,unique_count\n0,0,0\n");

  nlohmann::json stale = report_to_json(report);
  stale["schema_version"] = 0;
  CHECK_THROWS_AS(report_from_json(stale), std::runtime_error);
}

TEST_CASE("brute force finds exactly the minimal failing supports") {
  TannerCode code = hamming_code();
  std::vector<std::vector<int>> expected = {{4}, {5}, {6},      {0, 1}, {0, 2},
                                            {0, 3}, {1, 2}, {1, 3}, {2, 3}};
  std::vector<FlipSupport> oracle = brute_force_instantons(code, 7);
  REQUIRE(oracle.size() == expected.size());
  std::set<std::vector<int>> seen;
  for (const FlipSupport& inst : oracle) seen.insert(inst.support);
  for (const std::vector<int>& support : expected) CHECK(seen.count(support) == 1);

  CHECK(brute_force_instantons(code, 1).size() == 3);
  CHECK(brute_force_instantons(code, 0).empty());
  CHECK_THROWS_AS(brute_force_instantons(code, 3, DecodeBackend::Full, 5), std::runtime_error);
}

TEST_CASE("oracle instantons verify, dominate their supersets, and are reachable") {
  TannerCode code = hamming_code();
  std::vector<FlipSupport> oracle = brute_force_instantons(code, 7);
  for (const FlipSupport& inst : oracle) {
    CHECK(verify_instanton(code, inst).verified());

    std::vector<int> wider = inst.support;
    for (int v = 0; v < 7; ++v) {
      if (!inst.contains(v)) {
        wider.push_back(v);
        break;
      }
    }
    CHECK(decode(code, FlipSupport::make(7, wider)).failure());

    bool reached = false;
    for (int s = 0; s < 20 && !reached; ++s) {
      IsaResult result = isa_run(code, inst, SplitRng(0x5eed).fork(s));
      reached = result.status == IsaStatus::Halted && result.instanton == inst;
    }
    CHECK(reached);
  }
}

TEST_CASE("batch outputs live inside the oracle set") {
  TannerCode code = hamming_code();
  std::vector<FlipSupport> oracle = brute_force_instantons(code, 7);
  std::set<std::vector<int>> oracle_set;
  for (const FlipSupport& inst : oracle) oracle_set.insert(inst.support);

  BatchReport report = run_batch(code, 3, 40, 0xfeed);
  CHECK(report.tallies.halted == 40);
  CHECK(report.tallies.step_bound_ok == 40);
  CHECK(report.tallies.weight_bounds_ok == 40);
  REQUIRE(!report.records.empty());

  Rational d = fractional_distance(code);
  BigInt num = numerator(d), den = 2 * denominator(d);
  BigInt half_up = (num + den - 1) / den;
  for (const InstantonRecord& record : report.records) {
    CHECK(oracle_set.count(record.support) == 1);
    CHECK(record.size >= half_up);
    CHECK(record.pcw_weight >= 2 * half_up - 1);
  }
}
