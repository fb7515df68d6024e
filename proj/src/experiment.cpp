#include "lpdec/experiment.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "lpdec/isa.hpp"
#include "lpdec/lp.hpp"
#include "lpdec/pcw.hpp"
#include "lpdec/rng.hpp"

namespace lpdec {

namespace {

constexpr int kSchemaVersion = 1;

enum class TrialKind { Halted, Insufficient, SolverFailure };

struct TrialOutcome {
  TrialKind kind = TrialKind::Insufficient;
  FlipSupport instanton;
  int pcw_weight = 0;
  Rational frac_weight_value;
  bool bounds_ok = false;
  bool steps_ok = false;
};

}  // namespace

std::vector<InstantonRecord> dedup(const std::vector<InstantonHit>& hits) {
  std::map<std::vector<int>, InstantonRecord> grouped;
  for (const InstantonHit& hit : hits) {
    auto [it, fresh] = grouped.try_emplace(hit.support.support);
    InstantonRecord& record = it->second;
    if (fresh || hit.trial < record.first_seen_trial) {
      record.support = hit.support.support;
      record.size = hit.support.size();
      record.pcw_weight = hit.pcw_weight;
      record.frac_weight = hit.frac_weight;
      record.first_seen_trial = hit.trial;
    }
    ++record.hit_count;
  }
  std::vector<InstantonRecord> records;
  records.reserve(grouped.size());
  for (auto& [support, record] : grouped) records.push_back(std::move(record));
  std::sort(records.begin(), records.end(), [](const InstantonRecord& a, const InstantonRecord& b) {
    if (a.size != b.size) return a.size < b.size;
    return a.support < b.support;
  });
  return records;
}

BatchReport run_batch(const TannerCode& code, int k0, int trials, std::uint64_t master_seed,
                      DecodeBackend backend, int workers) {
  if (k0 < 1 || k0 > code.num_vars())
    throw std::invalid_argument("initiation flip count out of range");
  if (trials < 0) throw std::invalid_argument("negative trial count");

  const int n = code.num_vars();
  SplitRng master(master_seed);
  std::vector<TrialOutcome> slots(trials);
  parallel_for(static_cast<std::size_t>(trials), workers, [&](std::size_t t) {
    SplitRng trial_rng = master.fork(t);
    SplitRng draw = trial_rng.fork(0);
    FlipSupport initial = FlipSupport::make(n, draw.subset(n, k0));
    TrialOutcome& slot = slots[t];
    try {
      IsaResult result = isa_run(code, initial, trial_rng.fork(1), backend);
      if (result.status == IsaStatus::Halted) {
        slot.kind = TrialKind::Halted;
        slot.instanton = result.instanton;
        slot.pcw_weight = bsc_weight(result.final_pcw).w_bsc;
        slot.frac_weight_value = frac_weight(result.final_pcw);
        slot.bounds_ok = check_weight_bounds(result.final_pcw).pass();
        slot.steps_ok = result.steps_used <= 2 * result.k0;
      } else {
        slot.kind = TrialKind::Insufficient;
      }
    } catch (const SolverError&) {
      slot.kind = TrialKind::SolverFailure;
    }
  });

  BatchReport report;
  report.code_fingerprint = code_fingerprint(code);
  report.k0 = k0;
  report.trials = trials;
  report.master_seed = master_seed;
  report.frequency_bars.assign(1, 0);
  std::vector<InstantonHit> hits;
  for (int t = 0; t < trials; ++t) {
    const TrialOutcome& slot = slots[t];
    switch (slot.kind) {
      case TrialKind::Insufficient:
        ++report.tallies.insufficient_noise;
        ++report.frequency_bars[0];
        break;
      case TrialKind::SolverFailure:
        ++report.tallies.solver_failures;
        ++report.frequency_bars[0];
        report.failed_trials.push_back(t);
        break;
      case TrialKind::Halted: {
        ++report.tallies.halted;
        if (slot.steps_ok) ++report.tallies.step_bound_ok;
        if (slot.bounds_ok) ++report.tallies.weight_bounds_ok;
        int size = slot.instanton.size();
        if (static_cast<int>(report.frequency_bars.size()) <= size)
          report.frequency_bars.resize(size + 1, 0);
        ++report.frequency_bars[size];
        hits.push_back({slot.instanton, slot.pcw_weight, slot.frac_weight_value, t});
        break;
      }
    }
  }
  report.records = dedup(hits);
  report.unique_bars.assign(report.frequency_bars.size(), 0);
  for (const InstantonRecord& record : report.records) ++report.unique_bars[record.size];
  return report;
}

std::vector<FlipSupport> brute_force_instantons(const TannerCode& code, int max_size,
                                                DecodeBackend backend, long long decode_cap) {
  const int n = code.num_vars();
  if (max_size < 0 || max_size > n) throw std::invalid_argument("support size out of range");
  std::vector<FlipSupport> found;
  long long decodes = 0;
  std::vector<int> comb;
  for (int size = 1; size <= max_size; ++size) {
    comb.resize(size);
    for (int i = 0; i < size; ++i) comb[i] = i;
    while (true) {
      bool dominated = false;
      for (const FlipSupport& instanton : found) {
        if (std::includes(comb.begin(), comb.end(), instanton.support.begin(),
                          instanton.support.end())) {
          dominated = true;
          break;
        }
      }
      if (!dominated) {
        if (++decodes > decode_cap) throw std::runtime_error("brute-force decode budget exceeded");
        // every proper subset was already cleared at a smaller size, so a
        // failure here is a minimal failing support
        if (decode(code, FlipSupport::make(n, comb), backend).failure())
          found.push_back(FlipSupport::make(n, comb));
      }
      int pos = size - 1;
      while (pos >= 0 && comb[pos] == n - size + pos) --pos;
      if (pos < 0) break;
      ++comb[pos];
      for (int i = pos + 1; i < size; ++i) comb[i] = comb[i - 1] + 1;
    }
  }
  return found;
}

nlohmann::json report_to_json(const BatchReport& report) {
  nlohmann::json j;
  j["schema_version"] = kSchemaVersion;
  j["code_fingerprint"] = report.code_fingerprint;
  j["k0"] = report.k0;
  j["trials"] = report.trials;
  j["master_seed"] = report.master_seed;
  j["frequency_bars"] = report.frequency_bars;
  j["unique_bars"] = report.unique_bars;
  j["tallies"] = {{"halted", report.tallies.halted},
                  {"insufficient_noise", report.tallies.insufficient_noise},
                  {"solver_failures", report.tallies.solver_failures},
                  {"step_bound_ok", report.tallies.step_bound_ok},
                  {"weight_bounds_ok", report.tallies.weight_bounds_ok}};
  j["failed_trials"] = report.failed_trials;
  nlohmann::json records = nlohmann::json::array();
  for (const InstantonRecord& record : report.records) {
    std::vector<int> support = record.support;
    for (int& v : support) ++v;
    records.push_back({{"support", support},
                       {"size", record.size},
                       {"pcw_weight", record.pcw_weight},
                       {"frac_weight", to_fraction_string(record.frac_weight)},
                       {"first_seen_trial", record.first_seen_trial},
                       {"hit_count", record.hit_count}});
  }
  j["records"] = std::move(records);
  return j;
}

BatchReport report_from_json(const nlohmann::json& j) {
  if (j.value("schema_version", 0) != kSchemaVersion)
    throw std::runtime_error("unsupported report schema version");
  BatchReport report;
  report.code_fingerprint = j.at("code_fingerprint").get<std::string>();
  report.k0 = j.at("k0").get<int>();
  report.trials = j.at("trials").get<int>();
  report.master_seed = j.at("master_seed").get<std::uint64_t>();
  report.frequency_bars = j.at("frequency_bars").get<std::vector<long long>>();
  report.unique_bars = j.at("unique_bars").get<std::vector<long long>>();
  const nlohmann::json& tallies = j.at("tallies");
  report.tallies.halted = tallies.at("halted").get<long long>();
  report.tallies.insufficient_noise = tallies.at("insufficient_noise").get<long long>();
  report.tallies.solver_failures = tallies.at("solver_failures").get<long long>();
  report.tallies.step_bound_ok = tallies.at("step_bound_ok").get<long long>();
  report.tallies.weight_bounds_ok = tallies.at("weight_bounds_ok").get<long long>();
  report.failed_trials = j.at("failed_trials").get<std::vector<int>>();
  for (const nlohmann::json& entry : j.at("records")) {
    InstantonRecord record;
    record.support = entry.at("support").get<std::vector<int>>();
    for (int& v : record.support) --v;
    record.size = entry.at("size").get<int>();
    record.pcw_weight = entry.at("pcw_weight").get<int>();
    record.frac_weight = rational_from_string(entry.at("frac_weight").get<std::string>());
    record.first_seen_trial = entry.at("first_seen_trial").get<int>();
    record.hit_count = entry.at("hit_count").get<int>();
    report.records.push_back(std::move(record));
  }
  return report;
}

std::string report_to_csv(const BatchReport& report) {
  std::ostringstream out;
  out << "size,frequency_count,unique_count\n";
  for (std::size_t size = 0; size < report.frequency_bars.size(); ++size) {
    long long unique = size < report.unique_bars.size() ? report.unique_bars[size] : 0;
    out << size << ',' << report.frequency_bars[size] << ',' << unique << '\n';
  }
  return out.str();
}

namespace {

bool ends_with(const std::string& text, const std::string& suffix) {
  return text.size() >= suffix.size() &&
         text.compare(text.size() - suffix.size(), suffix.size(), suffix) == 0;
}

}  // namespace

void export_report(const BatchReport& report, const std::string& path) {
  std::string body;
  if (ends_with(path, ".json"))
    body = report_to_json(report).dump(2) + "\n";
  else if (ends_with(path, ".csv"))
    body = report_to_csv(report);
  else
    throw std::runtime_error("report path must end in .json or .csv: " + path);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path);
  out << body;
  if (!out.flush()) throw std::runtime_error("write failed: " + path);
}

BatchReport import_report(const std::string& path) {
  if (!ends_with(path, ".json"))
    throw std::runtime_error("only JSON reports can be re-imported: " + path);
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  nlohmann::json j = nlohmann::json::parse(in);
  return report_from_json(j);
}

}  // namespace lpdec
