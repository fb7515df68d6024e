#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lpdec/alist.hpp"
#include "lpdec/experiment.hpp"
#include "lpdec/isa.hpp"
#include "lpdec/lclp.hpp"
#include "lpdec/lp.hpp"
#include "lpdec/parallel.hpp"
#include "lpdec/pcw.hpp"
#include "lpdec/rng.hpp"
#include "lpdec/tanner_code.hpp"

using namespace lpdec;

namespace {

constexpr int kUsageExit = 1;
constexpr int kFailureExit = 2;
constexpr int kInsufficientExit = 3;
constexpr int kSolverExit = 4;

TannerCode load_code(const std::string& source) {
  if (source == "tanner155") return tanner_155();
  return parse_alist_file(source);
}

// comma-separated 1-based positions, blanks ignored
std::vector<int> parse_flips(const std::string& text, int n) {
  std::vector<int> flips;
  std::stringstream stream(text);
  std::string token;
  while (std::getline(stream, token, ',')) {
    std::size_t begin = token.find_first_not_of(" \t");
    if (begin == std::string::npos) continue;
    std::size_t end = token.find_last_not_of(" \t");
    int position = 0;
    try {
      position = std::stoi(token.substr(begin, end - begin + 1));
    } catch (const std::exception&) {
      throw std::invalid_argument("flip position is not a number: '" + token + "'");
    }
    if (position < 1 || position > n)
      throw std::invalid_argument("flip position out of range: " + std::to_string(position));
    flips.push_back(position - 1);
  }
  return flips;
}

std::string joined_1based(const std::vector<int>& positions) {
  std::string out;
  for (std::size_t i = 0; i < positions.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(positions[i] + 1);
  }
  return out;
}

std::vector<int> shifted_1based(const std::vector<int>& positions) {
  std::vector<int> shifted = positions;
  for (int& v : shifted) ++v;
  return shifted;
}

const char* kind_name(DecodeKind kind) {
  switch (kind) {
    case DecodeKind::AllZero: return "all_zero";
    case DecodeKind::NonzeroCodeword: return "nonzero_codeword";
    case DecodeKind::FractionalPcw: return "fractional_pcw";
    case DecodeKind::ZeroCostTie: return "zero_cost_tie";
  }
  return "unknown";
}

DecodeBackend backend_from(const std::string& name) {
  return name == "full" ? DecodeBackend::Full : DecodeBackend::Projected;
}

int cmd_decode(const std::string& source, const std::string& flips_text,
               const std::string& backend, bool json) {
  TannerCode code = load_code(source);
  FlipSupport flips = FlipSupport::make(code.num_vars(), parse_flips(flips_text, code.num_vars()));
  DecodeOutcome outcome = decode(code, flips, backend_from(backend));
  if (json) {
    nlohmann::json j;
    j["kind"] = kind_name(outcome.kind);
    j["cost"] = to_fraction_string(outcome.cost);
    if (outcome.pcw) {
      j["w_bsc"] = bsc_weight(*outcome.pcw).w_bsc;
      j["frac_weight"] = to_fraction_string(frac_weight(*outcome.pcw));
      nlohmann::json nonzero = nlohmann::json::object();
      for (int i : outcome.pcw->support())
        nonzero[std::to_string(i + 1)] = to_fraction_string(outcome.pcw->f[i]);
      j["nonzero"] = std::move(nonzero);
    }
    std::cout << j.dump() << "\n";
  } else {
    std::cout << "kind: " << kind_name(outcome.kind) << "\n"
              << "cost: " << to_fraction_string(outcome.cost) << "\n";
    if (outcome.pcw) {
      std::cout << "w_bsc: " << bsc_weight(*outcome.pcw).w_bsc << "\n"
                << "frac_weight: " << to_fraction_string(frac_weight(*outcome.pcw)) << "\n"
                << "nonzero:";
      for (int i : outcome.pcw->support())
        std::cout << ' ' << i + 1 << '=' << to_fraction_string(outcome.pcw->f[i]);
      std::cout << "\n";
    }
  }
  return outcome.failure() ? kFailureExit : 0;
}

nlohmann::json trace_json(const IsaResult& result) {
  nlohmann::json steps = nlohmann::json::array();
  for (const IsaStep& step : result.trace) {
    nlohmann::json s;
    s["index"] = step.step_index;
    s["input_w_bsc"] = step.input_weight.w_bsc;
    s["input_e"] = step.input_weight.e;
    s["input_frac_weight"] = to_fraction_string(frac_weight(step.input_pcw));
    s["median"] = shifted_1based(step.median.support);
    s["median_kind"] = kind_name(step.median_outcome.kind);
    s["branch"] = step.branch == IsaBranch::WeightDropped ? "weight_dropped" : "subset_search";
    s["halted"] = step.halted;
    if (step.branch == IsaBranch::SubsetSearch) {
      nlohmann::json kinds = nlohmann::json::array();
      for (const DecodeOutcome& outcome : step.subset_outcomes)
        kinds.push_back(kind_name(outcome.kind));
      s["subset_kinds"] = std::move(kinds);
      if (step.chosen_subset)
        s["chosen_removed"] = step.median.support[*step.chosen_subset] + 1;
    }
    steps.push_back(std::move(s));
  }
  nlohmann::json j;
  j["status"] = result.status == IsaStatus::Halted ? "halted" : "insufficient_noise";
  j["k0"] = result.k0;
  j["steps_used"] = result.steps_used;
  j["steps"] = std::move(steps);
  if (result.status == IsaStatus::Halted) {
    j["instanton"] = shifted_1based(result.instanton.support);
    j["final_w_bsc"] = bsc_weight(result.final_pcw).w_bsc;
    j["final_frac_weight"] = to_fraction_string(frac_weight(result.final_pcw));
  }
  return j;
}

int cmd_isa(const std::string& source, std::optional<int> k0,
            std::optional<std::string> flips_text, std::uint64_t seed, const std::string& backend,
            const std::string& trace_out, bool json) {
  TannerCode code = load_code(source);
  const int n = code.num_vars();
  SplitRng master(seed);
  FlipSupport initial;
  if (k0) {
    SplitRng draw = master.fork(0);
    initial = FlipSupport::make(n, draw.subset(n, *k0));
  } else {
    initial = FlipSupport::make(n, parse_flips(*flips_text, n));
  }
  if (!json)
    std::cout << "seed=" << seed << " code=" << code_fingerprint(code) << " n=" << n
              << " k0=" << initial.size() << " backend=" << backend << "\n"
              << "initial: " << joined_1based(initial.support) << "\n";

  IsaResult result = isa_run(code, initial, master.fork(1), backend_from(backend));

  if (!trace_out.empty()) {
    nlohmann::json full = trace_json(result);
    full["seed"] = seed;
    full["code_fingerprint"] = code_fingerprint(code);
    full["initial"] = shifted_1based(initial.support);
    std::ofstream out(trace_out, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + trace_out);
    out << full.dump(2) << "\n";
  }

  if (json) {
    nlohmann::json j = trace_json(result);
    j.erase("steps");
    j["seed"] = seed;
    j["code_fingerprint"] = code_fingerprint(code);
    j["initial"] = shifted_1based(initial.support);
    std::vector<int> weights;
    for (const IsaStep& step : result.trace) weights.push_back(step.input_weight.w_bsc);
    j["step_weights"] = std::move(weights);
    std::cout << j.dump() << "\n";
    return result.status == IsaStatus::Halted ? 0 : kInsufficientExit;
  }

  if (result.status == IsaStatus::InsufficientNoise) {
    std::cout << "insufficient noise: the initiation decodes to the all-zero codeword\n";
    return kInsufficientExit;
  }
  for (const IsaStep& step : result.trace) {
    std::cout << "step " << step.step_index << ": w_bsc=" << step.input_weight.w_bsc
              << " e=" << step.input_weight.e << " median: " << joined_1based(step.median.support);
    if (step.branch == IsaBranch::WeightDropped) {
      std::cout << " (weight dropped)";
    } else {
      int failing = 0;
      for (const DecodeOutcome& outcome : step.subset_outcomes) failing += outcome.failure();
      std::cout << " (subset search: " << failing << "/" << step.subset_outcomes.size()
                << " failing)";
    }
    if (step.halted) std::cout << " halted";
    std::cout << "\n";
  }
  std::cout << "instanton (size " << result.instanton.size()
            << "): " << joined_1based(result.instanton.support) << "\n"
            << "final pcw: w_bsc=" << bsc_weight(result.final_pcw).w_bsc
            << " frac_weight=" << to_fraction_string(frac_weight(result.final_pcw)) << "\n"
            << "steps_used=" << result.steps_used << "\n";
  return 0;
}

int cmd_batch(const std::string& source, int k0, int trials, std::uint64_t seed, int workers,
              const std::string& json_out, const std::string& csv_out, bool json) {
  TannerCode code = load_code(source);
  if (!json)
    std::cout << "seed=" << seed << " code=" << code_fingerprint(code) << " k0=" << k0
              << " trials=" << trials << " workers=" << workers << "\n";
  BatchReport report = run_batch(code, k0, trials, seed, DecodeBackend::Projected, workers);
  if (!json_out.empty()) export_report(report, json_out);
  if (!csv_out.empty()) export_report(report, csv_out);
  if (json) {
    std::cout << report_to_json(report).dump() << "\n";
    return 0;
  }
  std::cout << "halted=" << report.tallies.halted
            << " insufficient_noise=" << report.tallies.insufficient_noise
            << " solver_failures=" << report.tallies.solver_failures
            << " unique_instantons=" << report.records.size() << "\n"
            << report_to_csv(report);
  return 0;
}

int cmd_dfrac(const std::string& source, int workers, bool json) {
  TannerCode code = load_code(source);
  FractionalDistanceReport report = fractional_distance_report(code, workers);
  PseudoCodeword minimizer{report.minimizer};
  WeightReport weight = bsc_weight(minimizer);
  if (json) {
    nlohmann::json j;
    j["code_fingerprint"] = code_fingerprint(code);
    j["d_frac"] = to_fraction_string(report.distance);
    j["d_frac_decimal"] = to_decimal_string(report.distance, 6);
    j["minimizer_w_bsc"] = weight.w_bsc;
    j["minimizer_support"] = shifted_1based(minimizer.support());
    if (report.parity_distance) {
      PseudoCodeword parity{report.parity_minimizer};
      j["parity_d_frac"] = to_fraction_string(*report.parity_distance);
      j["parity_d_frac_decimal"] = to_decimal_string(*report.parity_distance, 6);
      j["parity_minimizer_w_bsc"] = bsc_weight(parity).w_bsc;
      j["parity_minimizer_support"] = shifted_1based(parity.support());
    }
    std::cout << j.dump() << "\n";
    return 0;
  }
  std::cout << "code=" << code_fingerprint(code) << " n=" << code.num_vars()
            << " checks=" << code.num_checks() << "\n"
            << "d_frac = " << to_fraction_string(report.distance) << " ("
            << to_decimal_string(report.distance, 6) << ")\n"
            << "minimizer: w_bsc=" << weight.w_bsc << " |support|=" << minimizer.support().size()
            << "\n";
  if (report.parity_distance) {
    PseudoCodeword parity{report.parity_minimizer};
    std::cout << "parity-facet minimum = " << to_fraction_string(*report.parity_distance) << " ("
              << to_decimal_string(*report.parity_distance, 6) << ")\n"
              << "parity minimizer: w_bsc=" << bsc_weight(parity).w_bsc
              << " |support|=" << parity.support().size() << "\n";
  } else {
    std::cout << "parity-facet minimum: none (no odd-set face)\n";
  }
  return 0;
}

int cmd_oracle(const std::string& source, int max_size, long long cap,
               const std::string& backend, bool json) {
  TannerCode code = load_code(source);
  std::vector<FlipSupport> instantons =
      brute_force_instantons(code, max_size, backend_from(backend), cap);
  if (json) {
    nlohmann::json list = nlohmann::json::array();
    for (const FlipSupport& inst : instantons) list.push_back(shifted_1based(inst.support));
    nlohmann::json j;
    j["max_size"] = max_size;
    j["count"] = instantons.size();
    j["instantons"] = std::move(list);
    std::cout << j.dump() << "\n";
  } else {
    std::cout << instantons.size() << " instantons up to size " << max_size << "\n";
    for (const FlipSupport& inst : instantons)
      std::cout << "size " << inst.size() << ": " << joined_1based(inst.support) << "\n";
  }
  return 0;
}

int cmd_validate(const std::string& source, bool json) {
  TannerCode code = load_code(source);
  int var_lo = code.num_vars() ? static_cast<int>(code.var_neighbors(0).size()) : 0;
  int var_hi = var_lo;
  for (int i = 0; i < code.num_vars(); ++i) {
    int d = static_cast<int>(code.var_neighbors(i).size());
    var_lo = std::min(var_lo, d);
    var_hi = std::max(var_hi, d);
  }
  int chk_lo = code.num_checks() ? static_cast<int>(code.check_neighbors(0).size()) : 0;
  int chk_hi = chk_lo;
  for (int j = 0; j < code.num_checks(); ++j) {
    int d = static_cast<int>(code.check_neighbors(j).size());
    chk_lo = std::min(chk_lo, d);
    chk_hi = std::max(chk_hi, d);
  }
  int rank = gf2_rank(code);
  if (json) {
    nlohmann::json j;
    j["n"] = code.num_vars();
    j["checks"] = code.num_checks();
    j["var_degree"] = {var_lo, var_hi};
    j["check_degree"] = {chk_lo, chk_hi};
    j["rank"] = rank;
    j["dimension"] = code.num_vars() - rank;
    j["fingerprint"] = code_fingerprint(code);
    std::cout << j.dump() << "\n";
  } else {
    std::cout << "ok: n=" << code.num_vars() << " checks=" << code.num_checks()
              << " var_degree=" << var_lo << ".." << var_hi << " check_degree=" << chk_lo << ".."
              << chk_hi << " rank=" << rank << " dimension=" << code.num_vars() - rank
              << " fingerprint=" << code_fingerprint(code) << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"LP decoding, instanton search, and pseudo-codeword analysis for LDPC codes"};
  app.require_subcommand(1);
  app.fallthrough();
  bool json = false;
  app.add_flag("--json", json, "machine-readable JSON output");

  std::string source;
  std::string flips_text;
  std::string backend = "projected";
  std::string oracle_backend = "full";
  std::uint64_t seed = 0;
  std::optional<int> k0;
  std::optional<std::string> isa_flips;
  int batch_k0 = 0;
  int trials = 2000;
  int workers = default_workers();
  long long cap = 2000000;
  int max_size = 0;
  std::string json_out, csv_out, trace_out;

  auto add_code = [&source](CLI::App* cmd) {
    cmd->add_option("--code", source, "alist path or 'tanner155'")->required();
  };
  auto add_backend = [](CLI::App* cmd, std::string& target) {
    cmd->add_option("--backend", target, "LP formulation")
        ->check(CLI::IsMember({"projected", "full"}))
        ->capture_default_str();
  };

  CLI::App* decode_cmd = app.add_subcommand("decode", "decode one flip pattern");
  add_code(decode_cmd);
  decode_cmd->add_option("--flips", flips_text, "comma-separated 1-based flip positions");
  add_backend(decode_cmd, backend);

  CLI::App* isa_cmd = app.add_subcommand("isa", "run one instanton search");
  add_code(isa_cmd);
  isa_cmd->add_option("--seed", seed, "rng seed")->required();
  CLI::Option* k0_opt = isa_cmd->add_option("--k0", k0, "random initiation flip count");
  CLI::Option* flips_opt =
      isa_cmd->add_option("--flips", isa_flips, "explicit initiation flip positions");
  k0_opt->excludes(flips_opt);
  add_backend(isa_cmd, backend);
  isa_cmd->add_option("--trace-out", trace_out, "write the full step trace to this JSON file");

  CLI::App* batch_cmd = app.add_subcommand("batch", "run many searches and aggregate instantons");
  add_code(batch_cmd);
  batch_cmd->add_option("--seed", seed, "rng seed")->required();
  batch_cmd->add_option("--k0", batch_k0, "initiation flip count")->required();
  batch_cmd->add_option("--trials", trials, "trial count")->capture_default_str();
  batch_cmd->add_option("--workers", workers, "parallel workers")->capture_default_str();
  batch_cmd->add_option("--json-out", json_out, "write the JSON report here");
  batch_cmd->add_option("--csv-out", csv_out, "write the CSV bar table here");

  CLI::App* dfrac_cmd = app.add_subcommand("dfrac", "fractional distance of the code");
  add_code(dfrac_cmd);
  dfrac_cmd->add_option("--workers", workers, "parallel workers")->capture_default_str();

  CLI::App* oracle_cmd = app.add_subcommand("oracle", "brute-force instantons of a small code");
  add_code(oracle_cmd);
  oracle_cmd->add_option("--max-size", max_size, "largest support size to enumerate")->required();
  oracle_cmd->add_option("--cap", cap, "decode budget")->capture_default_str();
  add_backend(oracle_cmd, oracle_backend);

  CLI::App* validate_cmd = app.add_subcommand("validate", "lint an alist file");
  add_code(validate_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kUsageExit;
  }

  try {
    if (decode_cmd->parsed()) return cmd_decode(source, flips_text, backend, json);
    if (isa_cmd->parsed()) {
      if (!k0 && !isa_flips)
        throw std::invalid_argument("isa needs either --k0 or --flips");
      return cmd_isa(source, k0, isa_flips, seed, backend, trace_out, json);
    }
    if (batch_cmd->parsed())
      return cmd_batch(source, batch_k0, trials, seed, workers, json_out, csv_out, json);
    if (dfrac_cmd->parsed()) return cmd_dfrac(source, workers, json);
    if (oracle_cmd->parsed()) return cmd_oracle(source, max_size, cap, oracle_backend, json);
    if (validate_cmd->parsed()) return cmd_validate(source, json);
  } catch (const SolverError& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return kSolverExit;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageExit;
  }
  return kUsageExit;
}
