#pragma once

// Multi-run campaigns: (method x program x seed) cells with repetitions,
// per-run reports plus an aggregate table (mean/max best cost, minimum
// time-to-best) for averaging across seeds.

#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "wca/baselines.hpp"
#include "wca/bench.hpp"
#include "wca/config.hpp"
#include "wca/evo.hpp"

namespace wca {

inline std::int64_t time_to_best_ms(const RunReport& r) {
  for (const auto& p : r.curve)
    if (p.best_cost >= r.best_cost) return p.elapsed_ms;
  return r.wall_ms;
}

struct CampaignSpec {
  std::vector<std::string> methods;
  std::vector<std::pair<std::string, ScaleMap>> programs;  // id + scale overrides
  std::vector<std::uint64_t> seeds;
  int repetitions = 1;
  MappingMode mapping = MappingMode::kSkipUnsat;
  EvoParams evo;
  SymexeParams symexe;

  // methods = pathfuzz, symexe
  // programs = 1-2:N=16; 3-3:N=20
  // seeds = 1, 2, 3, 4
  // repetitions = 1
  // mapping = skip-unsat
  // ...plus any EvoParams key
  static CampaignSpec parse(const std::string& text) {
    CampaignSpec spec;
    auto kv = parse_kv(text);
    auto get = [&](const char* key) -> const std::string* {
      auto it = kv.find(key);
      return it == kv.end() ? nullptr : &it->second;
    };
    if (auto* v = get("methods"))
      spec.methods = split(*v, ',');
    else
      throw ConfigError("campaign: missing 'methods'");
    if (auto* v = get("programs")) {
      for (const std::string& cell : split(*v, ';')) {
        size_t colon = cell.find(':');
        std::string id = trim(colon == std::string::npos ? cell : cell.substr(0, colon));
        ScaleMap scale;
        if (colon != std::string::npos) {
          for (const std::string& pair : split(cell.substr(colon + 1), ',')) {
            size_t eq = pair.find('=');
            if (eq == std::string::npos) throw ConfigError("campaign: bad scale '" + pair + "'");
            scale[trim(pair.substr(0, eq))] = std::stoll(trim(pair.substr(eq + 1)));
          }
        }
        spec.programs.push_back({id, scale});
      }
    } else {
      throw ConfigError("campaign: missing 'programs'");
    }
    if (auto* v = get("seeds"))
      for (const std::string& s : split(*v, ',')) spec.seeds.push_back(std::stoull(s));
    else
      spec.seeds = {1};
    if (auto* v = get("repetitions")) spec.repetitions = std::stoi(*v);
    if (spec.repetitions < 1) throw ConfigError("campaign: repetitions must be >= 1");
    if (auto* v = get("mapping")) {
      if (*v == "default")
        spec.mapping = MappingMode::kDefault;
      else if (*v == "skip-unsat")
        spec.mapping = MappingMode::kSkipUnsat;
      else
        throw ConfigError("campaign: unknown mapping '" + *v + "'");
    }
    apply_evo_params(spec.evo, kv);
    if (auto* v = get("frontier_cap")) spec.symexe.frontier_cap = std::stoll(*v);
    spec.symexe.budget_seconds = spec.evo.budget_seconds;
    spec.symexe.step_budget = spec.evo.step_budget;
    spec.symexe.solver_budget = spec.evo.solver_budget;
    spec.symexe.target_cost = spec.evo.target_cost;
    return spec;
  }
};

struct CampaignRunError {
  std::string method, program;
  std::uint64_t seed = 0;
  std::string what;
};

struct CampaignResult {
  std::vector<RunReport> runs;
  std::vector<CampaignRunError> failures;
  nlohmann::ordered_json aggregate;
};

inline RunReport run_method(const std::string& method, const CompiledProgram& cp,
                            const EvoParams& evo, const SymexeParams& sx, MappingMode mapping,
                            const RunMeta& meta) {
  if (method == "pathfuzz") return run_pathfuzz(cp, evo, mapping, meta);
  if (method == "fuzz") return run_fuzz(cp, evo, meta);
  if (method == "symexe") return run_symexe(cp, sx, meta);
  throw ConfigError("unknown method '" + method + "'");
}

inline CampaignResult run_campaign(const CampaignSpec& spec,
                                   const std::function<void(const RunReport&)>& on_run = {}) {
  CampaignResult result;
  nlohmann::ordered_json cells = nlohmann::ordered_json::array();
  for (const auto& [prog_id, overrides] : spec.programs) {
    const BenchmarkEntry& entry = find_benchmark(prog_id);
    ScaleMap scale = merged_scale(entry, overrides);
    Program program = entry.build(scale);
    CompiledProgram cp(program);
    RunMeta meta{entry.id, entry.name, scale};
    for (const std::string& method : spec.methods) {
      std::vector<std::pair<Int, std::int64_t>> cell_runs;  // (best_cost, time_to_best)
      nlohmann::ordered_json runs_json = nlohmann::ordered_json::array();
      for (int rep = 0; rep < spec.repetitions; ++rep) {
        for (std::uint64_t seed : spec.seeds) {
          EvoParams evo = spec.evo;
          evo.seed = seed + static_cast<std::uint64_t>(rep) * 1000003u;
          try {
            RunReport r = run_method(method, cp, evo, spec.symexe, spec.mapping, meta);
            if (on_run) on_run(r);
            runs_json.push_back({{"seed", evo.seed},
                                 {"best_cost", r.best_cost},
                                 {"time_to_best_ms", time_to_best_ms(r)},
                                 {"wall_ms", r.wall_ms}});
            cell_runs.push_back({r.best_cost, time_to_best_ms(r)});
            result.runs.push_back(std::move(r));
          } catch (const std::exception& e) {
            result.failures.push_back({method, entry.id, evo.seed, e.what()});
          }
        }
      }
      double mean = 0.0;
      Int max_best = std::numeric_limits<Int>::min();
      std::int64_t min_ttb = std::numeric_limits<std::int64_t>::max();
      for (const auto& [best, ttb] : cell_runs) {
        mean += static_cast<double>(best);
        max_best = std::max(max_best, best);
        min_ttb = std::min(min_ttb, ttb);
      }
      if (!cell_runs.empty()) mean /= static_cast<double>(cell_runs.size());
      nlohmann::ordered_json cell;
      cell["method"] = method;
      cell["program"] = entry.id;
      cell["program_name"] = entry.name;
      cell["scale"] = scale;
      cell["runs"] = runs_json;
      cell["mean_best"] = cell_runs.empty() ? 0.0 : mean;
      cell["max_best"] = cell_runs.empty() ? 0 : max_best;
      cell["min_time_to_best_ms"] = cell_runs.empty() ? 0 : min_ttb;
      cells.push_back(cell);
    }
  }
  result.aggregate["repetitions"] = spec.repetitions;
  result.aggregate["cells"] = cells;
  nlohmann::ordered_json fails = nlohmann::ordered_json::array();
  for (const auto& f : result.failures)
    fails.push_back({{"method", f.method}, {"program", f.program}, {"seed", f.seed}, {"error", f.what}});
  result.aggregate["failures"] = fails;
  return result;
}

}  // namespace wca
