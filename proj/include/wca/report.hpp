#pragma once

// Machine-readable run reports: best cost, witness input, time-stamped
// best-cost curve and solver statistics. JSON is the primary format; CSV
// carries the curve only.

#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "wca/expr.hpp"
#include "wca/solver.hpp"

namespace wca {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CurvePoint {
  std::int64_t elapsed_ms = 0;
  Int best_cost = 0;
  long long evals = 0;
};

struct ErrorCounters {
  long long path_too_short = 0;
  long long step_budget = 0;
  long long solver_budget = 0;
  long long exec_errors = 0;

  long long total() const { return path_too_short + step_budget + solver_budget + exec_errors; }

  void merge(const ErrorCounters& o) {
    path_too_short += o.path_too_short;
    step_budget += o.step_budget;
    solver_budget += o.solver_budget;
    exec_errors += o.exec_errors;
  }
};

struct RunReport {
  std::string method;       // pathfuzz | fuzz | symexe
  std::string program_id;   // registry id or file path
  std::string program_name;
  std::map<std::string, Int> scale;
  std::string mapping;      // default | skip-unsat | n/a
  std::map<std::string, std::string> params;
  std::uint64_t seed = 0;
  int workers = 1;
  int path_len = 0;

  Int best_cost = -1;
  std::string best_input;
  bool best_sat = false;
  int best_used_bits = 0;

  std::vector<CurvePoint> curve;
  long long evals = 0;
  double sat_rate = 0.0;
  SolverStats solver;
  double solver_time_share = 0.0;
  ErrorCounters errors;
  long long frontier_dropped = 0;
  std::int64_t wall_ms = 0;

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["method"] = method;
    j["program"] = program_id;
    j["program_name"] = program_name;
    j["scale"] = scale;
    j["mapping"] = mapping;
    j["params"] = params;
    j["seed"] = seed;
    j["workers"] = workers;
    j["path_len"] = path_len;
    j["best_cost"] = best_cost;
    j["best_input"] = best_input;
    j["best_outcome"] = {{"sat", best_sat}, {"cost", best_cost}, {"m", best_used_bits},
                         {"solver_calls", solver.sat_calls}};
    nlohmann::ordered_json curve_json = nlohmann::ordered_json::array();
    for (const auto& p : curve)
      curve_json.push_back({{"ms", p.elapsed_ms}, {"best", p.best_cost}, {"evals", p.evals}});
    j["curve"] = curve_json;
    j["evals"] = evals;
    j["sat_rate"] = sat_rate;
    j["solver"] = {{"sat_calls", solver.sat_calls},
                   {"unsat_results", solver.unsat_results},
                   {"witness_hits", solver.witness_hits},
                   {"solve_ms", solver.solve_time_ns / 1000000},
                   {"time_share", solver_time_share}};
    j["errors"] = {{"path_too_short", errors.path_too_short},
                   {"step_budget", errors.step_budget},
                   {"solver_budget", errors.solver_budget},
                   {"exec_errors", errors.exec_errors}};
    j["frontier_dropped"] = frontier_dropped;
    j["wall_ms"] = wall_ms;
    return j;
  }

  std::string curve_csv() const {
    std::ostringstream out;
    out << "elapsed_ms,best_cost,evals\n";
    for (const auto& p : curve) out << p.elapsed_ms << "," << p.best_cost << "," << p.evals << "\n";
    return out.str();
  }
};

}  // namespace wca
