#pragma once

// key = value configuration text, shared by the CLI config file and the
// campaign spec. Lines starting with # and blank lines are ignored.

#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "wca/evo.hpp"
#include "wca/report.hpp"

namespace wca {

inline std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) {
    std::string t = trim(cur);
    if (!t.empty()) out.push_back(t);
  }
  return out;
}

inline std::map<std::string, std::string> parse_kv(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    size_t eq = t.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
    kv[trim(t.substr(0, eq))] = trim(t.substr(eq + 1));
  }
  return kv;
}

inline void apply_evo_params(EvoParams& p, const std::map<std::string, std::string>& kv) {
  auto get = [&](const char* key) -> const std::string* {
    auto it = kv.find(key);
    return it == kv.end() ? nullptr : &it->second;
  };
  try {
    if (auto* v = get("psize")) p.psize = std::stoi(*v);
    if (auto* v = get("r1")) p.r1 = std::stod(*v);
    if (auto* v = get("r2")) p.r2 = std::stod(*v);
    if (auto* v = get("beta")) p.beta = std::stod(*v);
    if (auto* v = get("gamma")) p.gamma = std::stod(*v);
    if (auto* v = get("path_len")) p.path_len = std::stoi(*v);
    if (auto* v = get("estimate_samples")) p.estimate_samples = std::stoi(*v);
    if (auto* v = get("estimate_margin")) p.estimate_margin = std::stod(*v);
    if (auto* v = get("offspring")) p.offspring_count = std::stoi(*v);
    if (auto* v = get("mutation_share")) p.mutation_share = std::stod(*v);
    if (auto* v = get("max_iters")) p.max_iters = std::stoll(*v);
    if (auto* v = get("budget_seconds")) p.budget_seconds = std::stod(*v);
    if (auto* v = get("seed")) p.seed = std::stoull(*v);
    if (auto* v = get("workers")) p.workers = std::stoi(*v);
    if (auto* v = get("target_cost")) p.target_cost = std::stoll(*v);
    if (auto* v = get("step_budget")) p.step_budget = std::stoll(*v);
    if (auto* v = get("solver_budget")) p.solver_budget = std::stoll(*v);
  } catch (const std::invalid_argument&) {
    throw ConfigError("malformed numeric value in config");
  } catch (const std::out_of_range&) {
    throw ConfigError("numeric value out of range in config");
  }
}

}  // namespace wca
