// Experiment driver: selects a benchmark (or a program text file), a method
// and a mapping mode, runs within the given budgets and writes a report.
//
// Exit codes: 0 success, 2 configuration error, 3 runtime error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "wca/baselines.hpp"
#include "wca/bench.hpp"
#include "wca/campaign.hpp"
#include "wca/config.hpp"
#include "wca/evo.hpp"
#include "wca/text_format.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw wca::ConfigError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& data) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << data;
}

wca::ScaleMap parse_scales(const std::vector<std::string>& kvs) {
  wca::ScaleMap scale;
  for (const auto& kv : kvs) {
    size_t eq = kv.find('=');
    if (eq == std::string::npos) throw wca::ConfigError("--scale expects key=value, got " + kv);
    try {
      scale[wca::trim(kv.substr(0, eq))] = std::stoll(wca::trim(kv.substr(eq + 1)));
    } catch (const std::exception&) {
      throw wca::ConfigError("--scale value is not an integer: " + kv);
    }
  }
  return scale;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"wca: worst-case cost search over path strings, with input-space "
               "fuzzing and best-first symbolic execution baselines"};
  app.set_config("--config", "", "key = value parameter file");

  std::string program_id, program_file, method = "pathfuzz", mapping = "skip-unsat";
  std::vector<std::string> scale_args;
  std::string out_path, format = "json", export_path, campaign_file;
  bool list_programs = false;
  wca::EvoParams evo;
  wca::SymexeParams sx;
  long long target_cost = -1;
  int estimate_m = 0;

  app.add_option("--program", program_id, "benchmark id or name (see --list)");
  app.add_option("--program-file", program_file, "program text file to analyze instead");
  app.add_option("--scale", scale_args, "scale override, e.g. --scale N=16")->expected(-1);
  app.add_option("--method", method, "pathfuzz | fuzz | symexe")
      ->check(CLI::IsMember({"pathfuzz", "fuzz", "symexe"}));
  app.add_option("--mapping", mapping, "default | skip-unsat")
      ->check(CLI::IsMember({"default", "skip-unsat"}));
  app.add_option("--budget-seconds", evo.budget_seconds, "wall-clock budget per run");
  app.add_option("--max-iters", evo.max_iters, "generation cap (-1 unbounded)");
  app.add_option("--psize", evo.psize, "population size");
  app.add_option("--r1", evo.r1, "survivor share from previous generation");
  app.add_option("--r2", evo.r2, "top-offspring share");
  app.add_option("--beta", evo.beta, "performance-rank weight exponent");
  app.add_option("--gamma", evo.gamma, "crowdedness-rank weight exponent");
  app.add_option("--offspring", evo.offspring_count, "offspring per generation (0: psize)");
  app.add_option("--mutation-share", evo.mutation_share, "mutation fraction of offspring");
  app.add_option("--path-len", evo.path_len, "path string length M (0: estimate)");
  app.add_option("--estimate-m", estimate_m, "sample count for estimating M");
  app.add_option("--seed", evo.seed, "random seed");
  app.add_option("--workers", evo.workers, "evaluation worker threads");
  app.add_option("--target-cost", target_cost, "stop once best cost reaches this");
  app.add_option("--step-budget", evo.step_budget, "statement budget per execution");
  app.add_option("--solver-budget", evo.solver_budget, "propagation budget per solver call");
  app.add_option("--frontier-cap", sx.frontier_cap, "symexe frontier size cap");
  app.add_option("--out", out_path, "report output path (default: stdout)");
  app.add_option("--format", format, "json | csv (csv emits the curve only)")
      ->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--export-program", export_path, "write the program text format and exit");
  app.add_option("--campaign", campaign_file, "campaign config; --out is the output directory");
  app.add_flag("--list", list_programs, "list benchmark programs and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (list_programs) {
      std::printf("%-5s %-18s %-14s %s\n", "id", "name", "default scale", "cost metric");
      for (const auto& e : wca::registry()) {
        std::string scale;
        for (const auto& [k, v] : e.default_scale)
          scale += (scale.empty() ? "" : ",") + k + "=" + std::to_string(v);
        std::printf("%-5s %-18s %-14s %s\n", e.id.c_str(), e.name.c_str(), scale.c_str(),
                    e.cost_note.c_str());
      }
      return 0;
    }

    if (estimate_m > 0) evo.estimate_samples = estimate_m;
    if (target_cost >= 0) evo.target_cost = target_cost;
    sx.budget_seconds = evo.budget_seconds;
    sx.step_budget = evo.step_budget;
    sx.solver_budget = evo.solver_budget;
    sx.target_cost = evo.target_cost;
    wca::MappingMode mode =
        mapping == "default" ? wca::MappingMode::kDefault : wca::MappingMode::kSkipUnsat;

    if (!campaign_file.empty()) {
      wca::CampaignSpec spec = wca::CampaignSpec::parse(read_file(campaign_file));
      std::string dir = out_path.empty() ? "." : out_path;
      wca::CampaignResult result = wca::run_campaign(spec, [&](const wca::RunReport& r) {
        std::string name = dir + "/run_" + r.method + "_" + r.program_id + "_s" +
                           std::to_string(r.seed) + ".json";
        write_file(name, r.to_json().dump(2) + "\n");
        std::fprintf(stderr, "%s %s seed %llu: best %lld (%lld ms)\n", r.method.c_str(),
                     r.program_id.c_str(), static_cast<unsigned long long>(r.seed),
                     static_cast<long long>(r.best_cost), static_cast<long long>(r.wall_ms));
      });
      write_file(dir + "/aggregate.json", result.aggregate.dump(2) + "\n");
      std::printf("%s\n", result.aggregate.dump(2).c_str());
      return 0;
    }

    if (program_id.empty() && program_file.empty())
      throw wca::ConfigError("missing --program (or --program-file); see --list");
    if (!program_id.empty() && !program_file.empty())
      throw wca::ConfigError("--program and --program-file are mutually exclusive");

    wca::Program program;
    wca::RunMeta meta;
    if (!program_file.empty()) {
      program = wca::parse_program(read_file(program_file));
      meta = {program_file, program.name, program.scale_params};
      wca::ScaleMap overrides = parse_scales(scale_args);
      if (!overrides.empty())
        throw wca::ConfigError("--scale applies to registry benchmarks only");
    } else {
      const wca::BenchmarkEntry& entry = wca::find_benchmark(program_id);
      wca::ScaleMap scale = wca::merged_scale(entry, parse_scales(scale_args));
      program = entry.build(scale);
      meta = {entry.id, entry.name, scale};
    }

    wca::ValidationReport vr = wca::validate(program);
    for (const auto& issue : vr.issues)
      std::fprintf(stderr, "%s: stmt %d: %s\n", issue.warning ? "warning" : "error", issue.stmt_id,
                   issue.what.c_str());
    if (!vr.ok()) throw wca::ConfigError("program failed validation");

    if (!export_path.empty()) {
      std::string text = wca::serialize_program(program);
      if (export_path == "-")
        std::fputs(text.c_str(), stdout);
      else
        write_file(export_path, text);
      return 0;
    }

    wca::CompiledProgram cp(program);
    wca::RunReport report = wca::run_method(method, cp, evo, sx, mode, meta);
    std::string payload =
        format == "csv" ? report.curve_csv() : report.to_json().dump(2) + "\n";
    if (out_path.empty())
      std::fputs(payload.c_str(), stdout);
    else
      write_file(out_path, payload);
    return 0;
  } catch (const wca::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const wca::NotFound& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const wca::Unsupported& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const wca::ParseError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "runtime error: %s\n", e.what());
    return 3;
  }
}
