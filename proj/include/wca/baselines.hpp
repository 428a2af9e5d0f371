#pragma once

// Comparison methods: evolutionary fuzzing over the concrete input space
// (same selection scheme as the path fuzzer, crowdedness via normalized
// Hamming similarity) and best-first search-based symbolic execution
// (frontier keyed by accumulated cost, ties broken deeper-first then FIFO).

#include <chrono>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "wca/concrete.hpp"
#include "wca/evo.hpp"
#include "wca/machine.hpp"
#include "wca/report.hpp"
#include "wca/symexec.hpp"

namespace wca {

struct InputIndividual {
  ConcreteInput input;
  std::vector<Int> flat;  // symbol-ordered value vector
  Int perf = -1;
  double crowd = 0.0;
};

namespace baseline_detail {

inline InputIndividual make_individual(const CompiledProgram& cp, ConcreteInput in) {
  InputIndividual ind;
  ind.flat = in.symbol_values(cp.symbols());
  ind.input = std::move(in);
  return ind;
}

// One position redrawn uniformly or nudged by +-1, clamped to its domain.
inline InputIndividual mutate_input(const CompiledProgram& cp, const InputIndividual& parent,
                                    Rng& rng) {
  const SymbolTable& syms = cp.symbols();
  std::vector<Int> flat = parent.flat;
  int sid = static_cast<int>(rng.index(flat.size()));
  const auto& info = syms.info(sid);
  if (rng.coin()) {
    flat[static_cast<size_t>(sid)] = rng.uniform(info.lo, info.hi);
  } else {
    Int v = flat[static_cast<size_t>(sid)] + (rng.coin() ? 1 : -1);
    flat[static_cast<size_t>(sid)] = std::max(info.lo, std::min(info.hi, v));
  }
  return make_individual(cp, input_from_values(syms, flat));
}

// Array prefixes from one parent spliced with suffixes from the other;
// scalars picked per-coin.
inline InputIndividual crossover_inputs(const CompiledProgram& cp, const InputIndividual& a,
                                        const InputIndividual& b, Rng& rng) {
  const SymbolTable& syms = cp.symbols();
  std::vector<Int> flat = a.flat;
  for (const auto& [name, sids] : syms.arrays()) {
    size_t cut = static_cast<size_t>(rng.uniform(0, static_cast<Int>(sids.size())));
    for (size_t i = cut; i < sids.size(); ++i)
      flat[static_cast<size_t>(sids[i])] = b.flat[static_cast<size_t>(sids[i])];
  }
  for (const auto& [name, sid] : syms.scalars())
    if (rng.coin()) flat[static_cast<size_t>(sid)] = b.flat[static_cast<size_t>(sid)];
  return make_individual(cp, input_from_values(syms, flat));
}

inline void compute_input_crowdingness(std::vector<InputIndividual>& pool) {
  for (auto& ind : pool) ind.crowd = 0.0;
  for (size_t i = 0; i < pool.size(); ++i) {
    for (size_t j = i + 1; j < pool.size(); ++j) {
      size_t len = pool[i].flat.size();
      size_t equal = 0;
      for (size_t k = 0; k < len; ++k) equal += pool[i].flat[k] == pool[j].flat[k];
      double s = len > 0 ? static_cast<double>(equal) / static_cast<double>(len) : 0.0;
      pool[i].crowd += s;
      pool[j].crowd += s;
    }
  }
}

}  // namespace baseline_detail

// Evolutionary fuzzing over concrete inputs; perf is the concrete run cost.
inline RunReport run_fuzz(const CompiledProgram& cp, const EvoParams& params, const RunMeta& meta) {
  params.validate();
  using Clock = std::chrono::steady_clock;
  const auto t0 = Clock::now();
  auto elapsed_ms = [&]() {
    return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count();
  };
  using namespace baseline_detail;

  Rng rng(params.seed);
  RunReport rep;
  rep.method = "fuzz";
  rep.program_id = meta.program_id;
  rep.program_name = meta.program_name.empty() ? cp.name() : meta.program_name;
  rep.scale = meta.scale;
  rep.mapping = "n/a";
  rep.seed = params.seed;
  rep.workers = params.workers;
  rep.params = {{"psize", std::to_string(params.psize)},
                {"r1", std::to_string(params.r1)},
                {"r2", std::to_string(params.r2)},
                {"beta", std::to_string(params.beta)},
                {"gamma", std::to_string(params.gamma)},
                {"offspring", std::to_string(params.effective_offspring())},
                {"mutation_share", std::to_string(params.mutation_share)}};

  ErrorCounters errors;
  long long evals = 0;
  auto evaluate = [&](InputIndividual& ind) {
    ++evals;
    try {
      ind.perf = run_concrete(cp, ind.input, params.step_budget).total_cost;
    } catch (const BudgetExceeded&) {
      ++errors.step_budget;
      ind.perf = -1;
    } catch (const std::runtime_error&) {
      ++errors.exec_errors;
      ind.perf = -1;
    }
  };

  std::vector<InputIndividual> pop;
  pop.reserve(static_cast<size_t>(params.psize));
  for (int i = 0; i < params.psize; ++i) {
    pop.push_back(make_individual(cp, random_input(cp.symbols(), rng)));
    evaluate(pop.back());
  }
  InputIndividual best = pop.front();
  for (const auto& ind : pop)
    if (ind.perf > best.perf) best = ind;

  std::int64_t last_point_ms = -1000;
  auto record_point = [&](bool force) {
    std::int64_t ms = elapsed_ms();
    bool improved = rep.curve.empty() || best.perf > rep.curve.back().best_cost;
    if (force || improved || ms - last_point_ms >= 1000) {
      rep.curve.push_back({ms, best.perf, evals});
      last_point_ms = ms;
    }
  };
  record_point(true);

  long long generation = 0;
  auto done = [&]() {
    if (params.target_cost && best.perf >= *params.target_cost) return true;
    if (params.max_iters >= 0 && generation >= params.max_iters) return true;
    return static_cast<double>(elapsed_ms()) / 1000.0 >= params.budget_seconds;
  };

  while (!done()) {
    std::vector<InputIndividual> offspring;
    const int n_off = params.effective_offspring();
    offspring.reserve(static_cast<size_t>(n_off));
    for (int i = 0; i < n_off; ++i) {
      if (rng.unit() < params.mutation_share) {
        offspring.push_back(mutate_input(cp, pop[rng.index(pop.size())], rng));
      } else {
        const InputIndividual& p1 = pop[rng.index(pop.size())];
        const InputIndividual& p2 = pop[rng.index(pop.size())];
        offspring.push_back(crossover_inputs(cp, p1, p2, rng));
      }
      evaluate(offspring.back());
      if (offspring.back().perf > best.perf) best = offspring.back();
    }
    compute_input_crowdingness(offspring);
    pop = select_next(pop, offspring, params, rng);
    ++generation;
    record_point(false);
  }
  record_point(true);

  rep.evals = evals;
  rep.sat_rate = 1.0;  // every concrete input is its own witness
  rep.errors = errors;
  rep.best_cost = best.perf;
  rep.best_sat = best.perf >= 0;
  rep.best_input = best.input.to_text();
  rep.wall_ms = elapsed_ms();
  return rep;
}

inline RunReport run_fuzz(const Program& p, const EvoParams& params, const RunMeta& meta = {}) {
  return run_fuzz(CompiledProgram(p), params, meta);
}

// --- best-first symbolic execution ---------------------------------------

struct SymexeParams {
  double budget_seconds = 60.0;
  long long frontier_cap = 100000;
  long long step_budget = kDefaultStepBudget;
  long long solver_budget = 10'000'000;
  std::optional<Int> target_cost;
  long long max_expansions = -1;  // -1: unbounded
};

// Explores prefix states in order of accumulated cost (ties: deeper first,
// then FIFO). Each branch side is satisfiability-checked before its child
// state enters the frontier, so completed paths are satisfiable by
// construction. With no budget pressure the exploration is exhaustive.
inline RunReport run_symexe(const CompiledProgram& cp, const SymexeParams& params,
                            const RunMeta& meta) {
  using Clock = std::chrono::steady_clock;
  const auto t0 = Clock::now();
  auto elapsed_ms = [&]() {
    return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count();
  };

  RunReport rep;
  rep.method = "symexe";
  rep.program_id = meta.program_id;
  rep.program_name = meta.program_name.empty() ? cp.name() : meta.program_name;
  rep.scale = meta.scale;
  rep.mapping = "n/a";
  rep.params = {{"frontier_cap", std::to_string(params.frontier_cap)}};

  SolverContext ctx(cp.symbols());
  ctx.set_budget(params.solver_budget);

  struct State {
    Machine m;
    Int cost;
    long long depth;
    long long seq;
  };
  struct Better {
    bool operator()(const State& a, const State& b) const {
      if (a.cost != b.cost) return a.cost < b.cost;      // higher cost preferred
      if (a.depth != b.depth) return a.depth < b.depth;  // deeper preferred
      return a.seq > b.seq;                              // FIFO among equals
    }
  };
  std::multiset<State, Better> frontier;  // best state is *rbegin()

  long long seq = 0;
  Int best_cost = -1;
  std::vector<ExprPtr> best_conditions;
  long long completed = 0;
  long long expansions = 0;

  auto sat_with = [&](const std::vector<ExprPtr>& conds, const ExprPtr& extra) {
    ctx.reset();
    for (const auto& c : conds) ctx.push(c);
    ctx.push(extra);
    return ctx.check_sat() == SolverContext::Result::kSat;
  };

  std::int64_t last_point_ms = -1000;
  auto record_point = [&](bool force) {
    std::int64_t ms = elapsed_ms();
    bool improved = rep.curve.empty() || best_cost > rep.curve.back().best_cost;
    if (force || improved || ms - last_point_ms >= 1000) {
      rep.curve.push_back({ms, best_cost, completed});
      last_point_ms = ms;
    }
  };

  frontier.insert({Machine(cp, false, params.step_budget), 0, 0, seq++});
  record_point(true);

  auto out_of_budget = [&]() {
    if (params.target_cost && best_cost >= *params.target_cost) return true;
    if (params.max_expansions >= 0 && expansions >= params.max_expansions) return true;
    return static_cast<double>(elapsed_ms()) / 1000.0 >= params.budget_seconds;
  };

  while (!frontier.empty() && !out_of_budget()) {
    State st = std::move(frontier.extract(std::prev(frontier.end())).value());
    ++expansions;
    Machine::Stop stop;
    try {
      stop = st.m.advance();
    } catch (const BudgetExceeded&) {
      ++rep.errors.step_budget;
      continue;
    } catch (const UnsupportedFeature&) {
      ++rep.errors.exec_errors;
      continue;
    } catch (const ExecError&) {
      ++rep.errors.exec_errors;
      continue;
    }
    if (stop == Machine::Stop::kHalted) {
      ++completed;
      if (st.m.cost() > best_cost) {
        best_cost = st.m.cost();
        best_conditions = st.m.conditions();
        record_point(false);
      }
      continue;
    }
    const ExprPtr guard = st.m.pending_guard();
    for (bool side : {false, true}) {
      bool side_sat;
      try {
        side_sat = sat_with(st.m.conditions(), expr::nnf(guard, side));
      } catch (const SolverBudgetExceeded&) {
        ++rep.errors.solver_budget;
        continue;  // conservative: drop the side we cannot decide
      }
      if (!side_sat) continue;
      State child{st.m, st.m.cost(), st.depth + 1, seq++};
      child.m.take(side, true);
      frontier.insert(std::move(child));
    }
    while (static_cast<long long>(frontier.size()) > params.frontier_cap) {
      frontier.erase(frontier.begin());  // oldest lowest-priority first
      ++rep.frontier_dropped;
    }
    record_point(false);
  }
  record_point(true);

  rep.evals = completed;
  rep.sat_rate = 1.0;  // only satisfiable paths complete
  rep.best_cost = best_cost;
  rep.best_sat = best_cost >= 0;
  if (best_cost >= 0) {
    ctx.reset();
    for (const auto& c : best_conditions) ctx.push(c);
    if (ctx.check_sat() == SolverContext::Result::kSat)
      rep.best_input = input_from_values(cp.symbols(), ctx.get_model().values).to_text();
  }
  rep.solver = ctx.stats();
  rep.wall_ms = elapsed_ms();
  rep.solver_time_share =
      rep.wall_ms > 0 ? static_cast<double>(rep.solver.solve_time_ns) / 1e6 / static_cast<double>(rep.wall_ms)
                      : 0.0;
  return rep;
}

inline RunReport run_symexe(const Program& p, const SymexeParams& params, const RunMeta& meta = {}) {
  return run_symexe(CompiledProgram(p), params, meta);
}

}  // namespace wca
