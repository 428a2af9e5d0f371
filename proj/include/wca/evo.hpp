#pragma once

// The path-string evolutionary search: population initialization (half
// uniform random, half seeded from concrete runs), two mutation operators,
// three crossover operators, prefix-similarity crowdingness, and the
// three-part selection scheme (survivors from the previous generation with
// the best always kept, the top offspring by performance, and a weighted
// draw from the rest with weight i^-beta * j^-gamma over performance and
// crowdedness ranks).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "wca/concrete.hpp"
#include "wca/machine.hpp"
#include "wca/report.hpp"
#include "wca/rng.hpp"
#include "wca/symexec.hpp"

namespace wca {

struct Individual {
  PathString q;
  Int perf = -1;  // cost if satisfiable, -1 otherwise
  int used_bits = 0;
  double crowd = 0.0;
  bool sat = false;
  enum class Origin : std::uint8_t { kRandom, kSeeded, kMutation, kCrossover } origin = Origin::kRandom;
};

struct EvoParams {
  int psize = 50;
  double r1 = 0.2;
  double r2 = 0.4;
  double beta = 1.0;
  double gamma = 0.5;
  int path_len = 0;           // 0: estimate from sampled concrete runs
  int estimate_samples = 100;
  double estimate_margin = 2.0;
  int offspring_count = 0;    // 0: psize
  double mutation_share = 0.5;  // rest is crossover; kinds uniform within each
  long long max_iters = -1;   // -1: unbounded
  double budget_seconds = 60.0;
  std::uint64_t seed = 1;
  int workers = 1;
  std::optional<Int> target_cost;  // stop early once reached
  long long step_budget = kDefaultStepBudget;
  long long solver_budget = 10'000'000;

  void validate() const {
    if (psize < 2) throw ConfigError("psize must be at least 2");
    if (r1 < 0 || r2 < 0 || r1 + r2 > 1.0 + 1e-12)
      throw ConfigError("need R1, R2, 1-R1-R2 all in [0, 1]");
    if (beta <= 0 || gamma <= 0) throw ConfigError("beta and gamma must be positive");
    if (offspring_count < 0) throw ConfigError("offspring_count must be >= 1 (or 0 for psize)");
    if (mutation_share < 0 || mutation_share > 1) throw ConfigError("mutation_share in [0,1]");
    if (workers < 1) throw ConfigError("workers must be >= 1");
    if (path_len < 0) throw ConfigError("path_len must be >= 1 (or 0 to estimate)");
  }

  int effective_offspring() const { return offspring_count > 0 ? offspring_count : psize; }
};

struct Population {
  long long generation = 0;
  std::vector<Individual> individuals;
  Individual best_ever;
};

// --- operators ---------------------------------------------------------

enum class MutationKind { kFlip, kFlipRandomizeTail };

// Flips one uniformly chosen used bit; kind B also re-randomizes everything
// after it. Positions beyond the used prefix are left alone (they are inert).
inline PathString mutate(const PathString& q, int used_bits, MutationKind kind, Rng& rng) {
  if (used_bits <= 0) return q;
  PathString r = q;
  int p = static_cast<int>(rng.uniform(0, used_bits - 1));
  r.bits[static_cast<size_t>(p)] ^= 1;
  if (kind == MutationKind::kFlipRandomizeTail)
    for (int i = p + 1; i < r.length(); ++i) r.bits[static_cast<size_t>(i)] = rng.coin() ? 1 : 0;
  return r;
}

enum class CrossoverKind { kSuffix, kSubstring, kInsert };

// Cut positions are uniform over the used prefixes of both parents; the
// result is truncated or zero-padded back to q1's length.
inline PathString crossover(const PathString& q1, int m1, const PathString& q2, int m2,
                            CrossoverKind kind, Rng& rng) {
  const int M = q1.length();
  if (m1 <= 0 || m2 <= 0) return q1;
  std::vector<std::uint8_t> out;
  out.reserve(static_cast<size_t>(M));
  auto copy_range = [](std::vector<std::uint8_t>& dst, const PathString& src, int from, int to) {
    for (int i = from; i <= to && i < src.length(); ++i)
      dst.push_back(src.bits[static_cast<size_t>(i)]);
  };
  switch (kind) {
    case CrossoverKind::kSuffix: {
      int c1 = static_cast<int>(rng.uniform(0, m1 - 1));
      int c2 = static_cast<int>(rng.uniform(0, m2 - 1));
      copy_range(out, q1, 0, c1 - 1);
      copy_range(out, q2, c2, m2 - 1);
      break;
    }
    case CrossoverKind::kSubstring: {
      int i1 = static_cast<int>(rng.uniform(0, m1 - 1));
      int j1 = static_cast<int>(rng.uniform(i1, m1 - 1));
      int i2 = static_cast<int>(rng.uniform(0, m2 - 1));
      int j2 = static_cast<int>(rng.uniform(i2, m2 - 1));
      copy_range(out, q1, 0, i1 - 1);
      copy_range(out, q2, i2, j2);
      copy_range(out, q1, j1 + 1, M - 1);
      break;
    }
    case CrossoverKind::kInsert: {
      int pos = static_cast<int>(rng.uniform(0, m1 - 1));
      int i2 = static_cast<int>(rng.uniform(0, m2 - 1));
      int j2 = static_cast<int>(rng.uniform(i2, m2 - 1));
      copy_range(out, q1, 0, pos - 1);
      copy_range(out, q2, i2, j2);
      copy_range(out, q1, pos, M - 1);
      break;
    }
  }
  out.resize(static_cast<size_t>(M), 0);
  return PathString{std::move(out)};
}

// --- crowdingness -------------------------------------------------------

// Normalized longest-common-prefix similarity; string lengths are taken as
// used-bit counts since padding bits are semantically inert.
inline double lcp_similarity(const PathString& a, int ma, const PathString& b, int mb) {
  if (ma <= 0 || mb <= 0) return 0.0;
  int n = std::min(ma, mb);
  int l = 0;
  while (l < n && a.bits[static_cast<size_t>(l)] == b.bits[static_cast<size_t>(l)]) ++l;
  return static_cast<double>(l) / std::sqrt(static_cast<double>(ma) * static_cast<double>(mb));
}

template <typename Ind>
void compute_crowdingness(std::vector<Ind>& pool) {
  for (auto& ind : pool) ind.crowd = 0.0;
  for (size_t i = 0; i < pool.size(); ++i) {
    for (size_t j = i + 1; j < pool.size(); ++j) {
      double s = lcp_similarity(pool[i].q, pool[i].used_bits, pool[j].q, pool[j].used_bits);
      pool[i].crowd += s;
      pool[j].crowd += s;
    }
  }
}

// --- selection ----------------------------------------------------------

struct SelectionCounts {
  int keep_prev = 0;
  int top_offspring = 0;
  int weighted_rest = 0;
};

// Largest-remainder rounding of (R1, R2, 1-R1-R2) * psize; the keep-prev
// part is floored at one so the elite always has a seat.
inline SelectionCounts selection_counts(int psize, double r1, double r2) {
  double f[3] = {r1 * psize, r2 * psize, (1.0 - r1 - r2) * psize};
  int n[3];
  double rem[3];
  int total = 0;
  for (int i = 0; i < 3; ++i) {
    n[i] = static_cast<int>(std::floor(f[i] + 1e-9));
    rem[i] = f[i] - n[i];
    total += n[i];
  }
  while (total < psize) {
    int pick = 0;
    for (int i = 1; i < 3; ++i)
      if (rem[i] > rem[pick] + 1e-12) pick = i;
    ++n[pick];
    rem[pick] = -1;
    ++total;
  }
  if (n[0] == 0) {
    int donor = n[2] >= n[1] ? 2 : 1;
    if (n[donor] > 0) {
      --n[donor];
      n[0] = 1;
    }
  }
  return {n[0], n[1], n[2]};
}

inline double selection_weight(int perf_rank, int crowd_rank, double beta, double gamma) {
  return std::pow(static_cast<double>(perf_rank), -beta) *
         std::pow(static_cast<double>(crowd_rank), -gamma);
}

namespace evo_detail {

template <typename Ind>
std::vector<size_t> order_by_perf_desc(const std::vector<Ind>& v, const std::vector<size_t>& idx) {
  std::vector<size_t> order = idx;
  std::stable_sort(order.begin(), order.end(),
                   [&](size_t a, size_t b) { return v[a].perf > v[b].perf; });
  return order;
}

}  // namespace evo_detail

// Forms the next generation. Works for any individual type carrying
// `perf`, `crowd` and copy semantics; the path fuzzer and the input-space
// fuzzing baseline share it.
template <typename Ind>
std::vector<Ind> select_next(const std::vector<Ind>& prev, const std::vector<Ind>& offspring,
                             const EvoParams& params, Rng& rng) {
  const int psize = params.psize;
  SelectionCounts counts = selection_counts(psize, params.r1, params.r2);
  std::vector<Ind> next;
  next.reserve(static_cast<size_t>(psize));

  // (1) survivors from the previous generation, elite always included
  std::vector<size_t> prev_idx(prev.size());
  for (size_t i = 0; i < prev.size(); ++i) prev_idx[i] = i;
  size_t elite = 0;
  for (size_t i = 1; i < prev.size(); ++i)
    if (prev[i].perf > prev[elite].perf) elite = i;
  std::vector<char> prev_used(prev.size(), 0);
  if (!prev.empty() && counts.keep_prev > 0) {
    next.push_back(prev[elite]);
    prev_used[elite] = 1;
    std::vector<size_t> rest;
    for (size_t i = 0; i < prev.size(); ++i)
      if (!prev_used[i]) rest.push_back(i);
    for (int k = 1; k < counts.keep_prev && !rest.empty(); ++k) {
      size_t at = rng.index(rest.size());
      next.push_back(prev[rest[at]]);
      prev_used[rest[at]] = 1;
      rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(at));
    }
  }

  // (2) top offspring by performance
  std::vector<size_t> off_idx(offspring.size());
  for (size_t i = 0; i < offspring.size(); ++i) off_idx[i] = i;
  std::vector<size_t> by_perf = evo_detail::order_by_perf_desc(offspring, off_idx);
  std::vector<char> off_used(offspring.size(), 0);
  for (int k = 0; k < counts.top_offspring && k < static_cast<int>(by_perf.size()); ++k) {
    next.push_back(offspring[by_perf[static_cast<size_t>(k)]]);
    off_used[by_perf[static_cast<size_t>(k)]] = 1;
  }

  // (3) weighted draw from the leftover offspring
  std::vector<size_t> pool;
  for (size_t i = 0; i < offspring.size(); ++i)
    if (!off_used[i]) pool.push_back(i);
  if (!pool.empty() && counts.weighted_rest > 0) {
    std::vector<size_t> perf_order = evo_detail::order_by_perf_desc(offspring, pool);
    std::vector<size_t> crowd_order = pool;
    std::stable_sort(crowd_order.begin(), crowd_order.end(), [&](size_t a, size_t b) {
      return offspring[a].crowd < offspring[b].crowd;  // rank 1 = least crowded
    });
    std::vector<double> weight_of(offspring.size(), 0.0);
    for (size_t r = 0; r < perf_order.size(); ++r)
      weight_of[perf_order[r]] = std::pow(static_cast<double>(r + 1), -params.beta);
    for (size_t r = 0; r < crowd_order.size(); ++r)
      weight_of[crowd_order[r]] *= std::pow(static_cast<double>(r + 1), -params.gamma);

    int want = std::min<int>(counts.weighted_rest, static_cast<int>(pool.size()));
    for (int k = 0; k < want; ++k) {
      double total = 0.0;
      for (size_t i : pool) total += weight_of[i];
      double draw = rng.unit() * total;
      size_t chosen = pool.back();
      for (size_t pi = 0; pi < pool.size(); ++pi) {
        draw -= weight_of[pool[pi]];
        if (draw <= 0) {
          chosen = pool[pi];
          pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(pi));
          break;
        }
        if (pi + 1 == pool.size()) {  // numeric tail: take the last
          chosen = pool[pi];
          pool.pop_back();
          break;
        }
      }
      next.push_back(offspring[chosen]);
    }
  }

  // shortfall: refill from the unused previous generation by performance
  if (static_cast<int>(next.size()) < psize) {
    std::vector<size_t> unused;
    for (size_t i = 0; i < prev.size(); ++i)
      if (!prev_used[i]) unused.push_back(i);
    std::vector<size_t> by = evo_detail::order_by_perf_desc(prev, unused);
    for (size_t k = 0; k < by.size() && static_cast<int>(next.size()) < psize; ++k)
      next.push_back(prev[by[k]]);
  }
  // overshoot is impossible; shortfall beyond prev cannot happen for
  // |prev| == psize, but guard the init edge case anyway
  while (static_cast<int>(next.size()) > psize) next.pop_back();
  return next;
}

// --- the search ---------------------------------------------------------

struct RunMeta {
  std::string program_id;
  std::string program_name;
  std::map<std::string, Int> scale;
};

// Initial strings: ceil(psize/2) uniform random, floor(psize/2) seeded from
// random concrete inputs (their related path strings under the run's mapping
// mode, zero-padded). When the path length is estimated, it is raised to
// cover every seed.
struct InitialStrings {
  std::vector<std::pair<PathString, Individual::Origin>> strings;
  int path_len = 0;
};

inline InitialStrings make_initial_strings(const CompiledProgram& cp, const EvoParams& params,
                                           MappingMode mode, SolverContext& ctx, Rng& rng) {
  InitialStrings init;
  int n_random = (params.psize + 1) / 2;
  int n_seeded = params.psize / 2;
  std::vector<std::vector<std::uint8_t>> seed_bits;
  seed_bits.reserve(static_cast<size_t>(n_seeded));
  for (int i = 0; i < n_seeded; ++i) {
    ConcreteInput in = random_input(cp.symbols(), rng);
    seed_bits.push_back(related_path_string(cp, in, mode, ctx, params.step_budget));
  }
  int M = params.path_len;
  if (M == 0) {
    M = estimate_path_len(cp, params.estimate_samples, params.estimate_margin, rng.raw(),
                          params.step_budget);
    for (const auto& s : seed_bits) M = std::max(M, static_cast<int>(s.size()));
  }
  init.path_len = M;
  for (int i = 0; i < n_random; ++i)
    init.strings.push_back({PathString::random(M, rng), Individual::Origin::kRandom});
  for (auto& s : seed_bits)
    init.strings.push_back({PathString::padded(std::move(s), M), Individual::Origin::kSeeded});
  return init;
}

namespace evo_detail {

struct EvalBatch {
  ErrorCounters errors;
  long long sat_count = 0;
};

inline Individual evaluate_path(const CompiledProgram& cp, PathString q, MappingMode mode,
                                SolverContext& ctx, const EvoParams& params,
                                Individual::Origin origin, EvalBatch& batch) {
  Individual ind;
  ind.origin = origin;
  try {
    PathOutcome out = execute(cp, q, mode, ctx, params.step_budget);
    ind.perf = out.sat ? out.cost : -1;
    ind.sat = out.sat;
    ind.used_bits = out.used_bits;
    if (out.solver_budget_hit) ++batch.errors.solver_budget;
    if (out.sat) ++batch.sat_count;
  } catch (const PathTooShort&) {
    ++batch.errors.path_too_short;
  } catch (const BudgetExceeded&) {
    ++batch.errors.step_budget;
  } catch (const ExecError&) {
    ++batch.errors.exec_errors;
  } catch (const UnsupportedFeature&) {
    ++batch.errors.exec_errors;
  }
  ind.q = std::move(q);
  return ind;
}

}  // namespace evo_detail

inline RunReport run_pathfuzz(const CompiledProgram& cp, const EvoParams& params, MappingMode mode,
                              const RunMeta& meta) {
  params.validate();
  using Clock = std::chrono::steady_clock;
  const auto t0 = Clock::now();
  auto elapsed_ms = [&]() {
    return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count();
  };

  Rng rng(params.seed);
  RunReport rep;
  rep.method = "pathfuzz";
  rep.program_id = meta.program_id;
  rep.program_name = meta.program_name.empty() ? cp.name() : meta.program_name;
  rep.scale = meta.scale;
  rep.mapping = to_string(mode);
  rep.seed = params.seed;
  rep.workers = params.workers;
  rep.params = {{"psize", std::to_string(params.psize)},
                {"r1", std::to_string(params.r1)},
                {"r2", std::to_string(params.r2)},
                {"beta", std::to_string(params.beta)},
                {"gamma", std::to_string(params.gamma)},
                {"offspring", std::to_string(params.effective_offspring())},
                {"mutation_share", std::to_string(params.mutation_share)}};

  // worker contexts (one per thread; reused across generations)
  int workers = std::max(1, params.workers);
  std::vector<SolverContext> ctxs;
  ctxs.reserve(static_cast<size_t>(workers));
  for (int i = 0; i < workers; ++i) {
    ctxs.emplace_back(cp.symbols());
    ctxs.back().set_budget(params.solver_budget);
  }

  evo_detail::EvalBatch totals;
  long long evals = 0;

  InitialStrings init = make_initial_strings(cp, params, mode, ctxs[0], rng);
  const int M = init.path_len;
  rep.path_len = M;

  // parallel evaluation of a batch of strings (deterministic result order)
  auto evaluate_all = [&](std::vector<std::pair<PathString, Individual::Origin>>& work)
      -> std::vector<Individual> {
    std::vector<Individual> out(work.size());
    std::vector<evo_detail::EvalBatch> batches(static_cast<size_t>(workers));
    auto run_chunk = [&](int w) {
      for (size_t i = static_cast<size_t>(w); i < work.size(); i += static_cast<size_t>(workers))
        out[i] = evo_detail::evaluate_path(cp, std::move(work[i].first), mode, ctxs[static_cast<size_t>(w)],
                                           params, work[i].second, batches[static_cast<size_t>(w)]);
    };
    if (workers == 1) {
      run_chunk(0);
    } else {
      std::vector<std::thread> threads;
      for (int w = 0; w < workers; ++w) threads.emplace_back(run_chunk, w);
      for (auto& t : threads) t.join();
    }
    for (const auto& b : batches) {
      totals.errors.merge(b.errors);
      totals.sat_count += b.sat_count;
    }
    evals += static_cast<long long>(work.size());
    return out;
  };

  std::vector<std::pair<PathString, Individual::Origin>> work = std::move(init.strings);

  Population pop;
  pop.individuals = evaluate_all(work);
  pop.best_ever = pop.individuals.front();
  for (const auto& ind : pop.individuals)
    if (ind.perf > pop.best_ever.perf) pop.best_ever = ind;

  std::int64_t last_point_ms = -1000;
  auto record_point = [&](bool force) {
    std::int64_t ms = elapsed_ms();
    bool improved = rep.curve.empty() || pop.best_ever.perf > rep.curve.back().best_cost;
    if (force || improved || ms - last_point_ms >= 1000) {
      rep.curve.push_back({ms, pop.best_ever.perf, evals});
      last_point_ms = ms;
    }
  };
  record_point(true);

  auto done = [&]() {
    if (params.target_cost && pop.best_ever.perf >= *params.target_cost) return true;
    if (params.max_iters >= 0 && pop.generation >= params.max_iters) return true;
    return static_cast<double>(elapsed_ms()) / 1000.0 >= params.budget_seconds;
  };

  while (!done()) {
    const int n_off = params.effective_offspring();
    work.clear();
    for (int i = 0; i < n_off; ++i) {
      if (rng.unit() < params.mutation_share) {
        const Individual& parent = pop.individuals[rng.index(pop.individuals.size())];
        MutationKind kind = rng.coin() ? MutationKind::kFlip : MutationKind::kFlipRandomizeTail;
        work.push_back({mutate(parent.q, parent.used_bits, kind, rng), Individual::Origin::kMutation});
      } else {
        const Individual& p1 = pop.individuals[rng.index(pop.individuals.size())];
        const Individual& p2 = pop.individuals[rng.index(pop.individuals.size())];
        CrossoverKind kind = static_cast<CrossoverKind>(rng.index(3));
        work.push_back({crossover(p1.q, p1.used_bits, p2.q, p2.used_bits, kind, rng),
                        Individual::Origin::kCrossover});
      }
    }
    std::vector<Individual> offspring = evaluate_all(work);
    compute_crowdingness(offspring);
    for (const auto& ind : offspring)
      if (ind.perf > pop.best_ever.perf) pop.best_ever = ind;
    pop.individuals = select_next(pop.individuals, offspring, params, rng);
    ++pop.generation;
    record_point(false);
  }
  record_point(true);

  rep.evals = evals;
  rep.sat_rate = evals > 0 ? static_cast<double>(totals.sat_count) / static_cast<double>(evals) : 0.0;
  rep.errors = totals.errors;
  for (const auto& c : ctxs) rep.solver.merge(c.stats());
  rep.best_cost = pop.best_ever.perf;
  rep.best_used_bits = pop.best_ever.used_bits;
  rep.best_sat = pop.best_ever.perf >= 0;

  if (pop.best_ever.perf >= 0) {
    // re-execute the best string for its conditions, then solve the witness
    SolverContext& ctx = ctxs[0];
    PathOutcome out = execute(cp, pop.best_ever.q, mode, ctx, params.step_budget);
    ConcreteInput witness = solve_witness(cp, out, ctx);
    rep.best_input = witness.to_text();
  }
  rep.wall_ms = elapsed_ms();
  rep.solver_time_share =
      rep.wall_ms > 0 ? static_cast<double>(rep.solver.solve_time_ns) / 1e6 / static_cast<double>(rep.wall_ms)
                      : 0.0;
  return rep;
}

inline RunReport run_pathfuzz(const Program& p, const EvoParams& params, MappingMode mode,
                              const RunMeta& meta = {}) {
  return run_pathfuzz(CompiledProgram(p), params, mode, meta);
}

}  // namespace wca
