#include <gtest/gtest.h>

#include "testutil.hpp"
#include "wca/baselines.hpp"
#include "wca/bench.hpp"
#include "wca/builder.hpp"

using namespace wca;
using namespace wca::expr;

TEST(Fuzz, ReachesPalindromeMaximum) {
  // oracle first: brute force at N=4 establishes the maximum equals N
  {
    Program tiny = build_benchmark(find_benchmark("3-1"), {{"N", 4}});
    auto [max_cost, witness] = oracle::max_over_inputs(CompiledProgram(tiny));
    EXPECT_EQ(max_cost, 4);
  }
  Program p = build_benchmark(find_benchmark("3-1"), {{"N", 8}});
  EvoParams params;
  params.psize = 20;
  params.budget_seconds = 30;
  params.seed = 4;
  params.target_cost = 8;
  RunReport r = run_fuzz(p, params, {});
  EXPECT_EQ(r.best_cost, 8);
}

TEST(Fuzz, ZeroGenerationsReturnsBestRandomInput) {
  Program p = build_benchmark(find_benchmark("3-3"), {{"N", 8}});
  EvoParams params;
  params.psize = 10;
  params.max_iters = 0;
  params.seed = 9;
  RunReport r = run_fuzz(p, params, {});
  EXPECT_EQ(r.evals, 10);
  EXPECT_GE(r.best_cost, 0);
}

TEST(Fuzz, MutationsStayInDomain) {
  Program p = build_benchmark(find_benchmark("1-8"), {{"N", 6}});
  CompiledProgram cp(p);
  Rng rng(77);
  InputIndividual ind = baseline_detail::make_individual(cp, random_input(cp.symbols(), rng));
  const SymbolTable& syms = cp.symbols();
  for (int i = 0; i < 100000; ++i) {
    ind = baseline_detail::mutate_input(cp, ind, rng);
    int sid = static_cast<int>(rng.index(ind.flat.size()));
    ASSERT_GE(ind.flat[static_cast<size_t>(sid)], syms.info(sid).lo);
    ASSERT_LE(ind.flat[static_cast<size_t>(sid)], syms.info(sid).hi);
  }
  // full check at the end
  for (int sid = 0; sid < syms.count(); ++sid) {
    EXPECT_GE(ind.flat[static_cast<size_t>(sid)], syms.info(sid).lo);
    EXPECT_LE(ind.flat[static_cast<size_t>(sid)], syms.info(sid).hi);
  }
}

TEST(Fuzz, PerfMatchesConcreteCostOfReportedInput) {
  Program p = build_benchmark(find_benchmark("1-1"), {{"N", 6}});
  EvoParams params;
  params.psize = 10;
  params.max_iters = 10;
  params.seed = 21;
  RunReport r = run_fuzz(p, params, {});
  // parse "A = [..]" back and replay
  size_t lb = r.best_input.find('['), rb = r.best_input.find(']');
  ASSERT_NE(lb, std::string::npos);
  std::vector<Int> vals;
  std::string body = r.best_input.substr(lb + 1, rb - lb - 1);
  size_t pos = 0;
  while (pos < body.size()) {
    size_t comma = body.find(',', pos);
    if (comma == std::string::npos) comma = body.size();
    vals.push_back(std::stoll(body.substr(pos, comma - pos)));
    pos = comma + 1;
  }
  ConcreteInput in;
  in.arrays["A"] = vals;
  EXPECT_EQ(run_concrete(CompiledProgram(p), in).total_cost, r.best_cost);
}

TEST(Symexe, ExploresAllThreePaths) {
  // the contradiction program has 3 structural paths, 2 satisfiable
  ProgramBuilder b("contradiction");
  b.input_scalar("X", -8, 8);
  auto done = b.new_label();
  b.branch_false_to(lt(lit(0), var("X")), done);
  b.add_cost(lit(3));
  b.branch_false_to(lt(var("X"), lit(0)), done);
  b.add_cost(lit(5));
  b.bind(done);
  b.halt();
  Program p = b.finish();
  CompiledProgram cp(p);

  auto oracle = oracle::enumerate_paths(cp, 100);
  EXPECT_EQ(oracle.paths, 2);
  EXPECT_EQ(oracle.max_cost, 3);

  SymexeParams sp;
  sp.budget_seconds = 30;
  RunReport r = run_symexe(cp, sp, {});
  EXPECT_EQ(r.best_cost, oracle.max_cost);
  EXPECT_EQ(r.evals, 2);  // completed paths
}

TEST(Symexe, MatchesExhaustiveEnumerationOnSmallInstances) {
  struct Case {
    const char* id;
    ScaleMap scale;
  };
  const Case cases[] = {
      {"1-1", {{"N", 4}}}, {"1-2", {{"N", 4}}},  {"1-3", {{"N", 5}}},
      {"3-1", {{"N", 6}}}, {"3-4", {{"N", 6}}},  {"1-8", {{"N", 1}, {"P", 13}}},
      {"3-5", {{"N", 3}}},
  };
  for (const auto& c : cases) {
    Program p = build_benchmark(find_benchmark(c.id), c.scale);
    CompiledProgram cp(p);
    auto oracle = oracle::enumerate_paths(cp, 4096);
    ASSERT_FALSE(oracle.capped) << c.id;
    SymexeParams sp;
    sp.budget_seconds = 60;
    RunReport r = run_symexe(cp, sp, {});
    EXPECT_EQ(r.best_cost, oracle.max_cost) << c.id;
    EXPECT_EQ(r.evals, oracle.paths) << c.id;
  }
}

TEST(Symexe, DeterministicAcrossRuns) {
  Program p = build_benchmark(find_benchmark("1-2"), {{"N", 4}});
  CompiledProgram cp(p);
  SymexeParams sp;
  sp.budget_seconds = 30;
  RunReport a = run_symexe(cp, sp, {});
  RunReport b = run_symexe(cp, sp, {});
  EXPECT_EQ(a.best_cost, b.best_cost);
  EXPECT_EQ(a.evals, b.evals);
  EXPECT_EQ(a.best_input, b.best_input);
}

TEST(Symexe, WitnessReplaysToBestCost) {
  Program p = build_benchmark(find_benchmark("1-2"), {{"N", 4}});
  CompiledProgram cp(p);
  SymexeParams sp;
  sp.budget_seconds = 30;
  RunReport r = run_symexe(cp, sp, {});
  ASSERT_GE(r.best_cost, 0);
  size_t lb = r.best_input.find('['), rb = r.best_input.find(']');
  ASSERT_NE(lb, std::string::npos);
  std::vector<Int> vals;
  std::string body = r.best_input.substr(lb + 1, rb - lb - 1);
  size_t pos = 0;
  while (pos < body.size()) {
    size_t comma = body.find(',', pos);
    if (comma == std::string::npos) comma = body.size();
    vals.push_back(std::stoll(body.substr(pos, comma - pos)));
    pos = comma + 1;
  }
  ConcreteInput in;
  in.arrays["A"] = vals;
  EXPECT_EQ(run_concrete(cp, in).total_cost, r.best_cost);
}

TEST(Symexe, FrontierCapDropsAndRecords) {
  Program p = build_benchmark(find_benchmark("1-2"), {{"N", 8}});
  CompiledProgram cp(p);
  SymexeParams sp;
  sp.budget_seconds = 2;
  sp.frontier_cap = 16;
  RunReport r = run_symexe(cp, sp, {});
  EXPECT_GT(r.frontier_dropped, 0);
}
