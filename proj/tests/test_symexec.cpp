#include <gtest/gtest.h>

#include "testutil.hpp"
#include "wca/bench.hpp"
#include "wca/builder.hpp"
#include "wca/symexec.hpp"

using namespace wca;
using namespace wca::expr;

namespace {

// if X > 0 { if X < 0 { cost 1 } }  -- three paths, one unsatisfiable
Program contradiction_program() {
  ProgramBuilder b("contradiction");
  b.input_scalar("X", -8, 8);
  auto done = b.new_label();
  b.branch_false_to(lt(lit(0), var("X")), done);
  b.branch_false_to(lt(var("X"), lit(0)), done);
  b.add_cost(lit(1));
  b.bind(done);
  b.halt();
  return b.finish();
}

PathString ones(int m) {
  PathString q;
  q.bits.assign(static_cast<size_t>(m), 1);
  return q;
}

}  // namespace

TEST(SymExec, ContradictionDefaultModeUnsat) {
  CompiledProgram cp(contradiction_program());
  SolverContext ctx(cp.symbols());
  PathOutcome out = execute(cp, ones(8), MappingMode::kDefault, ctx);
  EXPECT_FALSE(out.sat);
  EXPECT_EQ(out.used_bits, 2);
  EXPECT_EQ(out.conditions.size(), 2u);
}

TEST(SymExec, ContradictionSkipUnsatForcesInnerBranch) {
  CompiledProgram cp(contradiction_program());
  SolverContext ctx(cp.symbols());
  PathOutcome out = execute(cp, ones(8), MappingMode::kSkipUnsat, ctx);
  EXPECT_TRUE(out.sat);
  // the inner branch has an unsatisfiable true side: forced, no bit consumed
  EXPECT_EQ(out.used_bits, 1);
  EXPECT_EQ(out.cost, 0);
}

TEST(SymExec, BranchFreeProgram) {
  ProgramBuilder b("plain");
  b.add_cost(lit(7));
  b.halt();
  CompiledProgram cp(b.finish());
  SolverContext ctx(cp.symbols());
  for (MappingMode mode : {MappingMode::kDefault, MappingMode::kSkipUnsat}) {
    PathOutcome out = execute(cp, ones(4), mode, ctx);
    EXPECT_TRUE(out.sat);
    EXPECT_EQ(out.cost, 7);
    EXPECT_EQ(out.used_bits, 0);
    EXPECT_EQ(out.solver_calls, 0);
  }
}

TEST(SymExec, QuickSortAllOnesIsWorstPath) {
  // all-ones prefix drives every element into the "less than pivot" side:
  // the descending-array path, cost 35 at N=8
  Program p = build_benchmark(find_benchmark("1-2"), {{"N", 8}});
  CompiledProgram cp(p);
  SolverContext ctx(cp.symbols());
  PathOutcome out = execute(cp, ones(64), MappingMode::kDefault, ctx);
  EXPECT_TRUE(out.sat);
  EXPECT_EQ(out.cost, 35);
  EXPECT_EQ(out.used_bits, 28);  // 7+6+...+1 one-bit decisions
}

TEST(SymExec, PathTooShortSignalsSmallM) {
  Program p = build_benchmark(find_benchmark("1-2"), {{"N", 8}});
  CompiledProgram cp(p);
  SolverContext ctx(cp.symbols());
  EXPECT_THROW(execute(cp, ones(3), MappingMode::kDefault, ctx), PathTooShort);
}

TEST(SymExec, SolveWitnessEmptyConditions) {
  ProgramBuilder b("plain");
  b.input_scalar("x", 3, 9);
  b.add_cost(lit(1));
  b.halt();
  CompiledProgram cp(b.finish());
  SolverContext ctx(cp.symbols());
  PathOutcome out = execute(cp, ones(1), MappingMode::kDefault, ctx);
  ASSERT_TRUE(out.sat);
  ConcreteInput in = solve_witness(cp, out, ctx);
  EXPECT_EQ(in.scalars.at("x"), 3);  // lower bound fill
}

TEST(SymExec, SolveWitnessRejectsUnsat) {
  CompiledProgram cp(contradiction_program());
  SolverContext ctx(cp.symbols());
  PathOutcome out = execute(cp, ones(4), MappingMode::kDefault, ctx);
  ASSERT_FALSE(out.sat);
  EXPECT_THROW(solve_witness(cp, out, ctx), IllegalState);
}

TEST(SymExec, QuickSortWitnessReplaysToSameCost) {
  Program p = build_benchmark(find_benchmark("1-2"), {{"N", 8}});
  CompiledProgram cp(p);
  SolverContext ctx(cp.symbols());
  PathOutcome out = execute(cp, ones(64), MappingMode::kDefault, ctx);
  ASSERT_TRUE(out.sat);
  ConcreteInput in = solve_witness(cp, out, ctx);
  Trace t = run_concrete(cp, in);
  EXPECT_EQ(t.total_cost, out.cost);
  EXPECT_EQ(t.total_cost, 35);
}

TEST(SymExec, WitnessOracleOnRandomStrings) {
  // for satisfiable outcomes, solve + concrete replay reproduces the cost
  const char* ids[] = {"1-2", "1-8", "3-1", "3-4"};
  for (const char* id : ids) {
    const BenchmarkEntry& e = find_benchmark(id);
    Program p = build_benchmark(e, {{"N", 5}});
    CompiledProgram cp(p);
    SolverContext ctx(cp.symbols());
    SolverContext wctx(cp.symbols());
    Rng rng(91);
    for (int iter = 0; iter < 40; ++iter) {
      PathString q = PathString::random(128, rng);
      PathOutcome out = execute(cp, q, MappingMode::kSkipUnsat, ctx);
      ASSERT_TRUE(out.sat) << id;
      ConcreteInput in = solve_witness(cp, out, wctx);
      Trace t = run_concrete(cp, in);
      EXPECT_EQ(t.total_cost, out.cost) << id << " iter " << iter;
    }
  }
}

TEST(SymExec, EquivalenceClassStability) {
  // strings differing only beyond the used-bit count yield identical outcomes
  const char* ids[] = {"1-1", "1-2", "3-3"};
  for (const char* id : ids) {
    Program p = build_benchmark(find_benchmark(id), {{"N", 6}});
    CompiledProgram cp(p);
    SolverContext ctx(cp.symbols());
    Rng rng(17);
    for (int iter = 0; iter < 30; ++iter) {
      PathString q = PathString::random(96, rng);
      PathOutcome a = execute(cp, q, MappingMode::kSkipUnsat, ctx);
      PathString q2 = q;
      for (int i = a.used_bits; i < q2.length(); ++i)
        q2.bits[static_cast<size_t>(i)] = rng.coin() ? 1 : 0;
      PathOutcome b = execute(cp, q2, MappingMode::kSkipUnsat, ctx);
      EXPECT_EQ(a.sat, b.sat);
      EXPECT_EQ(a.cost, b.cost);
      EXPECT_EQ(a.used_bits, b.used_bits);
      EXPECT_EQ(a.trace_len, b.trace_len);
    }
  }
}

TEST(SymExec, SkipUnsatNeverRejectsWhatDefaultAccepts) {
  const char* ids[] = {"1-8", "3-1"};
  for (const char* id : ids) {
    Program p = build_benchmark(find_benchmark(id), {{"N", 4}});
    CompiledProgram cp(p);
    SolverContext ctx(cp.symbols());
    Rng rng(3);
    for (int iter = 0; iter < 60; ++iter) {
      PathString q = PathString::random(64, rng);
      PathOutcome d = execute(cp, q, MappingMode::kDefault, ctx);
      if (!d.sat) continue;
      PathOutcome s = execute(cp, q, MappingMode::kSkipUnsat, ctx);
      EXPECT_TRUE(s.sat);
    }
  }
}

TEST(SymExec, RelatedPathStringReplaysUnderSkipUnsat) {
  // mode-matched seeding: replaying the related string reproduces the cost
  const char* ids[] = {"1-8", "3-1", "1-4"};
  Rng rng(41);
  for (const char* id : ids) {
    const BenchmarkEntry& e = find_benchmark(id);
    Program p = build_benchmark(e, {{"N", 4}});
    CompiledProgram cp(p);
    SolverContext ctx(cp.symbols());
    SolverContext xctx(cp.symbols());
    for (int iter = 0; iter < 20; ++iter) {
      ConcreteInput in = random_input(cp.symbols(), rng);
      Trace t = run_concrete(cp, in);
      auto bits = related_path_string(cp, in, MappingMode::kSkipUnsat, xctx);
      PathOutcome out = execute(cp, PathString::padded(bits, 256), MappingMode::kSkipUnsat, ctx);
      EXPECT_TRUE(out.sat) << id;
      EXPECT_EQ(out.cost, t.total_cost) << id;
      EXPECT_EQ(out.used_bits, static_cast<int>(bits.size())) << id;
    }
  }
}

TEST(SymExec, EstimatePathLen) {
  ProgramBuilder b("plain");
  b.add_cost(lit(2));
  b.halt();
  CompiledProgram cp(b.finish());
  EXPECT_EQ(estimate_path_len(cp, 10, 2.0, 1), 1);  // branch-free floor

  Program qs = build_benchmark(find_benchmark("1-2"), {{"N", 8}});
  CompiledProgram qcp(qs);
  int m1 = estimate_path_len(qcp, 50, 2.0, 7);
  int m2 = estimate_path_len(qcp, 50, 2.0, 7);
  EXPECT_EQ(m1, m2);  // deterministic per seed
  EXPECT_GT(m1, 8);
}

TEST(SymExec, AnnotatedProgramUsesNoSolverCalls) {
  Program p = build_benchmark(find_benchmark("1-2"), {{"N", 8}});
  CompiledProgram cp(p);
  SolverContext ctx(cp.symbols());
  Rng rng(9);
  PathString q = PathString::random(128, rng);
  PathOutcome out = execute(cp, q, MappingMode::kSkipUnsat, ctx);
  EXPECT_TRUE(out.sat);
  EXPECT_EQ(out.solver_calls, 0);
}
