#include <gtest/gtest.h>

#include "testutil.hpp"
#include "wca/bench.hpp"
#include "wca/text_format.hpp"

using namespace wca;

TEST(Registry, FifteenEntries) {
  const auto& reg = registry();
  ASSERT_EQ(reg.size(), 15u);
  const char* ids[] = {"1-1", "1-2", "1-3", "1-4", "1-5", "1-6", "1-7", "1-8",
                       "2-1", "3-1", "3-2", "3-3", "3-4", "3-5", "3-6"};
  for (const char* id : ids) EXPECT_NO_THROW(find_benchmark(id));
  EXPECT_NO_THROW(find_benchmark("QuickSort"));
  EXPECT_THROW(find_benchmark("nope"), NotFound);
}

TEST(Registry, KnownMaxValues) {
  EXPECT_EQ(find_benchmark("1-2").known_max({{"N", 128}}).value(), 8255);
  EXPECT_EQ(find_benchmark("1-2").known_max({{"N", 8}}).value(), 35);
  EXPECT_EQ(find_benchmark("1-2").known_max({{"N", 16}}).value(), 135);
  EXPECT_EQ(find_benchmark("1-3").known_max({{"N", 128}}).value(), 649);
  EXPECT_EQ(find_benchmark("3-1").known_max({{"N", 100}}).value(), 100);
  EXPECT_EQ(find_benchmark("3-2").known_max({{"N", 100}}).value(), 50);
  EXPECT_EQ(find_benchmark("3-4").known_max({{"N", 100}}).value(), 600);
  EXPECT_EQ(find_benchmark("1-1").known_max({{"N", 128}}).value(), 8128);
  EXPECT_EQ(find_benchmark("2-1").known_max({{"N", 64}}).value(), 4095);
  EXPECT_EQ(find_benchmark("1-8").known_max({{"N", 8}, {"P", 13}}).value(), 28);
  EXPECT_EQ(find_benchmark("1-4").known_max({{"N", 8}}).value(), 28);
  EXPECT_FALSE(find_benchmark("1-6").known_max({{"N", 8}}).has_value());
  EXPECT_FALSE(find_benchmark("1-7").known_max({{"N", 8}}).has_value());
}

TEST(Registry, EveryProgramValidates) {
  for (const auto& e : registry()) {
    Program p = build_benchmark(e);
    ValidationReport rep = validate(p);
    EXPECT_TRUE(rep.ok()) << e.id;
    for (const auto& issue : rep.issues) EXPECT_TRUE(issue.warning) << e.id << ": " << issue.what;
  }
}

TEST(Registry, WitnessesRealizeKnownMaxAtDeskScale) {
  for (const auto& e : registry()) {
    ScaleMap scale = e.default_scale;
    auto maybe_max = e.known_max(scale);
    if (!maybe_max) continue;
    auto maybe_wit = e.witness(scale);
    ASSERT_TRUE(maybe_wit.has_value()) << e.id << " has known_max but no stored witness";
    Program p = e.build(scale);
    Trace t = run_concrete(CompiledProgram(p), *maybe_wit);
    EXPECT_EQ(t.total_cost, *maybe_max) << e.id;
  }
}

TEST(Registry, KnownMaxConfirmedByBruteForceAtTinyScale) {
  // brute force over inputs where the space is small, else over paths
  struct Case {
    const char* id;
    ScaleMap scale;
    bool over_inputs;
  };
  const Case cases[] = {
      {"1-1", {{"N", 4}}, true},          {"1-2", {{"N", 4}}, true},
      {"1-3", {{"N", 4}}, true},          {"1-5", {{"N", 4}}, true},
      {"2-1", {{"N", 4}}, true},          {"3-1", {{"N", 6}}, true},
      {"3-2", {{"N", 6}}, true},          {"3-3", {{"N", 6}}, true},
      {"3-4", {{"N", 6}}, true},          {"1-8", {{"N", 2}, {"P", 3}}, true},
      {"1-4", {{"N", 3}}, false},         {"3-5", {{"N", 3}}, false},
      {"3-6", {{"N", 3}}, false},
  };
  for (const auto& c : cases) {
    const BenchmarkEntry& e = find_benchmark(c.id);
    ScaleMap scale = merged_scale(e, c.scale);
    auto maybe_max = e.known_max(scale);
    ASSERT_TRUE(maybe_max.has_value()) << c.id;
    Program p = e.build(scale);
    CompiledProgram cp(p);
    Int brute;
    if (c.over_inputs) {
      ASSERT_LE(oracle::input_space_size(cp.symbols(), 1000000), 1000000) << c.id;
      brute = oracle::max_over_inputs(cp).first;
    } else {
      auto r = oracle::enumerate_paths(cp, 1000000);
      ASSERT_FALSE(r.capped) << c.id;
      brute = r.max_cost;
    }
    EXPECT_EQ(brute, *maybe_max) << c.id << " at tiny scale";
  }
}

TEST(Registry, AlwaysSatAnnotationsHoldExhaustively) {
  // every annotated branch must have both polarities satisfiable at every
  // reachable prefix; checked by exhaustive path enumeration at small scale
  struct Case {
    const char* id;
    ScaleMap scale;
  };
  const Case cases[] = {
      {"1-1", {{"N", 5}}}, {"1-2", {{"N", 5}}}, {"1-3", {{"N", 5}}}, {"1-5", {{"N", 5}}},
      {"2-1", {{"N", 4}}}, {"3-2", {{"N", 8}}}, {"3-3", {{"N", 8}}}, {"3-4", {{"N", 8}}},
      {"3-5", {{"N", 3}}}, {"3-6", {{"N", 3}}},
  };
  for (const auto& c : cases) {
    const BenchmarkEntry& e = find_benchmark(c.id);
    Program p = build_benchmark(e, c.scale);
    bool has_annotation = false;
    for (const auto& s : p.statements) has_annotation |= s.always_sat;
    ASSERT_TRUE(has_annotation) << c.id << " expected to carry annotations";
    auto r = oracle::enumerate_paths(CompiledProgram(p), 2000000);
    ASSERT_FALSE(r.capped) << c.id;
    EXPECT_FALSE(r.annotation_violated)
        << c.id << ": annotated branch " << r.violated_stmt << " has a forced side";
  }
}

TEST(Registry, UnannotatedEntriesMatchSolverDependence) {
  // the five entries whose branches can be forced carry no annotations
  const char* ids[] = {"1-4", "1-6", "1-7", "1-8", "3-1"};
  for (const char* id : ids) {
    Program p = build_benchmark(find_benchmark(id));
    for (const auto& s : p.statements) EXPECT_FALSE(s.always_sat) << id;
  }
}

TEST(Registry, TextExportRoundTrips) {
  for (const auto& e : registry()) {
    ScaleMap tiny = e.default_scale;
    tiny["N"] = std::min<Int>(tiny["N"], 4);
    Program p = e.build(tiny);
    std::string text = serialize_program(p);
    Program p2 = parse_program(text);
    EXPECT_EQ(serialize_program(p2), text) << e.id;
    // behavioral equivalence on a random input
    CompiledProgram cp1(p), cp2(p2);
    Rng rng(1);
    ConcreteInput in = random_input(cp1.symbols(), rng);
    EXPECT_EQ(run_concrete(cp1, in).total_cost, run_concrete(cp2, in).total_cost) << e.id;
  }
}

TEST(Registry, UnsupportedScalesThrow) {
  EXPECT_THROW(build_benchmark(find_benchmark("1-2"), {{"N", 0}}), Unsupported);
  EXPECT_THROW(build_benchmark(find_benchmark("1-2"), {{"N", 100000}}), Unsupported);
  EXPECT_THROW(build_benchmark(find_benchmark("1-8"), {{"P", 1}}), Unsupported);
  EXPECT_THROW(find_benchmark("1-4").build({{"P", 13}}), Unsupported);  // missing N
}

TEST(Registry, DijkstraWitnessStructure) {
  // the stored worst input relaxes every scanned pair exactly once
  const BenchmarkEntry& e = find_benchmark("1-4");
  for (Int n : {3, 4, 6, 8}) {
    ScaleMap scale{{"N", n}};
    auto wit = e.witness(scale);
    ASSERT_TRUE(wit.has_value());
    Program p = e.build(scale);
    Trace t = run_concrete(CompiledProgram(p), *wit);
    EXPECT_EQ(t.total_cost, n * (n - 1) / 2) << "N=" << n;
  }
}

TEST(Registry, HeapMaxMatchesDepthSum) {
  // independent oracle: sum over k of floor(log2(k))
  auto depth_sum = [](Int n) {
    Int total = 0;
    for (Int k = 1; k <= n; ++k) {
      Int d = 0, v = k;
      while (v > 1) {
        v /= 2;
        ++d;
      }
      total += d;
    }
    return total;
  };
  const BenchmarkEntry& e = find_benchmark("1-3");
  for (Int n : {1, 2, 5, 16, 128}) EXPECT_EQ(e.known_max({{"N", n}}).value(), depth_sum(n));
}
