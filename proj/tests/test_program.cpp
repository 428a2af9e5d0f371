#include <gtest/gtest.h>

#include "wca/builder.hpp"
#include "wca/program.hpp"
#include "wca/text_format.hpp"

using namespace wca;
using namespace wca::expr;

namespace {

Program minimal_halt() {
  ProgramBuilder b("halt_only");
  b.halt();
  return b.finish();
}

}  // namespace

TEST(Validate, MinimalProgramIsClean) {
  ValidationReport rep = validate(minimal_halt());
  EXPECT_TRUE(rep.ok());
  EXPECT_TRUE(rep.empty());
}

TEST(Validate, BranchArity) {
  Program p = minimal_halt();
  Statement s;
  s.id = 2;
  s.kind = StmtKind::kBranch;
  s.expr = lt(lit(0), lit(1));
  s.out = {1};  // one successor only
  p.statements.push_back(s);
  ValidationReport rep = validate(p);
  EXPECT_FALSE(rep.ok());
  bool found = false;
  for (const auto& i : rep.issues) found |= i.what.find("arity") != std::string::npos;
  EXPECT_TRUE(found);
}

TEST(Validate, UnreachableStatementWarns) {
  Program p = minimal_halt();
  Statement s;
  s.id = 9;
  s.kind = StmtKind::kAddCost;
  s.expr = lit(1);
  s.out = {1};
  p.statements.push_back(s);
  ValidationReport rep = validate(p);
  EXPECT_TRUE(rep.ok()) << "unreachable is a warning, not an error";
  ASSERT_EQ(rep.issues.size(), 1u);
  EXPECT_TRUE(rep.issues[0].warning);
  EXPECT_EQ(rep.issues[0].stmt_id, 9);
  EXPECT_EQ(rep.issues[0].what, "unreachable");
}

TEST(Validate, DistinctBranchSuccessors) {
  ProgramBuilder b("p");
  b.input_scalar("x", 0, 1);
  auto out = b.new_label();
  b.branch_to(lt(lit(0), var("x")), out, out);
  b.bind(out);
  b.halt();
  ValidationReport rep = validate(b.finish());
  EXPECT_FALSE(rep.ok());
}

TEST(Validate, GuardMustBeBoolean) {
  Program p = minimal_halt();
  Statement s;
  s.id = 2;
  s.kind = StmtKind::kBranch;
  s.expr = add(lit(1), lit(1));  // integer-typed guard
  s.out = {1, 2};
  p.statements.push_back(s);
  EXPECT_FALSE(validate(p).ok());
}

TEST(Successors, DeclaredOrder) {
  ProgramBuilder b("p");
  b.input_scalar("x", 0, 5);
  auto on_false = b.new_label(), on_true = b.new_label();
  b.branch_to(lt(lit(2), var("x")), on_false, on_true);
  b.bind(on_false);
  b.assign("y", lit(1));
  b.halt();
  b.bind(on_true);
  b.halt();
  Program p = b.finish();

  EXPECT_TRUE(validate(p).ok());
  auto succ = successors(p, p.entry);
  ASSERT_EQ(succ.size(), 2u);
  // index 0 is the false successor, index 1 the true successor
  EXPECT_EQ(succ[0], 2);
  EXPECT_EQ(succ[1], 4);
  EXPECT_EQ(successors(p, 2).size(), 1u);
  EXPECT_TRUE(successors(p, 4).empty());
  EXPECT_THROW(successors(p, 99), NotFound);
}

TEST(TextFormat, RoundTrip) {
  const std::string src =
      "program demo\n"
      "param N = 4\n"
      "input A array[N] int[1, 4]\n"
      "input x int[0, 9]\n"
      "local buf array[8]\n"
      "1 assign i := 0 -> 2\n"
      "2 branch i < 4 -> 6,3\n"
      "3 add_cost A[i] * 2 -> 4\n"
      "4 assign buf[i] := A[i] + x -> 5\n"
      "5 assign i := i + 1 -> 2\n"
      "6 halt\n";
  Program p = parse_program(src);
  EXPECT_TRUE(validate(p).ok());
  std::string text = serialize_program(p);
  Program p2 = parse_program(text);
  EXPECT_EQ(serialize_program(p2), text);
  EXPECT_EQ(p2.statements.size(), p.statements.size());
  EXPECT_EQ(p2.scale_params.at("N"), 4);
  EXPECT_EQ(p2.input_spec.arrays.at(0).length, 4);
  EXPECT_EQ(p2.input_spec.arrays.at(0).length_param, "N");
}

TEST(TextFormat, AnnotationAndCall) {
  const std::string src =
      "program callee\n"
      "input x int[0, 3]\n"
      "1 call @4 -> 2\n"
      "2 branch x == 0 -> 3,3 @always_sat\n"  // intentionally invalid successors
      "3 halt\n"
      "4 return -> 2\n";
  Program p = parse_program(src);
  EXPECT_TRUE(p.statements[1].always_sat);
  EXPECT_EQ(p.statements[0].call_target, 4);
  EXPECT_FALSE(validate(p).ok());  // duplicate branch successors
}

TEST(TextFormat, RejectsGarbage) {
  EXPECT_THROW(parse_program("program x\n1 frobnicate -> 2\n"), ParseError);
  EXPECT_THROW(parse_program("1 halt\n"), ParseError);  // missing header
  EXPECT_THROW(parse_program("program x\n1 branch y < -> 2,3\n"), ParseError);
}

TEST(Builder, FallthroughAndLabels) {
  ProgramBuilder b("loop");
  b.input_scalar("x", 0, 7);
  auto top = b.new_label(), done = b.new_label();
  b.assign("i", lit(0));
  b.bind(top);
  b.branch_false_to(lt(var("i"), lit(3)), done);
  b.assign("i", add(var("i"), lit(1)));
  b.jump(top);
  b.bind(done);
  b.halt();
  Program p = b.finish();
  EXPECT_TRUE(validate(p).ok());
  // branch false -> halt, true falls through to the increment
  const Statement& br = p.stmt(2);
  EXPECT_EQ(br.out[0], 4);
  EXPECT_EQ(br.out[1], 3);
  EXPECT_EQ(p.stmt(3).out[0], 2);
}
