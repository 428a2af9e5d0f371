#include <gtest/gtest.h>

#include <functional>
#include <random>

#include "wca/expr.hpp"
#include "wca/text_format.hpp"

using namespace wca;
using namespace wca::expr;

TEST(Expr, ConstantFolding) {
  EXPECT_EQ(add(lit(2), lit(3))->value, 5);
  EXPECT_EQ(mul(lit(4), lit(-2))->value, -8);
  EXPECT_EQ(lt(lit(1), lit(2))->value, 1);
  EXPECT_EQ(le(lit(3), lit(2))->value, 0);
  EXPECT_EQ(lnot(lit(0))->value, 1);
}

TEST(Expr, NoFoldingThroughSymbols) {
  ExprPtr x = sym(0, "x");
  // x - x and x < x stay symbolic: concreteness must mean "mentions no input"
  EXPECT_FALSE(is_const(sub(x, x)));
  EXPECT_FALSE(is_const(lt(x, x)));
  EXPECT_FALSE(is_const(add(x, lit(0))));
}

TEST(Expr, EvalUnderAssignment) {
  ExprPtr x = sym(0, "x"), y = sym(1, "y");
  ExprPtr e = land(lt(x, y), ne(add(x, lit(1)), y));
  auto val = [](int sid) { return sid == 0 ? 2 : 5; };
  EXPECT_EQ(eval_expr(e, val), 1);  // 2 < 5 and 3 != 5
  auto val2 = [](int sid) { return sid == 0 ? 4 : 5; };
  EXPECT_EQ(eval_expr(e, val2), 0);  // 4+1 == 5
}

TEST(Expr, NnfFlipsComparisons) {
  ExprPtr x = sym(0, "x"), y = sym(1, "y");
  ExprPtr n = nnf(lt(x, y), false);  // not(x < y) == y <= x
  EXPECT_EQ(n->kind, ExprKind::kLe);
  EXPECT_EQ(n->lhs->sym, 1);
  EXPECT_EQ(n->rhs->sym, 0);

  ExprPtr m = nnf(lnot(land(eq(x, y), lt(x, y))), true);  // or of negations
  EXPECT_EQ(m->kind, ExprKind::kOr);
  EXPECT_EQ(m->lhs->kind, ExprKind::kNe);
  EXPECT_EQ(m->rhs->kind, ExprKind::kLe);
}

TEST(Expr, NnfAgreesSemantically) {
  // property: nnf(e, pol) evaluates identically to pol ? e : !e
  std::mt19937_64 rng(7);
  std::function<ExprPtr(int)> gen = [&](int depth) -> ExprPtr {
    int pick = static_cast<int>(rng() % (depth > 2 ? 2 : 8));
    switch (pick) {
      case 0: return lit(static_cast<Int>(rng() % 7) - 3);
      case 1: return sym(static_cast<int>(rng() % 2), "v");
      case 2: return lnot(lt(gen(depth + 1), gen(depth + 1)));
      case 3: return land(le(gen(depth + 1), gen(depth + 1)), ne(gen(depth + 1), gen(depth + 1)));
      case 4: return lor(eq(gen(depth + 1), gen(depth + 1)), lt(gen(depth + 1), gen(depth + 1)));
      case 5: return add(gen(depth + 1), gen(depth + 1));
      case 6: return sub(gen(depth + 1), gen(depth + 1));
      default: return mul(lit(static_cast<Int>(rng() % 3)), gen(depth + 1));
    }
  };
  for (int iter = 0; iter < 200; ++iter) {
    ExprPtr cond = lt(gen(0), gen(0));
    bool pol = rng() % 2 == 0;
    ExprPtr n = nnf(cond, pol);
    for (Int a = -2; a <= 2; ++a) {
      for (Int b = -2; b <= 2; ++b) {
        auto val = [&](int sid) { return sid == 0 ? a : b; };
        Int direct = eval_expr(cond, val) != 0 ? 1 : 0;
        Int expect = pol ? direct : 1 - direct;
        EXPECT_EQ(eval_expr(n, val) != 0 ? 1 : 0, expect);
      }
    }
  }
}

TEST(Expr, ParseRenderRoundTrip) {
  const char* samples[] = {
      "x + 1",
      "a[i + 1] * 3 - b",
      "x < y and not (y == z or z != 0)",
      "(x + y) * (x - y)",
      "0 - 5 + x",
  };
  for (const char* s : samples) {
    ExprPtr e = textfmt::parse_expr(s);
    std::string printed = to_string(e);
    ExprPtr e2 = textfmt::parse_expr(printed);
    EXPECT_EQ(to_string(e2), printed) << "source: " << s;
  }
}

TEST(Expr, ParsePrecedence) {
  ExprPtr e = textfmt::parse_expr("1 + 2 * 3");
  EXPECT_TRUE(is_const(e));
  EXPECT_EQ(e->value, 7);
  ExprPtr g = textfmt::parse_expr("x > 1");  // sugar for 1 < x
  EXPECT_EQ(g->kind, ExprKind::kLt);
  EXPECT_EQ(g->lhs->value, 1);
}
