#pragma once

// Expression trees shared by the program model, the execution engines and
// the constraint solver. Trees are immutable; constructor helpers fold
// operations whose operands are all constants and never rewrite anything
// containing a symbol, so "is constant" coincides with "mentions no input".

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace wca {

using Int = long long;

enum class ExprKind : std::uint8_t {
  kConst,
  kVar,        // program variable (by name) or solver symbol (by id)
  kArrayRead,  // name[lhs]
  kAdd,
  kSub,
  kMul,
  kLt,
  kLe,
  kEq,
  kNe,
  kAnd,
  kOr,
  kNot,
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  ExprKind kind;
  Int value = 0;       // kConst
  std::string name;    // kVar / kArrayRead display name
  int sym = -1;        // kVar: solver symbol id, -1 for program variables
  ExprPtr lhs, rhs;    // children; kNot and kArrayRead use lhs only
};

inline bool is_const(const ExprPtr& e) { return e->kind == ExprKind::kConst; }

inline bool is_bool_kind(ExprKind k) {
  switch (k) {
    case ExprKind::kLt:
    case ExprKind::kLe:
    case ExprKind::kEq:
    case ExprKind::kNe:
    case ExprKind::kAnd:
    case ExprKind::kOr:
    case ExprKind::kNot:
      return true;
    default:
      return false;
  }
}

namespace expr {

namespace detail {

inline ExprPtr make_const(Int v) {
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::kConst;
  e->value = v;
  return e;
}

}  // namespace detail

// Small-integer constants are pooled; they dominate interpreter traffic.
inline ExprPtr lit(Int v) {
  constexpr Int kPoolLo = -8, kPoolHi = 511;
  static const std::vector<ExprPtr> pool = [] {
    std::vector<ExprPtr> p;
    p.reserve(static_cast<size_t>(kPoolHi - kPoolLo + 1));
    for (Int i = kPoolLo; i <= kPoolHi; ++i) p.push_back(detail::make_const(i));
    return p;
  }();
  if (v >= kPoolLo && v <= kPoolHi) return pool[static_cast<size_t>(v - kPoolLo)];
  return detail::make_const(v);
}

inline ExprPtr var(std::string name) {
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::kVar;
  e->name = std::move(name);
  return e;
}

// Solver-space variable bound to input symbol `sid`.
inline ExprPtr sym(int sid, std::string display) {
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::kVar;
  e->sym = sid;
  e->name = std::move(display);
  return e;
}

inline ExprPtr aref(std::string array, ExprPtr index) {
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::kArrayRead;
  e->name = std::move(array);
  e->lhs = std::move(index);
  return e;
}

namespace detail {

inline ExprPtr binary(ExprKind k, ExprPtr a, ExprPtr b) {
  if (is_const(a) && is_const(b)) {
    Int x = a->value, y = b->value, r = 0;
    switch (k) {
      case ExprKind::kAdd: r = x + y; break;
      case ExprKind::kSub: r = x - y; break;
      case ExprKind::kMul: r = x * y; break;
      case ExprKind::kLt:  r = x < y; break;
      case ExprKind::kLe:  r = x <= y; break;
      case ExprKind::kEq:  r = x == y; break;
      case ExprKind::kNe:  r = x != y; break;
      case ExprKind::kAnd: r = (x != 0) && (y != 0); break;
      case ExprKind::kOr:  r = (x != 0) || (y != 0); break;
      default: throw std::logic_error("binary: bad kind");
    }
    return lit(r);
  }
  auto e = std::make_shared<Expr>();
  e->kind = k;
  e->lhs = std::move(a);
  e->rhs = std::move(b);
  return e;
}

}  // namespace detail

inline ExprPtr add(ExprPtr a, ExprPtr b) { return detail::binary(ExprKind::kAdd, std::move(a), std::move(b)); }
inline ExprPtr sub(ExprPtr a, ExprPtr b) { return detail::binary(ExprKind::kSub, std::move(a), std::move(b)); }
inline ExprPtr mul(ExprPtr a, ExprPtr b) { return detail::binary(ExprKind::kMul, std::move(a), std::move(b)); }
inline ExprPtr lt(ExprPtr a, ExprPtr b) { return detail::binary(ExprKind::kLt, std::move(a), std::move(b)); }
inline ExprPtr le(ExprPtr a, ExprPtr b) { return detail::binary(ExprKind::kLe, std::move(a), std::move(b)); }
inline ExprPtr eq(ExprPtr a, ExprPtr b) { return detail::binary(ExprKind::kEq, std::move(a), std::move(b)); }
inline ExprPtr ne(ExprPtr a, ExprPtr b) { return detail::binary(ExprKind::kNe, std::move(a), std::move(b)); }
inline ExprPtr land(ExprPtr a, ExprPtr b) { return detail::binary(ExprKind::kAnd, std::move(a), std::move(b)); }
inline ExprPtr lor(ExprPtr a, ExprPtr b) { return detail::binary(ExprKind::kOr, std::move(a), std::move(b)); }

inline ExprPtr lnot(ExprPtr a) {
  if (is_const(a)) return lit(a->value == 0 ? 1 : 0);
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::kNot;
  e->lhs = std::move(a);
  return e;
}

// Negation-normal form with a polarity flag. Comparisons flip instead of
// growing a kNot node, so the solver only ever sees And/Or over comparisons.
inline ExprPtr nnf(const ExprPtr& e, bool positive) {
  switch (e->kind) {
    case ExprKind::kConst:
      return lit(positive ? (e->value != 0) : (e->value == 0));
    case ExprKind::kNot:
      return nnf(e->lhs, !positive);
    case ExprKind::kAnd:
      return positive ? land(nnf(e->lhs, true), nnf(e->rhs, true))
                      : lor(nnf(e->lhs, false), nnf(e->rhs, false));
    case ExprKind::kOr:
      return positive ? lor(nnf(e->lhs, true), nnf(e->rhs, true))
                      : land(nnf(e->lhs, false), nnf(e->rhs, false));
    case ExprKind::kLt:
      return positive ? e : le(e->rhs, e->lhs);
    case ExprKind::kLe:
      return positive ? e : lt(e->rhs, e->lhs);
    case ExprKind::kEq:
      return positive ? e : ne(e->lhs, e->rhs);
    case ExprKind::kNe:
      return positive ? e : eq(e->lhs, e->rhs);
    default:
      // Integer-valued expression used as a condition; treat as e != 0.
      return positive ? ne(e, lit(0)) : eq(e, lit(0));
  }
}

}  // namespace expr

// Evaluates an expression under a symbol assignment. Booleans are 0/1.
// Used by tests and by the solver's model check; program-variable and
// array-read nodes are not meaningful here.
template <typename SymLookup>
Int eval_expr(const ExprPtr& e, SymLookup&& value_of_sym) {
  switch (e->kind) {
    case ExprKind::kConst: return e->value;
    case ExprKind::kVar:
      if (e->sym < 0) throw std::logic_error("eval_expr: unresolved variable " + e->name);
      return value_of_sym(e->sym);
    case ExprKind::kAdd: return eval_expr(e->lhs, value_of_sym) + eval_expr(e->rhs, value_of_sym);
    case ExprKind::kSub: return eval_expr(e->lhs, value_of_sym) - eval_expr(e->rhs, value_of_sym);
    case ExprKind::kMul: return eval_expr(e->lhs, value_of_sym) * eval_expr(e->rhs, value_of_sym);
    case ExprKind::kLt:  return eval_expr(e->lhs, value_of_sym) < eval_expr(e->rhs, value_of_sym);
    case ExprKind::kLe:  return eval_expr(e->lhs, value_of_sym) <= eval_expr(e->rhs, value_of_sym);
    case ExprKind::kEq:  return eval_expr(e->lhs, value_of_sym) == eval_expr(e->rhs, value_of_sym);
    case ExprKind::kNe:  return eval_expr(e->lhs, value_of_sym) != eval_expr(e->rhs, value_of_sym);
    case ExprKind::kAnd: return (eval_expr(e->lhs, value_of_sym) != 0) && (eval_expr(e->rhs, value_of_sym) != 0);
    case ExprKind::kOr:  return (eval_expr(e->lhs, value_of_sym) != 0) || (eval_expr(e->rhs, value_of_sym) != 0);
    case ExprKind::kNot: return eval_expr(e->lhs, value_of_sym) == 0;
    case ExprKind::kArrayRead:
      throw std::logic_error("eval_expr: unresolved array read " + e->name);
  }
  throw std::logic_error("eval_expr: bad kind");
}

// Infix rendering used by the text format and diagnostics.
inline std::string to_string(const ExprPtr& e);

namespace detail {

inline int precedence(ExprKind k) {
  switch (k) {
    case ExprKind::kOr: return 1;
    case ExprKind::kAnd: return 2;
    case ExprKind::kNot: return 3;
    case ExprKind::kLt:
    case ExprKind::kLe:
    case ExprKind::kEq:
    case ExprKind::kNe: return 4;
    case ExprKind::kAdd:
    case ExprKind::kSub: return 5;
    case ExprKind::kMul: return 6;
    default: return 7;
  }
}

inline std::string render(const ExprPtr& e, int parent_prec) {
  int prec = precedence(e->kind);
  std::string s;
  switch (e->kind) {
    case ExprKind::kConst: s = std::to_string(e->value); break;
    case ExprKind::kVar: s = e->name; break;
    case ExprKind::kArrayRead: s = e->name + "[" + render(e->lhs, 0) + "]"; break;
    case ExprKind::kNot: s = "not " + render(e->lhs, prec); break;
    default: {
      const char* op = nullptr;
      switch (e->kind) {
        case ExprKind::kAdd: op = " + "; break;
        case ExprKind::kSub: op = " - "; break;
        case ExprKind::kMul: op = " * "; break;
        case ExprKind::kLt: op = " < "; break;
        case ExprKind::kLe: op = " <= "; break;
        case ExprKind::kEq: op = " == "; break;
        case ExprKind::kNe: op = " != "; break;
        case ExprKind::kAnd: op = " and "; break;
        case ExprKind::kOr: op = " or "; break;
        default: throw std::logic_error("render: bad kind");
      }
      // Right child gets a stricter bound so serialization round-trips
      // through the left-associative parser unchanged.
      s = render(e->lhs, prec) + op + render(e->rhs, prec + 1);
      break;
    }
  }
  if (prec < parent_prec) return "(" + s + ")";
  return s;
}

}  // namespace detail

inline std::string to_string(const ExprPtr& e) { return detail::render(e, 0); }

}  // namespace wca
