#pragma once

// Complete satisfiability over bounded integer domains: interval propagation
// with backtracking search, ascending value order. Conditions are pushed and
// popped incrementally; solving is lazy (only check_sat does work). A cached
// witness from the previous solve is tried first, which makes the common
// "extend a satisfiable prefix by one condition" pattern cheap.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "wca/expr.hpp"
#include "wca/program.hpp"

namespace wca {

struct StackUnderflow : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct IllegalState : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct SolverBudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Input symbols: one per scalar input, one per array element.
class SymbolTable {
 public:
  struct Info {
    std::string display;
    Int lo = 0, hi = 0;
  };

  static SymbolTable from_spec(const InputSpec& spec) {
    SymbolTable t;
    for (const auto& s : spec.scalars) {
      t.scalar_sym_[s.name] = static_cast<int>(t.symbols_.size());
      t.symbols_.push_back({s.name, s.lo, s.hi});
    }
    for (const auto& a : spec.arrays) {
      std::vector<int> ids;
      ids.reserve(a.length);
      for (Int i = 0; i < a.length; ++i) {
        ids.push_back(static_cast<int>(t.symbols_.size()));
        t.symbols_.push_back({a.name + "[" + std::to_string(i) + "]", a.lo, a.hi});
      }
      t.array_sym_[a.name] = std::move(ids);
    }
    return t;
  }

  int count() const { return static_cast<int>(symbols_.size()); }
  const Info& info(int sid) const { return symbols_.at(sid); }
  const std::map<std::string, int>& scalars() const { return scalar_sym_; }
  const std::map<std::string, std::vector<int>>& arrays() const { return array_sym_; }

 private:
  std::vector<Info> symbols_;
  std::map<std::string, int> scalar_sym_;
  std::map<std::string, std::vector<int>> array_sym_;
};

struct Model {
  std::vector<Int> values;  // indexed by symbol id
  Int operator[](int sid) const { return values.at(sid); }
};

struct SolverStats {
  long long sat_calls = 0;
  long long unsat_results = 0;
  long long witness_hits = 0;
  long long propagation_steps = 0;
  std::int64_t solve_time_ns = 0;

  void merge(const SolverStats& o) {
    sat_calls += o.sat_calls;
    unsat_results += o.unsat_results;
    witness_hits += o.witness_hits;
    propagation_steps += o.propagation_steps;
    solve_time_ns += o.solve_time_ns;
  }
};

namespace ivl {

// Sentinels stay far from Int limits so interval arithmetic cannot wrap.
constexpr Int kMin = -(1LL << 60);
constexpr Int kMax = (1LL << 60);

struct Interval {
  Int lo = kMin, hi = kMax;
  bool empty() const { return lo > hi; }
  bool singleton() const { return lo == hi; }
  bool contains(Int v) const { return lo <= v && v <= hi; }
};

inline Interval intersect(Interval a, Interval b) {
  return {std::max(a.lo, b.lo), std::min(a.hi, b.hi)};
}

inline Interval iadd(Interval a, Interval b) { return {a.lo + b.lo, a.hi + b.hi}; }
inline Interval isub(Interval a, Interval b) { return {a.lo - b.hi, a.hi - b.lo}; }

inline Interval imul(Interval a, Interval b) {
  Int c[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
  return {*std::min_element(c, c + 4), *std::max_element(c, c + 4)};
}

inline Int floor_div(Int a, Int b) {
  Int q = a / b, r = a % b;
  return (r != 0 && ((r < 0) != (b < 0))) ? q - 1 : q;
}

inline Int ceil_div(Int a, Int b) {
  Int q = a / b, r = a % b;
  return (r != 0 && ((r < 0) == (b < 0))) ? q + 1 : q;
}

// {x : c*x ∈ I}
inline Interval divide(Interval I, Int c) {
  if (c == 0) return I.contains(0) ? Interval{kMin, kMax} : Interval{1, 0};
  if (c > 0) return {ceil_div(I.lo, c), floor_div(I.hi, c)};
  return {ceil_div(I.hi, c), floor_div(I.lo, c)};
}

}  // namespace ivl

class SolverContext {
 public:
  explicit SolverContext(const SymbolTable& syms) : syms_(&syms) {
    base_.reserve(syms.count());
    for (int i = 0; i < syms.count(); ++i)
      base_.push_back({syms.info(i).lo, syms.info(i).hi});
  }

  void push(ExprPtr condition) {
    Entry e;
    e.cond = expr::nnf(condition, true);
    collect_vars(e.cond, e.vars);
    stack_.push_back(std::move(e));
    dirty_ = true;
  }

  void pop() {
    if (stack_.empty()) throw StackUnderflow("pop on empty condition stack");
    stack_.pop_back();
    dirty_ = true;
  }

  size_t depth() const { return stack_.size(); }

  enum class Result { kSat, kUnsat };

  Result check_sat() {
    auto t0 = std::chrono::steady_clock::now();
    ++stats_.sat_calls;
    steps_ = 0;
    Result r;
    if (witness_ && witness_satisfies_stack()) {
      ++stats_.witness_hits;
      r = Result::kSat;
    } else {
      r = solve();
    }
    if (r == Result::kUnsat) ++stats_.unsat_results;
    stats_.propagation_steps += steps_;
    stats_.solve_time_ns +=
        std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() - t0)
            .count();
    last_result_ = r;
    dirty_ = false;
    return r;
  }

  // Witness of the last successful check_sat. Unconstrained symbols sit at
  // their domain lower bound.
  Model get_model() const {
    if (dirty_ || last_result_ != Result::kSat || !witness_)
      throw IllegalState("get_model without a preceding satisfiable check_sat");
    return Model{*witness_};
  }

  // Maximum of a (linear) integer objective over the current conjunction,
  // by binary search on "objective >= b". Context must be satisfiable.
  std::pair<Int, Model> maximize(const ExprPtr& objective) {
    if (check_sat() != Result::kSat) throw IllegalState("maximize on unsatisfiable context");
    std::vector<Int> best = *witness_;
    Int lo = eval_expr(objective, [&](int sid) { return best[static_cast<size_t>(sid)]; });
    Int hi = objective_upper_bound(objective);
    while (lo < hi) {
      Int mid = lo + (hi - lo + 1) / 2;
      push(expr::le(expr::lit(mid), objective));
      bool sat = check_sat() == Result::kSat;
      if (sat) {
        best = *witness_;
        lo = eval_expr(objective, [&](int sid) { return best[static_cast<size_t>(sid)]; });
      } else {
        hi = mid - 1;
      }
      pop();
    }
    witness_ = best;
    last_result_ = Result::kSat;
    dirty_ = false;
    return {lo, Model{best}};
  }

  // QF_LIA problem text: declarations, domain bounds, the condition stack
  // and a final (check-sat). Byte-stable for identical contexts.
  std::string export_smtlib() const {
    std::ostringstream out;
    out << "(set-logic QF_LIA)\n";
    for (int i = 0; i < syms_->count(); ++i)
      out << "(declare-const " << smt_symbol(syms_->info(i).display) << " Int)\n";
    for (int i = 0; i < syms_->count(); ++i) {
      const auto& s = syms_->info(i);
      out << "(assert (>= " << smt_symbol(s.display) << " " << smt_int(s.lo) << "))\n";
      out << "(assert (<= " << smt_symbol(s.display) << " " << smt_int(s.hi) << "))\n";
    }
    for (const auto& e : stack_) out << "(assert " << smt_expr(e.cond) << ")\n";
    out << "(check-sat)\n";
    return out.str();
  }

  const SolverStats& stats() const { return stats_; }
  const SymbolTable& symbols() const { return *syms_; }
  long long budget() const { return budget_; }
  void set_budget(long long steps) { budget_ = steps; }

  // Drops all conditions; statistics and the witness cache survive.
  void reset() {
    stack_.clear();
    dirty_ = true;
  }

 private:
  struct Entry {
    ExprPtr cond;
    std::vector<int> vars;
  };

  static void collect_vars(const ExprPtr& e, std::vector<int>& out) {
    if (e->kind == ExprKind::kVar) {
      if (e->sym < 0) throw IllegalState("condition contains unresolved variable " + e->name);
      if (std::find(out.begin(), out.end(), e->sym) == out.end()) out.push_back(e->sym);
      return;
    }
    if (e->lhs) collect_vars(e->lhs, out);
    if (e->rhs) collect_vars(e->rhs, out);
  }

  bool witness_satisfies_stack() const {
    const auto& w = *witness_;
    for (const auto& e : stack_) {
      if (eval_expr(e.cond, [&](int sid) { return w[static_cast<size_t>(sid)]; }) == 0)
        return false;
    }
    return true;
  }

  void bump() {
    if (++steps_ > budget_)
      throw SolverBudgetExceeded("propagation step budget exceeded (" + std::to_string(budget_) +
                                 ")");
  }

  using Interval = ivl::Interval;
  using Doms = std::vector<Interval>;

  Interval ieval(const ExprPtr& e, const Doms& dom) {
    bump();
    switch (e->kind) {
      case ExprKind::kConst: return {e->value, e->value};
      case ExprKind::kVar: return dom[static_cast<size_t>(e->sym)];
      case ExprKind::kAdd: return ivl::iadd(ieval(e->lhs, dom), ieval(e->rhs, dom));
      case ExprKind::kSub: return ivl::isub(ieval(e->lhs, dom), ieval(e->rhs, dom));
      case ExprKind::kMul: return ivl::imul(ieval(e->lhs, dom), ieval(e->rhs, dom));
      case ExprKind::kLt: {
        Interval a = ieval(e->lhs, dom), b = ieval(e->rhs, dom);
        if (a.hi < b.lo) return {1, 1};
        if (a.lo >= b.hi) return {0, 0};
        return {0, 1};
      }
      case ExprKind::kLe: {
        Interval a = ieval(e->lhs, dom), b = ieval(e->rhs, dom);
        if (a.hi <= b.lo) return {1, 1};
        if (a.lo > b.hi) return {0, 0};
        return {0, 1};
      }
      case ExprKind::kEq: {
        Interval a = ieval(e->lhs, dom), b = ieval(e->rhs, dom);
        if (a.singleton() && b.singleton() && a.lo == b.lo) return {1, 1};
        if (ivl::intersect(a, b).empty()) return {0, 0};
        return {0, 1};
      }
      case ExprKind::kNe: {
        Interval a = ieval(e->lhs, dom), b = ieval(e->rhs, dom);
        if (a.singleton() && b.singleton() && a.lo == b.lo) return {0, 0};
        if (ivl::intersect(a, b).empty()) return {1, 1};
        return {0, 1};
      }
      case ExprKind::kAnd: {
        Interval a = ieval(e->lhs, dom), b = ieval(e->rhs, dom);
        return {std::min({a.lo, b.lo}), std::min(a.hi, b.hi)};
      }
      case ExprKind::kOr: {
        Interval a = ieval(e->lhs, dom), b = ieval(e->rhs, dom);
        return {std::max(a.lo, b.lo), std::max(a.hi, b.hi)};
      }
      case ExprKind::kNot: {
        Interval a = ieval(e->lhs, dom);
        return {a.hi != 0 ? 0 : 1, a.lo != 0 ? 0 : 1};
      }
      case ExprKind::kArrayRead:
        throw IllegalState("array read reached the solver");
    }
    throw IllegalState("ieval: bad kind");
  }

  // Narrows the domains so that `e` can only take values inside I.
  // Returns false on a proven conflict; never removes a feasible value.
  bool force_range(const ExprPtr& e, Interval I, Doms& dom, bool& changed) {
    bump();
    switch (e->kind) {
      case ExprKind::kConst:
        return I.contains(e->value);
      case ExprKind::kVar: {
        Interval& d = dom[static_cast<size_t>(e->sym)];
        Interval nd = ivl::intersect(d, I);
        if (nd.empty()) return false;
        if (nd.lo != d.lo || nd.hi != d.hi) {
          d = nd;
          changed = true;
        }
        return true;
      }
      case ExprKind::kAdd: {
        Interval a = ieval(e->lhs, dom), b = ieval(e->rhs, dom);
        if (ivl::intersect(ivl::iadd(a, b), I).empty()) return false;
        return force_range(e->lhs, ivl::isub(I, b), dom, changed) &&
               force_range(e->rhs, ivl::isub(I, a), dom, changed);
      }
      case ExprKind::kSub: {
        Interval a = ieval(e->lhs, dom), b = ieval(e->rhs, dom);
        if (ivl::intersect(ivl::isub(a, b), I).empty()) return false;
        // a - b ∈ I  =>  a ∈ I + b,  b ∈ a - I
        return force_range(e->lhs, ivl::iadd(I, b), dom, changed) &&
               force_range(e->rhs, ivl::isub(a, I), dom, changed);
      }
      case ExprKind::kMul: {
        Interval m = ieval(e, dom);
        if (ivl::intersect(m, I).empty()) return false;
        if (is_const(e->lhs)) return force_range(e->rhs, ivl::divide(I, e->lhs->value), dom, changed);
        if (is_const(e->rhs)) return force_range(e->lhs, ivl::divide(I, e->rhs->value), dom, changed);
        return true;  // nonlinear product: interval check only
      }
      default: {
        // boolean-valued subexpression: no pruning through it
        Interval v = ieval(e, dom);
        return !ivl::intersect(v, I).empty();
      }
    }
  }

  bool assert_cond(const ExprPtr& e, Doms& dom, bool& changed) {
    bump();
    switch (e->kind) {
      case ExprKind::kConst:
        return e->value != 0;
      case ExprKind::kAnd:
        return assert_cond(e->lhs, dom, changed) && assert_cond(e->rhs, dom, changed);
      case ExprKind::kOr: {
        Interval a = ieval(e->lhs, dom);
        if (a.hi == 0) return assert_cond(e->rhs, dom, changed);
        Interval b = ieval(e->rhs, dom);
        if (b.hi == 0) return assert_cond(e->lhs, dom, changed);
        return true;  // both sides open: no pruning
      }
      case ExprKind::kNot: {
        Interval a = ieval(e->lhs, dom);
        return a.lo == 0;  // NNF leaves no Not; be conservative if one appears
      }
      case ExprKind::kLt: {
        Interval a = ieval(e->lhs, dom), b = ieval(e->rhs, dom);
        return force_range(e->lhs, {ivl::kMin, b.hi - 1}, dom, changed) &&
               force_range(e->rhs, {a.lo + 1, ivl::kMax}, dom, changed);
      }
      case ExprKind::kLe: {
        Interval a = ieval(e->lhs, dom), b = ieval(e->rhs, dom);
        return force_range(e->lhs, {ivl::kMin, b.hi}, dom, changed) &&
               force_range(e->rhs, {a.lo, ivl::kMax}, dom, changed);
      }
      case ExprKind::kEq: {
        Interval a = ieval(e->lhs, dom), b = ieval(e->rhs, dom);
        Interval m = ivl::intersect(a, b);
        if (m.empty()) return false;
        return force_range(e->lhs, m, dom, changed) && force_range(e->rhs, m, dom, changed);
      }
      case ExprKind::kNe: {
        Interval a = ieval(e->lhs, dom), b = ieval(e->rhs, dom);
        if (a.singleton() && b.singleton() && a.lo == b.lo) return false;
        bool ok = true;
        if (b.singleton()) {
          if (a.lo == b.lo) ok = force_range(e->lhs, {a.lo + 1, a.hi}, dom, changed);
          else if (a.hi == b.lo) ok = force_range(e->lhs, {a.lo, a.hi - 1}, dom, changed);
        }
        if (!ok) return false;
        if (a.singleton()) {
          if (b.lo == a.lo) ok = force_range(e->rhs, {b.lo + 1, b.hi}, dom, changed);
          else if (b.hi == a.lo) ok = force_range(e->rhs, {b.lo, b.hi - 1}, dom, changed);
        }
        return ok;
      }
      default: {
        Interval v = ieval(e, dom);
        return v.hi != 0;
      }
    }
  }

  bool propagate(Doms& dom) {
    bool changed = true;
    int rounds = 0;
    while (changed && rounds++ < 64) {
      changed = false;
      for (const auto& e : stack_)
        if (!assert_cond(e.cond, dom, changed)) return false;
    }
    return true;
  }

  Result solve() {
    Doms dom = base_;
    if (!propagate(dom)) return Result::kUnsat;
    if (search(dom)) {
      std::vector<Int> w(dom.size());
      for (size_t i = 0; i < dom.size(); ++i) w[i] = dom[i].lo;
      witness_ = std::move(w);
      return Result::kSat;
    }
    return Result::kUnsat;
  }

  // On success leaves `dom` as a box whose every point satisfies the stack.
  bool search(Doms& dom) {
    // find an undecided condition and a branching variable inside it
    int branch_var = -1;
    Int best_size = 0;
    for (const auto& e : stack_) {
      Interval v = ieval(e.cond, dom);
      if (v.lo == 1) continue;  // definitely true
      for (int sid : e.vars) {
        const Interval& d = dom[static_cast<size_t>(sid)];
        if (d.singleton()) continue;
        Int size = d.hi - d.lo + 1;
        if (branch_var == -1 || size < best_size ||
            (size == best_size && sid < branch_var)) {
          branch_var = sid;
          best_size = size;
        }
      }
      if (branch_var == -1) {
        // undecided condition with all variables fixed cannot happen:
        // interval evaluation decides every comparison over singletons
        throw IllegalState("solver: undecided condition over fixed variables");
      }
    }
    if (branch_var == -1) return true;  // every condition definitely true

    Interval range = dom[static_cast<size_t>(branch_var)];
    for (Int v = range.lo; v <= range.hi; ++v) {
      bump();
      Doms child = dom;
      child[static_cast<size_t>(branch_var)] = {v, v};
      if (!propagate(child)) continue;
      if (search(child)) {
        dom = std::move(child);
        return true;
      }
    }
    return false;
  }

  Int objective_upper_bound(const ExprPtr& objective) {
    Doms dom = base_;
    return ieval(objective, dom).hi;
  }

  static std::string smt_symbol(const std::string& name) {
    bool plain = !name.empty() && (std::isalpha(static_cast<unsigned char>(name[0])) || name[0] == '_');
    for (char c : name)
      plain = plain && (std::isalnum(static_cast<unsigned char>(c)) || c == '_');
    return plain ? name : "|" + name + "|";
  }

  static std::string smt_int(Int v) {
    if (v < 0) return "(- " + std::to_string(-v) + ")";
    return std::to_string(v);
  }

  static std::string smt_expr(const ExprPtr& e) {
    switch (e->kind) {
      case ExprKind::kConst: return smt_int(e->value);
      case ExprKind::kVar: return smt_symbol(e->name);
      case ExprKind::kAdd: return "(+ " + smt_expr(e->lhs) + " " + smt_expr(e->rhs) + ")";
      case ExprKind::kSub: return "(- " + smt_expr(e->lhs) + " " + smt_expr(e->rhs) + ")";
      case ExprKind::kMul: return "(* " + smt_expr(e->lhs) + " " + smt_expr(e->rhs) + ")";
      case ExprKind::kLt: return "(< " + smt_expr(e->lhs) + " " + smt_expr(e->rhs) + ")";
      case ExprKind::kLe: return "(<= " + smt_expr(e->lhs) + " " + smt_expr(e->rhs) + ")";
      case ExprKind::kEq: return "(= " + smt_expr(e->lhs) + " " + smt_expr(e->rhs) + ")";
      case ExprKind::kNe: return "(not (= " + smt_expr(e->lhs) + " " + smt_expr(e->rhs) + "))";
      case ExprKind::kAnd: return "(and " + smt_expr(e->lhs) + " " + smt_expr(e->rhs) + ")";
      case ExprKind::kOr: return "(or " + smt_expr(e->lhs) + " " + smt_expr(e->rhs) + ")";
      case ExprKind::kNot: return "(not " + smt_expr(e->lhs) + ")";
      case ExprKind::kArrayRead: throw IllegalState("array read reached the SMT-LIB export");
    }
    throw IllegalState("smt_expr: bad kind");
  }

  const SymbolTable* syms_;
  Doms base_;
  std::vector<Entry> stack_;
  std::optional<std::vector<Int>> witness_;
  Result last_result_ = Result::kUnsat;
  bool dirty_ = true;
  long long budget_ = 10'000'000;
  long long steps_ = 0;
  SolverStats stats_;
};

}  // namespace wca
