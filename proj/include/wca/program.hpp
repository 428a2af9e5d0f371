#pragma once

// Analyzable program representation: a flat statement graph with bounded
// symbolic inputs and explicit cost instrumentation. Programs are immutable
// after construction and safe to share across workers.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "wca/expr.hpp"

namespace wca {

struct NotFound : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class StmtKind : std::uint8_t { kAssign, kBranch, kAddCost, kCall, kReturn, kHalt };

inline const char* to_string(StmtKind k) {
  switch (k) {
    case StmtKind::kAssign: return "assign";
    case StmtKind::kBranch: return "branch";
    case StmtKind::kAddCost: return "add_cost";
    case StmtKind::kCall: return "call";
    case StmtKind::kReturn: return "return";
    case StmtKind::kHalt: return "halt";
  }
  return "?";
}

struct Statement {
  int id = 0;
  StmtKind kind = StmtKind::kHalt;
  // assign: target_var (+ target_index for array element) and expr = value.
  // branch: expr = guard. add_cost: expr = amount.
  std::string target_var;
  ExprPtr target_index;
  ExprPtr expr;
  // call: jump target; the single successor in `out` is the resume point.
  // return: successor is nominal only, control resumes at the pending call.
  int call_target = 0;
  // Successors in declared order; for branch, out[0] is the false side and
  // out[1] the true side (bit 1 selects the true successor).
  std::vector<int> out;
  bool always_sat = false;
};

struct ScalarInput {
  std::string name;
  Int lo = 0, hi = 0;
};

struct ArrayInput {
  std::string name;
  std::string length_param;  // scale param name, empty if literal
  Int length = 0;            // resolved length
  Int lo = 0, hi = 0;        // element interval
};

struct InputSpec {
  std::vector<ScalarInput> scalars;
  std::vector<ArrayInput> arrays;
};

struct LocalArray {
  std::string name;
  Int length = 0;
};

struct Program {
  std::string name;
  std::vector<Statement> statements;  // ordered; entry is statements.front()
  int entry = 0;
  InputSpec input_spec;
  std::map<std::string, Int> scale_params;
  std::vector<LocalArray> local_arrays;

  const Statement* find(int id) const {
    for (const auto& s : statements)
      if (s.id == id) return &s;
    return nullptr;
  }

  const Statement& stmt(int id) const {
    const Statement* s = find(id);
    if (!s) throw NotFound("no statement with id " + std::to_string(id));
    return *s;
  }
};

// Successors in declared order; for a branch, index 0 is the false side.
inline std::vector<int> successors(const Program& p, int stmt_id) {
  return p.stmt(stmt_id).out;
}

struct ValidationIssue {
  bool warning = false;
  int stmt_id = 0;  // 0 when not statement-specific
  std::string what;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;
  bool ok() const {
    return std::none_of(issues.begin(), issues.end(),
                        [](const ValidationIssue& i) { return !i.warning; });
  }
  bool empty() const { return issues.empty(); }
};

namespace detail {

enum class ExprType { kInt, kBool, kIll };

inline ExprType type_of(const ExprPtr& e) {
  switch (e->kind) {
    case ExprKind::kConst:
    case ExprKind::kVar:
      return ExprType::kInt;
    case ExprKind::kArrayRead:
      return type_of(e->lhs) == ExprType::kInt ? ExprType::kInt : ExprType::kIll;
    case ExprKind::kAdd:
    case ExprKind::kSub:
    case ExprKind::kMul:
      return (type_of(e->lhs) == ExprType::kInt && type_of(e->rhs) == ExprType::kInt)
                 ? ExprType::kInt
                 : ExprType::kIll;
    case ExprKind::kLt:
    case ExprKind::kLe:
    case ExprKind::kEq:
    case ExprKind::kNe:
      return (type_of(e->lhs) == ExprType::kInt && type_of(e->rhs) == ExprType::kInt)
                 ? ExprType::kBool
                 : ExprType::kIll;
    case ExprKind::kAnd:
    case ExprKind::kOr:
      return (type_of(e->lhs) == ExprType::kBool && type_of(e->rhs) == ExprType::kBool)
                 ? ExprType::kBool
                 : ExprType::kIll;
    case ExprKind::kNot:
      return type_of(e->lhs) == ExprType::kBool ? ExprType::kBool : ExprType::kIll;
  }
  return ExprType::kIll;
}

}  // namespace detail

// Reports every violated structural invariant; the program is well-formed
// iff the report carries no errors. Unreachable statements are warnings.
inline ValidationReport validate(const Program& p) {
  ValidationReport rep;
  auto err = [&](int id, std::string what) { rep.issues.push_back({false, id, std::move(what)}); };
  auto warn = [&](int id, std::string what) { rep.issues.push_back({true, id, std::move(what)}); };

  if (p.statements.empty()) {
    err(0, "program has no statements");
    return rep;
  }
  if (p.entry != p.statements.front().id)
    err(p.entry, "entry does not equal the first statement");

  std::set<int> ids;
  for (const auto& s : p.statements) {
    if (!ids.insert(s.id).second) err(s.id, "duplicate statement id");
  }

  auto in_range = [&](int id) { return ids.count(id) != 0; };

  for (const auto& s : p.statements) {
    size_t want = s.kind == StmtKind::kBranch ? 2 : s.kind == StmtKind::kHalt ? 0 : 1;
    if (s.out.size() != want)
      err(s.id, std::string(to_string(s.kind)) + " arity: expected " + std::to_string(want) +
                    " successors, got " + std::to_string(s.out.size()));
    for (int t : s.out)
      if (!in_range(t)) err(s.id, "successor " + std::to_string(t) + " does not exist");
    if (s.kind == StmtKind::kBranch && s.out.size() == 2 && s.out[0] == s.out[1])
      err(s.id, "branch successors must be distinct");
    if (s.always_sat && s.kind != StmtKind::kBranch)
      err(s.id, "always_sat annotation on non-branch statement");
    if (s.kind == StmtKind::kCall && !in_range(s.call_target))
      err(s.id, "call target " + std::to_string(s.call_target) + " does not exist");

    switch (s.kind) {
      case StmtKind::kBranch:
        if (!s.expr || detail::type_of(s.expr) != detail::ExprType::kBool)
          err(s.id, "branch guard must be boolean");
        break;
      case StmtKind::kAssign:
        if (s.target_var.empty()) err(s.id, "assign without target");
        if (!s.expr || detail::type_of(s.expr) != detail::ExprType::kInt)
          err(s.id, "assign value must be integer-typed");
        if (s.target_index && detail::type_of(s.target_index) != detail::ExprType::kInt)
          err(s.id, "array index must be integer-typed");
        break;
      case StmtKind::kAddCost:
        if (!s.expr || detail::type_of(s.expr) != detail::ExprType::kInt)
          err(s.id, "add_cost amount must be integer-typed");
        break;
      default:
        break;
    }
  }

  for (const auto& sc : p.input_spec.scalars)
    if (sc.lo > sc.hi) err(0, "empty interval for input " + sc.name);
  for (const auto& ar : p.input_spec.arrays) {
    if (ar.lo > ar.hi) err(0, "empty element interval for input " + ar.name);
    if (ar.length <= 0) err(0, "non-positive length for input array " + ar.name);
  }
  for (const auto& la : p.local_arrays)
    if (la.length <= 0) err(0, "non-positive length for local array " + la.name);

  // Reachability and the existence of a reachable exit.
  if (ids.count(p.entry)) {
    std::set<int> seen;
    std::vector<int> work{p.entry};
    bool exit_reachable = false;
    while (!work.empty()) {
      int id = work.back();
      work.pop_back();
      if (!seen.insert(id).second) continue;
      const Statement* s = p.find(id);
      if (!s) continue;
      if (s->out.empty()) exit_reachable = true;
      if (s->kind == StmtKind::kCall && in_range(s->call_target)) work.push_back(s->call_target);
      for (int t : s->out)
        if (in_range(t)) work.push_back(t);
    }
    if (!exit_reachable) err(p.entry, "no exit statement reachable from entry");
    for (const auto& s : p.statements)
      if (!seen.count(s.id)) warn(s.id, "unreachable");
  }

  return rep;
}

}  // namespace wca
