#pragma once

// Shared execution core. A Program is compiled once into slot-indexed form;
// Machine then walks it, evaluating every expression in the symbolic state
// (values are constants or expression trees over input symbols). Branches
// whose guard evaluates to a constant are followed without consuming a
// decision; all drivers (concrete replay, path-string execution, best-first
// search, exhaustive enumeration) share this rule by construction.

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "wca/expr.hpp"
#include "wca/program.hpp"
#include "wca/solver.hpp"

namespace wca {

struct ExecError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct BudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct PathTooShort : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct UnsupportedFeature : std::runtime_error {
  using std::runtime_error::runtime_error;
};

constexpr long long kDefaultStepBudget = 1'000'000;
constexpr int kCallDepthLimit = 65536;

class CompiledProgram {
 public:
  struct CStmt {
    int id = 0;
    StmtKind kind = StmtKind::kHalt;
    ExprPtr expr;                 // slot-resolved
    int target_slot = -1;         // assign: scalar slot, or array slot
    bool target_is_array = false;
    ExprPtr target_index;
    int out[2] = {-1, -1};        // dense successor indices
    int call_target = -1;         // dense index
    bool always_sat = false;
  };

  explicit CompiledProgram(const Program& p)
      : name_(p.name), syms_(SymbolTable::from_spec(p.input_spec)) {
    std::map<int, int> id2idx;
    for (size_t i = 0; i < p.statements.size(); ++i)
      id2idx[p.statements[i].id] = static_cast<int>(i);

    for (const auto& s : p.input_spec.scalars) {
      int slot = static_cast<int>(scalar_init_.size());
      scalar_slot_[s.name] = slot;
      scalar_init_.push_back(expr::sym(syms_.scalars().at(s.name), s.name));
    }
    for (const auto& a : p.input_spec.arrays) {
      int slot = static_cast<int>(array_init_.size());
      array_slot_[a.name] = slot;
      std::vector<ExprPtr> init;
      init.reserve(a.length);
      for (int sid : syms_.arrays().at(a.name))
        init.push_back(expr::sym(sid, syms_.info(sid).display));
      array_init_.push_back(std::move(init));
    }
    for (const auto& l : p.local_arrays) {
      int slot = static_cast<int>(array_init_.size());
      array_slot_[l.name] = slot;
      array_init_.emplace_back(l.length, expr::lit(0));
    }

    code_.reserve(p.statements.size());
    for (const auto& s : p.statements) {
      CStmt c;
      c.id = s.id;
      c.kind = s.kind;
      c.always_sat = s.always_sat;
      if (s.expr) c.expr = compile_expr(s.expr, p);
      if (s.kind == StmtKind::kAssign) {
        if (s.target_index) {
          auto it = array_slot_.find(s.target_var);
          if (it == array_slot_.end())
            throw ExecError("store to undeclared array " + s.target_var);
          c.target_slot = it->second;
          c.target_is_array = true;
          c.target_index = compile_expr(s.target_index, p);
        } else {
          if (p.scale_params.count(s.target_var))
            throw ExecError("assignment to scale param " + s.target_var);
          c.target_slot = scalar_slot_for(s.target_var);
        }
      }
      for (size_t k = 0; k < s.out.size() && k < 2; ++k) c.out[k] = id2idx.at(s.out[k]);
      if (s.kind == StmtKind::kCall) c.call_target = id2idx.at(s.call_target);
      code_.push_back(std::move(c));
    }
    entry_ = id2idx.at(p.entry);
  }

  const std::string& name() const { return name_; }
  const SymbolTable& symbols() const { return syms_; }
  const std::vector<CStmt>& code() const { return code_; }
  int entry() const { return entry_; }
  const std::vector<ExprPtr>& scalar_init() const { return scalar_init_; }
  const std::vector<std::vector<ExprPtr>>& array_init() const { return array_init_; }

 private:
  int scalar_slot_for(const std::string& name) {
    auto it = scalar_slot_.find(name);
    if (it != scalar_slot_.end()) return it->second;
    int slot = static_cast<int>(scalar_init_.size());
    scalar_slot_[name] = slot;
    scalar_init_.push_back(expr::lit(0));  // locals start at zero
    return slot;
  }

  ExprPtr compile_expr(const ExprPtr& e, const Program& p) {
    switch (e->kind) {
      case ExprKind::kConst:
        return e;
      case ExprKind::kVar: {
        auto pit = p.scale_params.find(e->name);
        if (pit != p.scale_params.end()) return expr::lit(pit->second);
        int slot = scalar_slot_for(e->name);
        return expr::sym(slot, e->name);  // slot-space variable
      }
      case ExprKind::kArrayRead: {
        auto it = array_slot_.find(e->name);
        if (it == array_slot_.end()) throw ExecError("read of undeclared array " + e->name);
        auto node = std::make_shared<Expr>();
        node->kind = ExprKind::kArrayRead;
        node->name = e->name;
        node->sym = it->second;
        node->lhs = compile_expr(e->lhs, p);
        return node;
      }
      case ExprKind::kNot:
        return expr::lnot(compile_expr(e->lhs, p));
      default: {
        ExprPtr a = compile_expr(e->lhs, p);
        ExprPtr b = compile_expr(e->rhs, p);
        using namespace expr;
        switch (e->kind) {
          case ExprKind::kAdd: return add(a, b);
          case ExprKind::kSub: return sub(a, b);
          case ExprKind::kMul: return mul(a, b);
          case ExprKind::kLt: return lt(a, b);
          case ExprKind::kLe: return le(a, b);
          case ExprKind::kEq: return eq(a, b);
          case ExprKind::kNe: return ne(a, b);
          case ExprKind::kAnd: return land(a, b);
          case ExprKind::kOr: return lor(a, b);
          default: throw ExecError("compile_expr: bad kind");
        }
      }
    }
  }

  std::string name_;
  SymbolTable syms_;
  std::vector<CStmt> code_;
  int entry_ = 0;
  std::map<std::string, int> scalar_slot_;
  std::map<std::string, int> array_slot_;
  std::vector<ExprPtr> scalar_init_;
  std::vector<std::vector<ExprPtr>> array_init_;
};

struct BranchRecord {
  int stmt_id = 0;
  bool taken = false;
  bool consumed_bit = false;  // false for constant guards and forced sides
};

class Machine {
 public:
  enum class Stop { kHalted, kDecision };

  explicit Machine(const CompiledProgram& cp, bool record_statements = false,
                   long long step_budget = kDefaultStepBudget)
      : cp_(&cp),
        scalars_(cp.scalar_init()),
        arrays_(cp.array_init()),
        record_(record_statements),
        step_budget_(step_budget),
        pos_(cp.entry()) {}

  // Runs until termination or the next open (symbolic-guard) branch.
  Stop advance() {
    while (true) {
      if (halted_) return Stop::kHalted;
      const auto& s = cp_->code()[static_cast<size_t>(pos_)];
      if (++steps_ > step_budget_)
        throw BudgetExceeded("statement budget exceeded in " + cp_->name());
      ++trace_len_;
      if (record_) stmt_log_.push_back(s.id);
      switch (s.kind) {
        case StmtKind::kAssign: {
          ExprPtr v = eval(s.expr);
          if (s.target_is_array) {
            auto& arr = arrays_[static_cast<size_t>(s.target_slot)];
            arr[index_of(s.target_index, arr.size())] = std::move(v);
          } else {
            scalars_[static_cast<size_t>(s.target_slot)] = std::move(v);
          }
          pos_ = s.out[0];
          break;
        }
        case StmtKind::kAddCost: {
          Val v = eval_v(s.expr);
          if (v.node || v.owned)
            throw UnsupportedFeature("symbolic cost amount at statement " + std::to_string(s.id));
          cost_ += v.value;
          pos_ = s.out[0];
          break;
        }
        case StmtKind::kCall:
          if (static_cast<int>(call_stack_.size()) >= kCallDepthLimit)
            throw BudgetExceeded("call depth limit");
          call_stack_.push_back(s.out[0]);
          pos_ = s.call_target;
          break;
        case StmtKind::kReturn:
          if (call_stack_.empty()) throw ExecError("return without pending call");
          pos_ = call_stack_.back();
          call_stack_.pop_back();
          break;
        case StmtKind::kHalt:
          halted_ = true;
          return Stop::kHalted;
        case StmtKind::kBranch: {
          Val g = eval_v(s.expr);
          if (!g.node && !g.owned) {
            bool taken = g.value != 0;
            if (record_) branches_.push_back({s.id, taken, false});
            pos_ = s.out[taken ? 1 : 0];
            break;
          }
          pending_guard_ = materialize(std::move(g));
          return Stop::kDecision;
        }
      }
    }
  }

  // Decision-point accessors (valid after advance() returned kDecision).
  const ExprPtr& pending_guard() const { return pending_guard_; }
  bool pending_always_sat() const { return cur().always_sat; }
  int pending_stmt_id() const { return cur().id; }

  // Takes one side of the pending branch, asserting the guard's polarity.
  // `consumed_bit` is bookkeeping for the caller's bit cursor.
  void take(bool side, bool consumed_bit) {
    const auto& s = cur();
    conditions_.push_back(expr::nnf(pending_guard_, side));
    if (record_) branches_.push_back({s.id, side, consumed_bit});
    pos_ = s.out[side ? 1 : 0];
    pending_guard_ = nullptr;
  }

  bool halted() const { return halted_; }
  Int cost() const { return cost_; }
  long long trace_len() const { return trace_len_; }
  const std::vector<int>& statement_log() const { return stmt_log_; }
  const std::vector<BranchRecord>& branch_records() const { return branches_; }
  const std::vector<ExprPtr>& conditions() const { return conditions_; }

 private:
  const CompiledProgram::CStmt& cur() const { return cp_->code()[static_cast<size_t>(pos_)]; }

  size_t index_of(const ExprPtr& index_expr, size_t len) {
    Val iv = eval_v(index_expr);
    if (iv.node) throw UnsupportedFeature("symbolic array index");
    if (iv.value < 0 || static_cast<size_t>(iv.value) >= len)
      throw ExecError("array index " + std::to_string(iv.value) + " out of range");
    return static_cast<size_t>(iv.value);
  }

  // Concrete spines are computed as plain integers; nodes are only built
  // where a symbolic subtree is involved.
  struct Val {
    Int value = 0;
    const ExprPtr* node = nullptr;  // points into stable storage when symbolic
    ExprPtr owned;                  // owner for freshly built nodes
  };

  static ExprPtr materialize(Val&& v) {
    if (v.owned) return std::move(v.owned);
    if (v.node) return *v.node;
    return expr::lit(v.value);
  }

  Val eval_v(const ExprPtr& e) {
    switch (e->kind) {
      case ExprKind::kConst:
        return {e->value, nullptr, nullptr};
      case ExprKind::kVar: {
        const ExprPtr& stored = scalars_[static_cast<size_t>(e->sym)];
        if (stored->kind == ExprKind::kConst) return {stored->value, nullptr, nullptr};
        return {0, &stored, nullptr};
      }
      case ExprKind::kArrayRead: {
        const auto& arr = arrays_[static_cast<size_t>(e->sym)];
        const ExprPtr& stored = arr[index_of(e->lhs, arr.size())];
        if (stored->kind == ExprKind::kConst) return {stored->value, nullptr, nullptr};
        return {0, &stored, nullptr};
      }
      case ExprKind::kNot: {
        Val a = eval_v(e->lhs);
        if (!a.node && !a.owned) return {a.value == 0 ? 1 : 0, nullptr, nullptr};
        Val r;
        r.owned = expr::lnot(materialize(std::move(a)));
        return r;
      }
      default: {
        Val a = eval_v(e->lhs);
        Val b = eval_v(e->rhs);
        bool ca = !a.node && !a.owned, cb = !b.node && !b.owned;
        if (ca && cb) {
          Int x = a.value, y = b.value;
          switch (e->kind) {
            case ExprKind::kAdd: return {x + y, nullptr, nullptr};
            case ExprKind::kSub: return {x - y, nullptr, nullptr};
            case ExprKind::kMul: return {x * y, nullptr, nullptr};
            case ExprKind::kLt: return {x < y, nullptr, nullptr};
            case ExprKind::kLe: return {x <= y, nullptr, nullptr};
            case ExprKind::kEq: return {x == y, nullptr, nullptr};
            case ExprKind::kNe: return {x != y, nullptr, nullptr};
            case ExprKind::kAnd: return {(x != 0) && (y != 0), nullptr, nullptr};
            case ExprKind::kOr: return {(x != 0) || (y != 0), nullptr, nullptr};
            default: throw ExecError("eval: bad kind");
          }
        }
        using namespace expr;
        ExprPtr an = materialize(std::move(a));
        ExprPtr bn = materialize(std::move(b));
        Val r;
        switch (e->kind) {
          case ExprKind::kAdd: r.owned = add(std::move(an), std::move(bn)); break;
          case ExprKind::kSub: r.owned = sub(std::move(an), std::move(bn)); break;
          case ExprKind::kMul: r.owned = mul(std::move(an), std::move(bn)); break;
          case ExprKind::kLt: r.owned = lt(std::move(an), std::move(bn)); break;
          case ExprKind::kLe: r.owned = le(std::move(an), std::move(bn)); break;
          case ExprKind::kEq: r.owned = eq(std::move(an), std::move(bn)); break;
          case ExprKind::kNe: r.owned = ne(std::move(an), std::move(bn)); break;
          case ExprKind::kAnd: r.owned = land(std::move(an), std::move(bn)); break;
          case ExprKind::kOr: r.owned = lor(std::move(an), std::move(bn)); break;
          default: throw ExecError("eval: bad kind");
        }
        return r;
      }
    }
  }

  ExprPtr eval(const ExprPtr& e) { return materialize(eval_v(e)); }

  const CompiledProgram* cp_;
  std::vector<ExprPtr> scalars_;
  std::vector<std::vector<ExprPtr>> arrays_;
  std::vector<int> call_stack_;
  std::vector<ExprPtr> conditions_;
  std::vector<BranchRecord> branches_;
  std::vector<int> stmt_log_;
  ExprPtr pending_guard_;
  bool record_ = false;
  bool halted_ = false;
  long long step_budget_ = kDefaultStepBudget;
  long long steps_ = 0;
  long long trace_len_ = 0;
  Int cost_ = 0;
  int pos_ = 0;
};

}  // namespace wca
