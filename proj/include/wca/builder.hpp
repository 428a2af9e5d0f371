#pragma once

// In-code program construction. The assembler appends statements in order,
// wires fall-through edges automatically and resolves labels at finish(),
// so benchmark sources read like straight-line assembly with named jumps.

#include <map>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "wca/program.hpp"

namespace wca {

class ProgramBuilder {
 public:
  explicit ProgramBuilder(std::string name) { prog_.name = std::move(name); }

  ProgramBuilder& scale(const std::string& key, Int value) {
    prog_.scale_params[key] = value;
    return *this;
  }

  Int scale(const std::string& key) const { return prog_.scale_params.at(key); }

  ProgramBuilder& input_scalar(const std::string& name, Int lo, Int hi) {
    prog_.input_spec.scalars.push_back({name, lo, hi});
    return *this;
  }

  ProgramBuilder& input_array(const std::string& name, const std::string& length_param, Int lo,
                              Int hi) {
    prog_.input_spec.arrays.push_back(
        {name, length_param, prog_.scale_params.at(length_param), lo, hi});
    return *this;
  }

  ProgramBuilder& local_array(const std::string& name, Int length) {
    prog_.local_arrays.push_back({name, length});
    return *this;
  }

  // --- code emission ---------------------------------------------------

  struct Label {
    int index = -1;
  };

  Label new_label() {
    labels_.push_back(-1);
    return Label{static_cast<int>(labels_.size()) - 1};
  }

  void bind(Label l) {
    if (labels_.at(l.index) != -1) throw std::logic_error("label bound twice");
    labels_[l.index] = next_id();
    // patch_slot entries referring to this label are resolved in finish()
  }

  void assign(const std::string& var, ExprPtr value) {
    Statement s = base(StmtKind::kAssign);
    s.target_var = var;
    s.expr = std::move(value);
    append_fallthrough(std::move(s));
  }

  void store(const std::string& array, ExprPtr index, ExprPtr value) {
    Statement s = base(StmtKind::kAssign);
    s.target_var = array;
    s.target_index = std::move(index);
    s.expr = std::move(value);
    append_fallthrough(std::move(s));
  }

  void add_cost(ExprPtr amount) {
    Statement s = base(StmtKind::kAddCost);
    s.expr = std::move(amount);
    append_fallthrough(std::move(s));
  }

  // False side goes to `on_false`, true side falls through.
  void branch_false_to(ExprPtr guard, Label on_false, bool always_sat = false) {
    Statement s = base(StmtKind::kBranch);
    s.expr = std::move(guard);
    s.always_sat = always_sat;
    s.out = {0, 0};
    int idx = append(std::move(s));
    label_refs_.push_back({idx, 0, on_false.index});
    fallthrough_.push_back({idx, 1});
  }

  // True side goes to `on_true`, false side falls through.
  void branch_true_to(ExprPtr guard, Label on_true, bool always_sat = false) {
    Statement s = base(StmtKind::kBranch);
    s.expr = std::move(guard);
    s.always_sat = always_sat;
    s.out = {0, 0};
    int idx = append(std::move(s));
    fallthrough_.push_back({idx, 0});
    label_refs_.push_back({idx, 1, on_true.index});
  }

  void branch_to(ExprPtr guard, Label on_false, Label on_true, bool always_sat = false) {
    Statement s = base(StmtKind::kBranch);
    s.expr = std::move(guard);
    s.always_sat = always_sat;
    s.out = {0, 0};
    int idx = append(std::move(s));
    label_refs_.push_back({idx, 0, on_false.index});
    label_refs_.push_back({idx, 1, on_true.index});
  }

  // Redirects the pending fall-through edge; emits no statement.
  void jump(Label target) {
    for (auto& [idx, slot] : fallthrough_) label_refs_.push_back({idx, slot, target.index});
    fallthrough_.clear();
  }

  void call(Label target) {
    Statement s = base(StmtKind::kCall);
    s.out = {0};
    int idx = append(std::move(s));
    call_refs_.push_back({idx, target.index});
    fallthrough_.push_back({idx, 0});
  }

  void ret(Label nominal) {
    Statement s = base(StmtKind::kReturn);
    s.out = {0};
    int idx = append(std::move(s));
    label_refs_.push_back({idx, 0, nominal.index});
  }

  void halt() { append(base(StmtKind::kHalt)); }

  Program finish() {
    if (!fallthrough_.empty())
      throw std::logic_error("dangling fall-through edge (missing halt or jump?)");
    for (const auto& [idx, slot, label] : label_refs_) {
      int id = labels_.at(label);
      if (id == -1) throw std::logic_error("unbound label");
      prog_.statements[idx].out[slot] = id;
    }
    for (const auto& [idx, label] : call_refs_) {
      int id = labels_.at(label);
      if (id == -1) throw std::logic_error("unbound call target label");
      prog_.statements[idx].call_target = id;
    }
    prog_.entry = prog_.statements.empty() ? 0 : prog_.statements.front().id;
    return std::move(prog_);
  }

 private:
  int next_id() const { return static_cast<int>(prog_.statements.size()) + 1; }

  Statement base(StmtKind k) {
    Statement s;
    s.id = next_id();
    s.kind = k;
    return s;
  }

  int append(Statement s) {
    int idx = static_cast<int>(prog_.statements.size());
    // resolve pending fall-through edges onto this statement
    for (auto& [pidx, slot] : fallthrough_) prog_.statements[pidx].out[slot] = s.id;
    fallthrough_.clear();
    prog_.statements.push_back(std::move(s));
    return idx;
  }

  void append_fallthrough(Statement s) {
    if (s.out.empty()) s.out = {0};
    int idx = append(std::move(s));
    fallthrough_.push_back({idx, 0});
  }

  Program prog_;
  std::vector<int> labels_;                          // label index -> statement id
  std::vector<std::pair<int, int>> fallthrough_;     // (stmt idx, out slot) awaiting next stmt
  std::vector<std::tuple<int, int, int>> label_refs_;  // (stmt idx, slot, label)
  std::vector<std::pair<int, int>> call_refs_;       // (stmt idx, label)
};

}  // namespace wca
