#pragma once

// Path-string-driven symbolic execution. A fixed-length bit vector selects
// branch sides; constant guards never consume a bit. Under kSkipUnsat the
// executor forces the only satisfiable side of a branch without consuming a
// bit (checking first the side the next bit would choose), so every path
// string maps to a satisfiable path; branches annotated always-sat skip the
// check entirely and consume a bit directly.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "wca/concrete.hpp"
#include "wca/machine.hpp"
#include "wca/solver.hpp"

namespace wca {

struct PathString {
  std::vector<std::uint8_t> bits;

  int length() const { return static_cast<int>(bits.size()); }

  static PathString zeroes(int m) { return PathString{std::vector<std::uint8_t>(static_cast<size_t>(m), 0)}; }

  static PathString random(int m, Rng& rng) {
    PathString q;
    q.bits.resize(static_cast<size_t>(m));
    for (auto& b : q.bits) b = rng.coin() ? 1 : 0;
    return q;
  }

  static PathString padded(std::vector<std::uint8_t> bits, int m) {
    bits.resize(static_cast<size_t>(m), 0);
    return PathString{std::move(bits)};
  }

  std::string to_string() const {
    std::string s;
    s.reserve(bits.size());
    for (auto b : bits) s.push_back(b ? '1' : '0');
    return s;
  }
};

enum class MappingMode { kDefault, kSkipUnsat };

inline const char* to_string(MappingMode m) {
  return m == MappingMode::kDefault ? "default" : "skip-unsat";
}

struct PathOutcome {
  bool sat = false;
  bool solver_budget_hit = false;
  Int cost = 0;
  int used_bits = 0;
  std::vector<ExprPtr> conditions;
  long long trace_len = 0;
  long long solver_calls = 0;
};

inline PathOutcome execute(const CompiledProgram& cp, const PathString& q, MappingMode mode,
                           SolverContext& ctx, long long step_budget = kDefaultStepBudget) {
  ctx.reset();
  Machine m(cp, /*record_statements=*/false, step_budget);
  const long long calls_before = ctx.stats().sat_calls;
  int cursor = 0;
  const int M = q.length();

  auto consume = [&]() -> bool {
    if (cursor >= M)
      throw PathTooShort("path string of length " + std::to_string(M) + " exhausted");
    return q.bits[static_cast<size_t>(cursor++)] != 0;
  };

  PathOutcome out;
  try {
    while (m.advance() == Machine::Stop::kDecision) {
      const ExprPtr& guard = m.pending_guard();
      if (mode == MappingMode::kDefault || m.pending_always_sat()) {
        bool bit = consume();
        ctx.push(expr::nnf(guard, bit));
        m.take(bit, /*consumed_bit=*/true);
        continue;
      }
      // kSkipUnsat: a bit is consumed only when both sides are satisfiable;
      // a branch with an unsatisfiable side is a forced move that keeps the
      // bit. The side the next bit would choose is checked first.
      bool bit = cursor < M && q.bits[static_cast<size_t>(cursor)] != 0;
      ctx.push(expr::nnf(guard, bit));
      if (ctx.check_sat() != SolverContext::Result::kSat) {
        ctx.pop();
        ctx.push(expr::nnf(guard, !bit));  // the other side is satisfiable: the
        m.take(!bit, /*consumed_bit=*/false);  // prefix has a model and it lies there
        continue;
      }
      ctx.pop();
      ctx.push(expr::nnf(guard, !bit));
      bool other_sat = ctx.check_sat() == SolverContext::Result::kSat;
      ctx.pop();
      ctx.push(expr::nnf(guard, bit));
      if (other_sat) {
        consume();
        m.take(bit, /*consumed_bit=*/true);
      } else {
        m.take(bit, /*consumed_bit=*/false);
      }
    }
    if (mode == MappingMode::kSkipUnsat || m.conditions().empty()) {
      out.sat = true;
    } else {
      out.sat = ctx.check_sat() == SolverContext::Result::kSat;
    }
  } catch (const SolverBudgetExceeded&) {
    // conservative rejection: the individual is discarded, not the run
    out.sat = false;
    out.solver_budget_hit = true;
  }
  out.cost = m.cost();
  out.used_bits = cursor;
  out.conditions = m.conditions();
  out.trace_len = m.trace_len();
  out.solver_calls = ctx.stats().sat_calls - calls_before;
  return out;
}

// Concrete witness for a satisfiable outcome: asserts its path conditions,
// solves, and fills unconstrained inputs with domain lower bounds. Replaying
// the witness concretely reproduces the outcome's cost.
inline ConcreteInput solve_witness(const CompiledProgram& cp, const PathOutcome& outcome,
                                   SolverContext& ctx) {
  if (!outcome.sat) throw IllegalState("solve_witness on unsatisfiable outcome");
  ctx.reset();
  for (const auto& c : outcome.conditions) ctx.push(c);
  if (ctx.check_sat() != SolverContext::Result::kSat)
    throw IllegalState("conditions of a satisfiable outcome did not solve");
  Model model = ctx.get_model();
  return input_from_values(cp.symbols(), model.values);
}

// Path string related to a concrete input under the given mapping mode.
// Under kDefault this matches extract_path_string(run_concrete(input));
// under kSkipUnsat bits are recorded only at branches where both sides are
// satisfiable, so replaying the string reproduces the input's path exactly.
inline std::vector<std::uint8_t> related_path_string(const CompiledProgram& cp,
                                                     const ConcreteInput& input, MappingMode mode,
                                                     SolverContext& ctx,
                                                     long long step_budget = kDefaultStepBudget) {
  ctx.reset();
  Machine m(cp, /*record_statements=*/false, step_budget);
  std::vector<Int> vals = input.symbol_values(cp.symbols());
  auto lookup = [&](int sid) { return vals[static_cast<size_t>(sid)]; };
  std::vector<std::uint8_t> bits;
  while (m.advance() == Machine::Stop::kDecision) {
    const ExprPtr& guard = m.pending_guard();
    bool side = eval_expr(guard, lookup) != 0;
    bool consumed = true;
    if (mode == MappingMode::kSkipUnsat && !m.pending_always_sat()) {
      ctx.push(expr::nnf(guard, !side));
      consumed = ctx.check_sat() == SolverContext::Result::kSat;  // input side is sat by construction
      ctx.pop();
    }
    ctx.push(expr::nnf(guard, side));
    if (consumed) bits.push_back(side ? 1 : 0);
    m.take(side, consumed);
  }
  return bits;
}

// Path length threshold from sampled concrete runs: ceil(margin * max bits
// used), at least 1. Deterministic per seed; intended as a default the user
// can override.
inline int estimate_path_len(const CompiledProgram& cp, int samples, double margin,
                             std::uint64_t seed, long long step_budget = kDefaultStepBudget) {
  Rng rng(seed);
  size_t max_bits = 0;
  for (int i = 0; i < samples; ++i) {
    ConcreteInput in = random_input(cp.symbols(), rng);
    Trace t = run_concrete(cp, in, step_budget);
    max_bits = std::max(max_bits, extract_path_string(t).size());
  }
  int m = static_cast<int>(std::ceil(margin * static_cast<double>(max_bits)));
  return std::max(m, 1);
}

}  // namespace wca
