#pragma once

// Concrete interpretation: evaluates the cost of one concrete input, records
// the trace, and extracts the path string related to the input. The walk is
// the shared Machine driven by concrete guard values, so the bits it records
// are exactly the bits the symbolic executor would consume.

#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "wca/machine.hpp"
#include "wca/rng.hpp"

namespace wca {

struct ConcreteInput {
  std::map<std::string, Int> scalars;
  std::map<std::string, std::vector<Int>> arrays;

  // Human-readable key=value block used in reports.
  std::string to_text() const {
    std::ostringstream out;
    for (const auto& [k, v] : scalars) out << k << " = " << v << "\n";
    for (const auto& [k, vs] : arrays) {
      out << k << " = [";
      for (size_t i = 0; i < vs.size(); ++i) out << (i ? ", " : "") << vs[i];
      out << "]\n";
    }
    return out.str();
  }

  // Symbol-indexed view matching a program's symbol table.
  std::vector<Int> symbol_values(const SymbolTable& syms) const {
    std::vector<Int> vals(static_cast<size_t>(syms.count()), 0);
    for (const auto& [name, sid] : syms.scalars()) vals[static_cast<size_t>(sid)] = scalars.at(name);
    for (const auto& [name, sids] : syms.arrays()) {
      const auto& src = arrays.at(name);
      for (size_t i = 0; i < sids.size(); ++i) vals[static_cast<size_t>(sids[i])] = src.at(i);
    }
    return vals;
  }
};

struct Trace {
  std::vector<int> statements;
  std::vector<BranchRecord> branches;
  Int total_cost = 0;
};

inline ConcreteInput random_input(const InputSpec& spec, Rng& rng) {
  ConcreteInput in;
  for (const auto& s : spec.scalars) in.scalars[s.name] = rng.uniform(s.lo, s.hi);
  for (const auto& a : spec.arrays) {
    std::vector<Int> vs(static_cast<size_t>(a.length));
    for (auto& v : vs) v = rng.uniform(a.lo, a.hi);
    in.arrays[a.name] = std::move(vs);
  }
  return in;
}

inline ConcreteInput random_input(const InputSpec& spec, std::uint64_t seed) {
  Rng rng(seed);
  return random_input(spec, rng);
}

inline ConcreteInput input_from_values(const SymbolTable& syms, const std::vector<Int>& vals) {
  ConcreteInput in;
  for (const auto& [name, sid] : syms.scalars()) in.scalars[name] = vals.at(static_cast<size_t>(sid));
  for (const auto& [name, sids] : syms.arrays()) {
    std::vector<Int>& vs = in.arrays[name];
    vs.reserve(sids.size());
    for (int sid : sids) vs.push_back(vals.at(static_cast<size_t>(sid)));
  }
  return in;
}

// Same distribution, driven by a program's symbol table (scalars first,
// then array elements, both in declaration order).
inline ConcreteInput random_input(const SymbolTable& syms, Rng& rng) {
  std::vector<Int> vals(static_cast<size_t>(syms.count()));
  for (int sid = 0; sid < syms.count(); ++sid)
    vals[static_cast<size_t>(sid)] = rng.uniform(syms.info(sid).lo, syms.info(sid).hi);
  return input_from_values(syms, vals);
}

inline Trace run_concrete(const CompiledProgram& cp, const ConcreteInput& input,
                          long long step_budget = kDefaultStepBudget) {
  Machine m(cp, /*record_statements=*/true, step_budget);
  std::vector<Int> vals = input.symbol_values(cp.symbols());
  auto lookup = [&](int sid) { return vals[static_cast<size_t>(sid)]; };
  while (m.advance() == Machine::Stop::kDecision) {
    bool side = eval_expr(m.pending_guard(), lookup) != 0;
    m.take(side, /*consumed_bit=*/true);
  }
  return Trace{m.statement_log(), m.branch_records(), m.cost()};
}

inline Trace run_concrete(const Program& p, const ConcreteInput& input,
                          long long step_budget = kDefaultStepBudget) {
  return run_concrete(CompiledProgram(p), input, step_budget);
}

// One bit per branch that consumed a decision, 1 = true successor taken.
inline std::vector<std::uint8_t> extract_path_string(const Trace& trace) {
  std::vector<std::uint8_t> bits;
  for (const auto& b : trace.branches)
    if (b.consumed_bit) bits.push_back(b.taken ? 1 : 0);
  return bits;
}

}  // namespace wca
