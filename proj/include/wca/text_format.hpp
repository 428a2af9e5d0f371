#pragma once

// Line-oriented program text format.
//
//   program <name>
//   param <name> = <int>
//   input <name> int[<lo>, <hi>]
//   input <name> array[<len>] int[<lo>, <hi>]
//   local <name> array[<len-expr>]
//   <id> assign <target> := <expr> -> <succ>
//   <id> branch <guard> -> <false-succ>,<true-succ> [@always_sat]
//   <id> add_cost <expr> -> <succ>
//   <id> call @<target> -> <resume>
//   <id> return -> <succ>
//   <id> halt
//
// `#` starts a comment. Interval bounds and array lengths may reference
// previously declared params. Parsing then serializing yields the same bytes.

#include <cctype>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "wca/expr.hpp"
#include "wca/program.hpp"

namespace wca {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace textfmt {

class Tokenizer {
 public:
  explicit Tokenizer(std::string_view s) : s_(s) {}

  std::string peek() {
    size_t save = pos_;
    std::string t = next();
    pos_ = save;
    return t;
  }

  std::string next() {
    skip_ws();
    if (pos_ >= s_.size()) return "";
    char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return std::string(s_.substr(start, pos_ - start));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
        ++pos_;
      return std::string(s_.substr(start, pos_ - start));
    }
    // multi-char operators
    static const char* two[] = {"<=", "==", "!=", ":=", "->"};
    for (const char* op : two) {
      if (s_.compare(pos_, 2, op) == 0) {
        pos_ += 2;
        return op;
      }
    }
    ++pos_;
    return std::string(1, c);
  }

  void expect(const std::string& t) {
    std::string got = next();
    if (got != t) throw ParseError("expected '" + t + "', got '" + got + "'");
  }

  bool done() {
    skip_ws();
    return pos_ >= s_.size();
  }

 private:
  void skip_ws() {
    while (pos_ < s_.size()) {
      char c = s_[pos_];
      if (c == '#') {
        pos_ = s_.size();
        break;
      }
      if (c == ' ' || c == '\t' || c == '\r')
        ++pos_;
      else
        break;
    }
  }

  std::string_view s_;
  size_t pos_ = 0;
};

// Recursive-descent expression parser. Precedence (loosest first):
// or, and, not, comparisons, +/-, *, unary minus, primary.
class ExprParser {
 public:
  explicit ExprParser(Tokenizer& t) : t_(t) {}

  ExprPtr parse() { return parse_or(); }

 private:
  ExprPtr parse_or() {
    ExprPtr e = parse_and();
    while (t_.peek() == "or") {
      t_.next();
      e = expr::lor(e, parse_and());
    }
    return e;
  }

  ExprPtr parse_and() {
    ExprPtr e = parse_not();
    while (t_.peek() == "and") {
      t_.next();
      e = expr::land(e, parse_not());
    }
    return e;
  }

  ExprPtr parse_not() {
    if (t_.peek() == "not") {
      t_.next();
      return expr::lnot(parse_not());
    }
    return parse_cmp();
  }

  ExprPtr parse_cmp() {
    ExprPtr e = parse_sum();
    std::string op = t_.peek();
    if (op == "<" || op == "<=" || op == "==" || op == "!=" || op == ">" || op == ">=") {
      t_.next();
      ExprPtr r = parse_sum();
      if (op == "<") return expr::lt(e, r);
      if (op == "<=") return expr::le(e, r);
      if (op == "==") return expr::eq(e, r);
      if (op == "!=") return expr::ne(e, r);
      if (op == ">") return expr::lt(r, e);
      return expr::le(r, e);
    }
    return e;
  }

  ExprPtr parse_sum() {
    ExprPtr e = parse_term();
    while (true) {
      std::string op = t_.peek();
      if (op == "+") {
        t_.next();
        e = expr::add(e, parse_term());
      } else if (op == "-") {
        t_.next();
        e = expr::sub(e, parse_term());
      } else {
        return e;
      }
    }
  }

  ExprPtr parse_term() {
    ExprPtr e = parse_unary();
    while (t_.peek() == "*") {
      t_.next();
      e = expr::mul(e, parse_unary());
    }
    return e;
  }

  ExprPtr parse_unary() {
    if (t_.peek() == "-") {
      t_.next();
      return expr::sub(expr::lit(0), parse_unary());
    }
    return parse_primary();
  }

  ExprPtr parse_primary() {
    std::string tok = t_.next();
    if (tok.empty()) throw ParseError("unexpected end of expression");
    if (tok == "(") {
      ExprPtr e = parse_or();
      t_.expect(")");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(tok[0]))) return expr::lit(std::stoll(tok));
    if (std::isalpha(static_cast<unsigned char>(tok[0])) || tok[0] == '_') {
      if (t_.peek() == "[") {
        t_.next();
        ExprPtr idx = parse_or();
        t_.expect("]");
        return expr::aref(tok, idx);
      }
      return expr::var(tok);
    }
    throw ParseError("unexpected token '" + tok + "' in expression");
  }

  Tokenizer& t_;
};

inline ExprPtr parse_expr(const std::string& s) {
  Tokenizer t(s);
  ExprParser p(t);
  ExprPtr e = p.parse();
  if (!t.done()) throw ParseError("trailing input after expression: " + s);
  return e;
}

}  // namespace textfmt

inline Program parse_program(const std::string& text) {
  using textfmt::ExprParser;
  using textfmt::Tokenizer;

  Program prog;
  bool have_name = false;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;

  auto resolve_const = [&](Tokenizer& t, const char* what) -> std::pair<Int, std::string> {
    // Integer, param name, or (for local array lengths) a param expression.
    ExprParser p(t);
    ExprPtr e = p.parse();
    if (is_const(e)) return {e->value, ""};
    if (e->kind == ExprKind::kVar) {
      auto it = prog.scale_params.find(e->name);
      if (it == prog.scale_params.end())
        throw ParseError(std::string(what) + " references unknown param " + e->name);
      return {it->second, e->name};
    }
    // general param expression: evaluate with params only
    std::function<Int(const ExprPtr&)> ev = [&](const ExprPtr& x) -> Int {
      switch (x->kind) {
        case ExprKind::kConst: return x->value;
        case ExprKind::kVar: {
          auto it = prog.scale_params.find(x->name);
          if (it == prog.scale_params.end())
            throw ParseError(std::string(what) + " references unknown param " + x->name);
          return it->second;
        }
        case ExprKind::kAdd: return ev(x->lhs) + ev(x->rhs);
        case ExprKind::kSub: return ev(x->lhs) - ev(x->rhs);
        case ExprKind::kMul: return ev(x->lhs) * ev(x->rhs);
        default: throw ParseError(std::string(what) + ": unsupported length expression");
      }
    };
    return {ev(e), ""};
  };

  while (std::getline(in, line)) {
    ++lineno;
    Tokenizer t(line);
    if (t.done()) continue;
    std::string head = t.next();
    try {
      if (head == "program") {
        prog.name = t.next();
        have_name = true;
      } else if (head == "param") {
        std::string name = t.next();
        t.expect("=");
        std::string v = t.next();
        prog.scale_params[name] = std::stoll(v);
      } else if (head == "input") {
        std::string name = t.next();
        std::string kind = t.next();
        if (kind == "int") {
          t.expect("[");
          Int lo = resolve_const(t, "input bound").first;
          t.expect(",");
          Int hi = resolve_const(t, "input bound").first;
          t.expect("]");
          prog.input_spec.scalars.push_back({name, lo, hi});
        } else if (kind == "array") {
          t.expect("[");
          auto [len, lenp] = resolve_const(t, "array length");
          t.expect("]");
          t.expect("int");
          t.expect("[");
          Int lo = resolve_const(t, "element bound").first;
          t.expect(",");
          Int hi = resolve_const(t, "element bound").first;
          t.expect("]");
          prog.input_spec.arrays.push_back({name, lenp, len, lo, hi});
        } else {
          throw ParseError("input must be 'int' or 'array'");
        }
      } else if (head == "local") {
        std::string name = t.next();
        t.expect("array");
        t.expect("[");
        Int len = resolve_const(t, "local array length").first;
        t.expect("]");
        prog.local_arrays.push_back({name, len});
      } else if (!head.empty() && std::isdigit(static_cast<unsigned char>(head[0]))) {
        Statement s;
        s.id = static_cast<int>(std::stoll(head));
        std::string kind = t.next();
        if (kind == "assign") {
          s.kind = StmtKind::kAssign;
          s.target_var = t.next();
          if (t.peek() == "[") {
            t.next();
            ExprParser p(t);
            s.target_index = p.parse();
            t.expect("]");
          }
          t.expect(":=");
          ExprParser p(t);
          s.expr = p.parse();
        } else if (kind == "branch") {
          s.kind = StmtKind::kBranch;
          ExprParser p(t);
          s.expr = p.parse();
        } else if (kind == "add_cost") {
          s.kind = StmtKind::kAddCost;
          ExprParser p(t);
          s.expr = p.parse();
        } else if (kind == "call") {
          s.kind = StmtKind::kCall;
          t.expect("@");
          s.call_target = static_cast<int>(std::stoll(t.next()));
        } else if (kind == "return") {
          s.kind = StmtKind::kReturn;
        } else if (kind == "halt") {
          s.kind = StmtKind::kHalt;
        } else {
          throw ParseError("unknown statement kind '" + kind + "'");
        }
        if (s.kind != StmtKind::kHalt) {
          t.expect("->");
          s.out.push_back(static_cast<int>(std::stoll(t.next())));
          if (s.kind == StmtKind::kBranch) {
            t.expect(",");
            s.out.push_back(static_cast<int>(std::stoll(t.next())));
          }
        }
        if (t.peek() == "@") {
          t.next();
          std::string ann = t.next();
          if (ann != "always_sat") throw ParseError("unknown annotation @" + ann);
          s.always_sat = true;
        }
        if (!t.done()) throw ParseError("trailing input");
        prog.statements.push_back(std::move(s));
      } else {
        throw ParseError("unknown directive '" + head + "'");
      }
    } catch (const std::exception& e) {
      throw ParseError("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  if (!have_name) throw ParseError("missing 'program <name>' header");
  if (prog.statements.empty()) throw ParseError("program has no statements");
  prog.entry = prog.statements.front().id;
  return prog;
}

inline std::string serialize_program(const Program& p) {
  std::ostringstream out;
  out << "program " << p.name << "\n";
  for (const auto& [k, v] : p.scale_params) out << "param " << k << " = " << v << "\n";
  for (const auto& s : p.input_spec.scalars)
    out << "input " << s.name << " int[" << s.lo << ", " << s.hi << "]\n";
  for (const auto& a : p.input_spec.arrays) {
    out << "input " << a.name << " array[";
    if (!a.length_param.empty())
      out << a.length_param;
    else
      out << a.length;
    out << "] int[" << a.lo << ", " << a.hi << "]\n";
  }
  for (const auto& l : p.local_arrays)
    out << "local " << l.name << " array[" << l.length << "]\n";
  for (const auto& s : p.statements) {
    out << s.id << " " << to_string(s.kind);
    switch (s.kind) {
      case StmtKind::kAssign:
        out << " " << s.target_var;
        if (s.target_index) out << "[" << to_string(s.target_index) << "]";
        out << " := " << to_string(s.expr);
        break;
      case StmtKind::kBranch:
      case StmtKind::kAddCost:
        out << " " << to_string(s.expr);
        break;
      case StmtKind::kCall:
        out << " @" << s.call_target;
        break;
      default:
        break;
    }
    if (!s.out.empty()) {
      out << " -> " << s.out[0];
      for (size_t i = 1; i < s.out.size(); ++i) out << "," << s.out[i];
    }
    if (s.always_sat) out << " @always_sat";
    out << "\n";
  }
  return out.str();
}

}  // namespace wca
