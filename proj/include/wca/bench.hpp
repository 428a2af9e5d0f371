#pragma once

// Ported benchmark corpus. Each entry builds a Program for a given scale,
// knows its analytic worst cost where one is derivable, and stores a worst
// input witnessing it. Cost metrics per entry are documented in cost_note;
// where the dominant loop is the only sensible unit, cost counts its body.
// Branches are annotated always-sat only where both polarities stay
// satisfiable from every reachable state (checked exhaustively in tests at
// small scales).

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "wca/builder.hpp"
#include "wca/concrete.hpp"
#include "wca/program.hpp"

namespace wca {

struct Unsupported : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using ScaleMap = std::map<std::string, Int>;

struct BenchmarkEntry {
  std::string id;
  std::string name;
  ScaleMap default_scale;
  std::string cost_note;
  Program (*build)(const ScaleMap&);
  std::optional<Int> (*known_max)(const ScaleMap&);
  std::optional<ConcreteInput> (*witness)(const ScaleMap&);
};

namespace bench_detail {

inline Int need(const ScaleMap& s, const std::string& key) {
  auto it = s.find(key);
  if (it == s.end()) throw Unsupported("missing scale param " + key);
  return it->second;
}

inline Int need_n(const ScaleMap& s, Int min_n = 1, Int max_n = 4096) {
  Int n = need(s, "N");
  if (n < min_n || n > max_n)
    throw Unsupported("scale N=" + std::to_string(n) + " outside supported range");
  return n;
}

inline std::vector<Int> descending(Int n) {
  std::vector<Int> v(static_cast<size_t>(n));
  for (Int i = 0; i < n; ++i) v[static_cast<size_t>(i)] = n - i;
  return v;
}

inline std::vector<Int> ascending(Int n) {
  std::vector<Int> v(static_cast<size_t>(n));
  for (Int i = 0; i < n; ++i) v[static_cast<size_t>(i)] = i + 1;
  return v;
}

// ---------------------------------------------------------------- 1-1 ----

inline Program build_insertion_sort_impl(const std::string& name, Int n, bool jump_cost) {
  ProgramBuilder b(name);
  b.scale("N", n);
  b.input_array("A", "N", 1, n);
  using namespace expr;
  auto outer = b.new_label(), inner = b.new_label(), next = b.new_label(), done = b.new_label();
  b.assign("i", lit(1));
  b.bind(outer);
  b.branch_false_to(lt(var("i"), lit(n)), done);
  if (jump_cost) b.add_cost(lit(1));
  b.assign("j", var("i"));
  b.bind(inner);
  b.branch_false_to(lt(lit(0), var("j")), next);
  b.branch_false_to(lt(aref("A", var("j")), aref("A", sub(var("j"), lit(1)))), next,
                    /*always_sat=*/true);
  b.add_cost(lit(jump_cost ? 2 : 1));
  b.assign("tmp", aref("A", sub(var("j"), lit(1))));
  b.store("A", sub(var("j"), lit(1)), aref("A", var("j")));
  b.store("A", var("j"), var("tmp"));
  b.assign("j", sub(var("j"), lit(1)));
  b.jump(inner);
  b.bind(next);
  b.assign("i", add(var("i"), lit(1)));
  b.jump(outer);
  b.bind(done);
  b.halt();
  return b.finish();
}

inline Program build_insertion_sort(const ScaleMap& s) {
  return build_insertion_sort_impl("InsertionSort", need_n(s), false);
}

// ---------------------------------------------------------------- 1-2 ----

inline Program build_quicksort(const ScaleMap& s) {
  Int n = need_n(s);
  ProgramBuilder b("QuickSort");
  b.scale("N", n);
  b.input_array("A", "N", 1, n);
  b.local_array("stk_lo", 2 * n + 4);
  b.local_array("stk_hi", 2 * n + 4);
  b.local_array("lt_buf", n);
  b.local_array("md_buf", n);
  b.local_array("gt_buf", n);
  using namespace expr;
  auto loop = b.new_label(), done = b.new_label(), scan = b.new_label();
  auto less = b.new_label(), equal = b.new_label(), cont = b.new_label();
  auto wb = b.new_label(), w1 = b.new_label(), w2c = b.new_label(), w2 = b.new_label();
  auto w3c = b.new_label(), w3 = b.new_label(), rec = b.new_label();

  b.assign("sp", lit(0));
  b.store("stk_lo", var("sp"), lit(0));
  b.store("stk_hi", var("sp"), lit(n - 1));
  b.assign("sp", lit(1));
  b.bind(loop);
  b.branch_false_to(lt(lit(0), var("sp")), done);
  b.assign("sp", sub(var("sp"), lit(1)));
  b.assign("lo", aref("stk_lo", var("sp")));
  b.assign("hi", aref("stk_hi", var("sp")));
  b.assign("seg", add(sub(var("hi"), var("lo")), lit(1)));
  b.branch_false_to(lt(lit(1), var("seg")), loop);  // segments of length <= 1 return
  b.add_cost(var("seg"));
  b.assign("pivot", aref("A", var("lo")));
  b.assign("nl", lit(0));
  b.assign("nm", lit(1));
  b.assign("ng", lit(0));
  b.store("md_buf", lit(0), var("pivot"));
  b.assign("i", add(var("lo"), lit(1)));
  b.bind(scan);
  b.branch_false_to(le(var("i"), var("hi")), wb);
  b.assign("v", aref("A", var("i")));
  // bit pattern per element: 1 = less, 01 = equal, 00 = greater
  b.branch_true_to(lt(var("v"), var("pivot")), less, /*always_sat=*/true);
  b.branch_true_to(eq(var("v"), var("pivot")), equal, /*always_sat=*/true);
  b.store("gt_buf", var("ng"), var("v"));
  b.assign("ng", add(var("ng"), lit(1)));
  b.jump(cont);
  b.bind(equal);
  b.store("md_buf", var("nm"), var("v"));
  b.assign("nm", add(var("nm"), lit(1)));
  b.jump(cont);
  b.bind(less);
  b.store("lt_buf", var("nl"), var("v"));
  b.assign("nl", add(var("nl"), lit(1)));
  b.bind(cont);
  b.assign("i", add(var("i"), lit(1)));
  b.jump(scan);

  b.bind(wb);  // stable write-back: less, equal, greater
  b.assign("k", var("lo"));
  b.assign("t", lit(0));
  b.bind(w1);
  b.branch_false_to(lt(var("t"), var("nl")), w2c);
  b.store("A", var("k"), aref("lt_buf", var("t")));
  b.assign("k", add(var("k"), lit(1)));
  b.assign("t", add(var("t"), lit(1)));
  b.jump(w1);
  b.bind(w2c);
  b.assign("t", lit(0));
  b.bind(w2);
  b.branch_false_to(lt(var("t"), var("nm")), w3c);
  b.store("A", var("k"), aref("md_buf", var("t")));
  b.assign("k", add(var("k"), lit(1)));
  b.assign("t", add(var("t"), lit(1)));
  b.jump(w2);
  b.bind(w3c);
  b.assign("t", lit(0));
  b.bind(w3);
  b.branch_false_to(lt(var("t"), var("ng")), rec);
  b.store("A", var("k"), aref("gt_buf", var("t")));
  b.assign("k", add(var("k"), lit(1)));
  b.assign("t", add(var("t"), lit(1)));
  b.jump(w3);

  b.bind(rec);  // push right first so the left segment is processed first
  b.store("stk_lo", var("sp"), add(var("lo"), add(var("nl"), var("nm"))));
  b.store("stk_hi", var("sp"), var("hi"));
  b.assign("sp", add(var("sp"), lit(1)));
  b.store("stk_lo", var("sp"), var("lo"));
  b.store("stk_hi", var("sp"), sub(add(var("lo"), var("nl")), lit(1)));
  b.assign("sp", add(var("sp"), lit(1)));
  b.jump(loop);
  b.bind(done);
  b.halt();
  return b.finish();
}

// ---------------------------------------------------------------- 1-3 ----

inline Program build_heap_insertion(const ScaleMap& s) {
  Int n = need_n(s);
  ProgramBuilder b("HeapInsertion");
  b.scale("N", n);
  b.input_array("A", "N", 1, n);
  b.local_array("heap", n);
  b.local_array("par", n);
  using namespace expr;
  auto fill = b.new_label(), f1 = b.new_label(), f2 = b.new_label(), main = b.new_label();
  auto outer = b.new_label(), sift = b.new_label(), ins = b.new_label(), done = b.new_label();

  // parent index table, built without division
  b.assign("t", lit(0));
  b.bind(fill);
  b.branch_false_to(lt(var("t"), lit(n)), main);
  b.branch_false_to(lt(add(mul(lit(2), var("t")), lit(1)), lit(n)), f1);
  b.store("par", add(mul(lit(2), var("t")), lit(1)), var("t"));
  b.bind(f1);
  b.branch_false_to(lt(add(mul(lit(2), var("t")), lit(2)), lit(n)), f2);
  b.store("par", add(mul(lit(2), var("t")), lit(2)), var("t"));
  b.bind(f2);
  b.assign("t", add(var("t"), lit(1)));
  b.jump(fill);

  b.bind(main);
  b.assign("k", lit(0));
  b.assign("size", lit(0));
  b.bind(outer);
  b.branch_false_to(lt(var("k"), lit(n)), done);
  b.store("heap", var("size"), aref("A", var("k")));
  b.assign("c", var("size"));
  b.assign("size", add(var("size"), lit(1)));
  b.bind(sift);
  b.branch_false_to(lt(lit(0), var("c")), ins);
  b.assign("p", aref("par", var("c")));
  b.branch_false_to(lt(aref("heap", var("c")), aref("heap", var("p"))), ins,
                    /*always_sat=*/true);
  b.assign("tmp", aref("heap", var("p")));
  b.store("heap", var("p"), aref("heap", var("c")));
  b.store("heap", var("c"), var("tmp"));
  b.add_cost(lit(1));
  b.assign("c", var("p"));
  b.jump(sift);
  b.bind(ins);
  b.assign("k", add(var("k"), lit(1)));
  b.jump(outer);
  b.bind(done);
  b.halt();
  return b.finish();
}

// ---------------------------------------------------------------- 1-4 ----

constexpr Int kInf = 100000;

inline Program build_dijkstra(const ScaleMap& s) {
  Int n = need_n(s, 2, 64);
  ProgramBuilder b("Dijkstra");
  b.scale("N", n);
  b.scale("NN", n * n);
  b.input_array("W", "NN", 0, 63);
  b.local_array("dist", n);
  b.local_array("settled", n);
  using namespace expr;
  auto init = b.new_label(), after = b.new_label(), round = b.new_label(), done = b.new_label();
  auto scan = b.new_label(), chk = b.new_label(), take = b.new_label(), snext = b.new_label();
  auto rel = b.new_label(), unext = b.new_label(), rnext = b.new_label();

  b.assign("v", lit(0));
  b.bind(init);
  b.branch_false_to(lt(var("v"), lit(n)), after);
  b.store("dist", var("v"), lit(kInf));
  b.assign("v", add(var("v"), lit(1)));
  b.jump(init);
  b.bind(after);
  b.store("dist", lit(0), lit(0));
  b.assign("round", lit(0));
  b.bind(round);
  b.branch_false_to(lt(var("round"), lit(n)), done);
  b.assign("best", lit(-1));
  b.assign("v", lit(0));
  b.bind(scan);
  b.branch_false_to(lt(var("v"), lit(n)), chk);
  b.branch_true_to(eq(aref("settled", var("v")), lit(1)), snext);
  b.branch_true_to(lt(var("best"), lit(0)), take);
  b.branch_false_to(lt(aref("dist", var("v")), aref("dist", var("best"))), snext);
  b.bind(take);
  b.assign("best", var("v"));
  b.bind(snext);
  b.assign("v", add(var("v"), lit(1)));
  b.jump(scan);
  b.bind(chk);
  b.branch_true_to(lt(var("best"), lit(0)), done);
  b.store("settled", var("best"), lit(1));
  b.assign("u", lit(0));
  b.bind(rel);
  b.branch_false_to(lt(var("u"), lit(n)), rnext);
  b.branch_true_to(eq(aref("settled", var("u")), lit(1)), unext);
  b.branch_false_to(
      lt(add(aref("dist", var("best")), aref("W", add(mul(var("best"), lit(n)), var("u")))),
         aref("dist", var("u"))),
      unext);
  b.store("dist", var("u"),
          add(aref("dist", var("best")), aref("W", add(mul(var("best"), lit(n)), var("u")))));
  b.add_cost(lit(1));
  b.bind(unext);
  b.assign("u", add(var("u"), lit(1)));
  b.jump(rel);
  b.bind(rnext);
  b.assign("round", add(var("round"), lit(1)));
  b.jump(round);
  b.bind(done);
  b.halt();
  return b.finish();
}

// ---------------------------------------------------------------- 1-5 ----

inline Program build_bst_insertion(const ScaleMap& s) {
  Int n = need_n(s);
  ProgramBuilder b("BSTInsertion");
  b.scale("N", n);
  b.input_array("A", "N", 1, n);
  b.local_array("val", n);
  b.local_array("lft", n);
  b.local_array("rgt", n);
  using namespace expr;
  auto outer = b.new_label(), descend = b.new_label(), go_left = b.new_label();
  auto attach_r = b.new_label(), attach_l = b.new_label(), create = b.new_label();
  auto done = b.new_label();

  b.store("val", lit(0), aref("A", lit(0)));
  b.store("lft", lit(0), lit(-1));
  b.store("rgt", lit(0), lit(-1));
  b.assign("cnt", lit(1));
  b.assign("k", lit(1));
  b.bind(outer);
  b.branch_false_to(lt(var("k"), lit(n)), done);
  b.assign("v", aref("A", var("k")));
  b.assign("cur", lit(0));
  b.bind(descend);
  b.add_cost(lit(1));
  b.branch_true_to(lt(var("v"), aref("val", var("cur"))), go_left, /*always_sat=*/true);
  b.branch_true_to(lt(aref("rgt", var("cur")), lit(0)), attach_r);
  b.assign("cur", aref("rgt", var("cur")));
  b.jump(descend);
  b.bind(go_left);
  b.branch_true_to(lt(aref("lft", var("cur")), lit(0)), attach_l);
  b.assign("cur", aref("lft", var("cur")));
  b.jump(descend);
  b.bind(attach_r);
  b.store("rgt", var("cur"), var("cnt"));
  b.jump(create);
  b.bind(attach_l);
  b.store("lft", var("cur"), var("cnt"));
  b.bind(create);
  b.store("val", var("cnt"), var("v"));
  b.store("lft", var("cnt"), lit(-1));
  b.store("rgt", var("cnt"), lit(-1));
  b.assign("cnt", add(var("cnt"), lit(1)));
  b.assign("k", add(var("k"), lit(1)));
  b.jump(outer);
  b.bind(done);
  b.halt();
  return b.finish();
}

// ------------------------------------------------------------ 1-6 / 1-7 --

inline Program build_bellman_ford(const ScaleMap& s) {
  Int n = need_n(s, 2, 64);
  ProgramBuilder b("BellmanFord");
  b.scale("N", n);
  b.scale("NN", n * n);
  b.input_array("W", "NN", 0, 63);
  b.local_array("dist", n);
  b.local_array("dset", n);
  using namespace expr;
  auto init = b.new_label(), after = b.new_label(), rounds = b.new_label();
  auto eu = b.new_label(), ev = b.new_label(), evnext = b.new_label(), eunext = b.new_label();
  auto rnext = b.new_label(), done = b.new_label();

  b.assign("v", lit(0));
  b.bind(init);
  b.branch_false_to(lt(var("v"), lit(n)), after);
  b.store("dist", var("v"), lit(kInf));
  b.assign("v", add(var("v"), lit(1)));
  b.jump(init);
  b.bind(after);
  b.store("dist", lit(0), lit(0));
  b.store("dset", lit(0), lit(1));
  b.assign("r", lit(1));
  b.bind(rounds);
  b.branch_false_to(lt(var("r"), lit(n)), done);
  b.assign("u", lit(0));
  b.bind(eu);
  b.branch_false_to(lt(var("u"), lit(n)), rnext);
  b.branch_true_to(eq(aref("dset", var("u")), lit(0)), eunext);
  b.assign("t", lit(0));
  b.bind(ev);
  b.branch_false_to(lt(var("t"), lit(n)), eunext);
  b.branch_true_to(eq(var("t"), var("u")), evnext);
  b.branch_false_to(
      lt(add(aref("dist", var("u")), aref("W", add(mul(var("u"), lit(n)), var("t")))),
         aref("dist", var("t"))),
      evnext);
  b.store("dist", var("t"),
          add(aref("dist", var("u")), aref("W", add(mul(var("u"), lit(n)), var("t")))));
  b.store("dset", var("t"), lit(1));
  b.add_cost(lit(1));
  b.bind(evnext);
  b.assign("t", add(var("t"), lit(1)));
  b.jump(ev);
  b.bind(eunext);
  b.assign("u", add(var("u"), lit(1)));
  b.jump(eu);
  b.bind(rnext);
  b.assign("r", add(var("r"), lit(1)));
  b.jump(rounds);
  b.bind(done);
  b.halt();
  return b.finish();
}

inline Program build_bellman_ford_queue(const ScaleMap& s) {
  Int n = need_n(s, 2, 16);
  const Int qcap = 512;
  ProgramBuilder b("BellmanFordQueue");
  b.scale("N", n);
  b.scale("NN", n * n);
  b.input_array("W", "NN", 0, 7);
  b.local_array("dist", n);
  b.local_array("inq", n);
  b.local_array("qu", qcap);
  using namespace expr;
  auto init = b.new_label(), after = b.new_label(), loop = b.new_label();
  auto ev = b.new_label(), evnext = b.new_label(), done = b.new_label();

  b.assign("v", lit(0));
  b.bind(init);
  b.branch_false_to(lt(var("v"), lit(n)), after);
  b.store("dist", var("v"), lit(kInf));
  b.assign("v", add(var("v"), lit(1)));
  b.jump(init);
  b.bind(after);
  b.store("dist", lit(0), lit(0));
  b.assign("head", lit(0));
  b.store("qu", lit(0), lit(0));
  b.assign("tail", lit(1));
  b.store("inq", lit(0), lit(1));
  b.bind(loop);
  b.branch_false_to(lt(var("head"), var("tail")), done);
  b.assign("u", aref("qu", var("head")));
  b.assign("head", add(var("head"), lit(1)));
  b.store("inq", var("u"), lit(0));
  b.assign("t", lit(0));
  b.bind(ev);
  b.branch_false_to(lt(var("t"), lit(n)), loop);
  b.branch_true_to(eq(var("t"), var("u")), evnext);
  b.branch_false_to(
      lt(add(aref("dist", var("u")), aref("W", add(mul(var("u"), lit(n)), var("t")))),
         aref("dist", var("t"))),
      evnext);
  b.store("dist", var("t"),
          add(aref("dist", var("u")), aref("W", add(mul(var("u"), lit(n)), var("t")))));
  b.add_cost(lit(1));
  b.branch_true_to(eq(aref("inq", var("t")), lit(1)), evnext);
  b.branch_false_to(lt(var("tail"), lit(qcap)), evnext);  // queue capacity guard
  b.store("qu", var("tail"), var("t"));
  b.assign("tail", add(var("tail"), lit(1)));
  b.store("inq", var("t"), lit(1));
  b.bind(evnext);
  b.assign("t", add(var("t"), lit(1)));
  b.jump(ev);
  b.bind(done);
  b.halt();
  return b.finish();
}

// ---------------------------------------------------------------- 1-8 ----

inline Program build_hash_table(const ScaleMap& s) {
  Int n = need_n(s, 1, 16);
  Int p = need(s, "P");
  if (p < 2 || p > 64) throw Unsupported("scale P outside supported range");
  ProgramBuilder b("HashTable");
  b.scale("N", n);
  b.scale("P", p);
  b.scale("PN", p * n);
  b.input_array("A", "N", 0, 127);
  b.local_array("tbl", p * n);
  b.local_array("cnt", p);
  using namespace expr;
  auto kloop = b.new_label(), mod = b.new_label(), bucket = b.new_label();
  auto bloop = b.new_label(), found = b.new_label(), chain = b.new_label();
  auto app = b.new_label(), knext = b.new_label(), done = b.new_label();

  b.assign("k", lit(0));
  b.bind(kloop);
  b.branch_false_to(lt(var("k"), lit(n)), done);
  b.assign("v", aref("A", var("k")));
  b.assign("h", var("v"));
  b.bind(mod);  // h := v mod P by repeated subtraction
  b.branch_false_to(le(lit(p), var("h")), bucket);
  b.assign("h", sub(var("h"), lit(p)));
  b.jump(mod);
  b.bind(bucket);
  b.assign("bk", lit(0));
  b.bind(bloop);
  b.branch_false_to(lt(var("bk"), lit(p)), knext);
  b.branch_true_to(eq(var("h"), var("bk")), found);
  b.assign("bk", add(var("bk"), lit(1)));
  b.jump(bloop);
  b.bind(found);
  b.assign("sl", lit(0));
  b.bind(chain);
  b.branch_false_to(lt(var("sl"), aref("cnt", var("bk"))), app);
  b.add_cost(lit(1));
  b.branch_true_to(eq(aref("tbl", add(mul(var("bk"), lit(n)), var("sl"))), var("v")), knext);
  b.assign("sl", add(var("sl"), lit(1)));
  b.jump(chain);
  b.bind(app);
  b.store("tbl", add(mul(var("bk"), lit(n)), aref("cnt", var("bk"))), var("v"));
  b.store("cnt", var("bk"), add(aref("cnt", var("bk")), lit(1)));
  b.bind(knext);
  b.assign("k", add(var("k"), lit(1)));
  b.jump(kloop);
  b.bind(done);
  b.halt();
  return b.finish();
}

// ---------------------------------------------------------------- 2-1 ----

inline Program build_insertion_sort_badger(const ScaleMap& s) {
  return build_insertion_sort_impl("InsertionSortJump", need_n(s), true);
}

// ---------------------------------------------------------------- 3-x ----

inline Program build_is_palindrome(const ScaleMap& s) {
  Int n = need_n(s);
  ProgramBuilder b("IsPalindrome");
  b.scale("N", n);
  b.input_array("A", "N", 0, 3);
  using namespace expr;
  auto loop = b.new_label(), done = b.new_label();
  b.assign("i", lit(0));
  b.bind(loop);
  b.branch_false_to(lt(var("i"), lit(n)), done);
  b.add_cost(lit(1));
  b.branch_false_to(eq(aref("A", var("i")), aref("A", sub(sub(lit(n), lit(1)), var("i")))), done);
  b.assign("i", add(var("i"), lit(1)));
  b.jump(loop);
  b.bind(done);
  b.halt();
  return b.finish();
}

inline Program build_is_palindrome_opt(const ScaleMap& s) {
  Int n = need_n(s);
  Int half = n / 2;
  ProgramBuilder b("IsPalindromeHalf");
  b.scale("N", n);
  b.input_array("A", "N", 0, 3);
  using namespace expr;
  auto loop = b.new_label(), done = b.new_label();
  b.assign("i", lit(0));
  b.bind(loop);
  b.branch_false_to(lt(var("i"), lit(half)), done);
  b.add_cost(lit(1));
  b.branch_false_to(eq(aref("A", var("i")), aref("A", sub(sub(lit(n), lit(1)), var("i")))), done,
                    /*always_sat=*/true);
  b.assign("i", add(var("i"), lit(1)));
  b.jump(loop);
  b.bind(done);
  b.halt();
  return b.finish();
}

inline Program build_memory_fill(const ScaleMap& s) {
  Int n = need_n(s);
  ProgramBuilder b("MemoryFill");
  b.scale("N", n);
  b.input_array("A", "N", 0, 3);
  b.local_array("B", n);
  using namespace expr;
  auto loop = b.new_label(), next = b.new_label(), done = b.new_label();
  b.assign("cnt", lit(0));
  b.assign("i", lit(0));
  b.bind(loop);
  b.branch_false_to(lt(var("i"), lit(n)), done);
  b.branch_false_to(ne(aref("A", var("i")), lit(0)), next, /*always_sat=*/true);
  b.store("B", var("cnt"), aref("A", var("i")));
  b.assign("cnt", add(var("cnt"), lit(1)));
  b.add_cost(lit(1));
  b.bind(next);
  b.assign("i", add(var("i"), lit(1)));
  b.jump(loop);
  b.bind(done);
  b.halt();
  return b.finish();
}

inline Program build_alternate0(const ScaleMap& s) {
  Int n = need_n(s);
  ProgramBuilder b("Alternate0");
  b.scale("N", n);
  b.input_array("A", "N", 0, 3);
  using namespace expr;
  auto loop = b.new_label(), zero = b.new_label(), cmp = b.new_label();
  auto next = b.new_label(), done = b.new_label();
  b.assign("pz", lit(1));
  b.assign("i", lit(0));
  b.bind(loop);
  b.branch_false_to(lt(var("i"), lit(n)), done);
  b.branch_true_to(eq(aref("A", var("i")), lit(0)), zero, /*always_sat=*/true);
  b.assign("cz", lit(0));
  b.jump(cmp);
  b.bind(zero);
  b.assign("cz", lit(1));
  b.bind(cmp);
  b.branch_true_to(eq(var("cz"), var("pz")), next);  // concrete comparison
  b.add_cost(lit(6));
  b.bind(next);
  b.assign("pz", var("cz"));
  b.assign("i", add(var("i"), lit(1)));
  b.jump(loop);
  b.bind(done);
  b.halt();
  return b.finish();
}

inline Program build_graph_search(const std::string& name, Int n, bool depth_first) {
  ProgramBuilder b(name);
  b.scale("N", n);
  b.scale("NN", n * n);
  b.input_array("G", "NN", 0, 1);
  b.local_array("box", n * n + 4);  // stack or queue of pending nodes
  b.local_array("vis", n);
  using namespace expr;
  auto loop = b.new_label(), nb = b.new_label(), nn = b.new_label(), done = b.new_label();

  if (depth_first) {
    b.assign("sp", lit(0));
    b.store("box", lit(0), lit(0));
    b.assign("sp", lit(1));
    b.bind(loop);
    b.branch_false_to(lt(lit(0), var("sp")), done);
    b.assign("sp", sub(var("sp"), lit(1)));
    b.assign("u", aref("box", var("sp")));
  } else {
    b.assign("head", lit(0));
    b.store("box", lit(0), lit(0));
    b.assign("tail", lit(1));
    b.bind(loop);
    b.branch_false_to(lt(var("head"), var("tail")), done);
    b.assign("u", aref("box", var("head")));
    b.assign("head", add(var("head"), lit(1)));
  }
  b.branch_true_to(eq(aref("vis", var("u")), lit(1)), loop);
  b.store("vis", var("u"), lit(1));
  b.assign("t", lit(0));
  b.bind(nb);
  b.branch_false_to(lt(var("t"), lit(n)), loop);
  b.add_cost(lit(1));
  b.branch_false_to(eq(aref("G", add(mul(var("u"), lit(n)), var("t"))), lit(1)), nn,
                    /*always_sat=*/true);
  b.branch_true_to(eq(aref("vis", var("t")), lit(1)), nn);
  if (depth_first) {
    b.store("box", var("sp"), var("t"));
    b.assign("sp", add(var("sp"), lit(1)));
  } else {
    b.store("box", var("tail"), var("t"));
    b.assign("tail", add(var("tail"), lit(1)));
  }
  b.bind(nn);
  b.assign("t", add(var("t"), lit(1)));
  b.jump(nb);
  b.bind(done);
  b.halt();
  return b.finish();
}

inline Program build_dfs(const ScaleMap& s) { return build_graph_search("DFS", need_n(s, 1, 32), true); }
inline Program build_bfs(const ScaleMap& s) { return build_graph_search("BFS", need_n(s, 1, 32), false); }

// ------------------------------------------------------- known maxima ----

inline std::optional<Int> max_insertion_sort(const ScaleMap& s) {
  Int n = need(s, "N");
  return n * (n - 1) / 2;
}

inline std::optional<Int> max_quicksort(const ScaleMap& s) {
  Int n = need(s, "N");
  return n <= 1 ? 0 : n * (n + 1) / 2 - 1;
}

inline std::optional<Int> max_heap(const ScaleMap& s) {
  Int n = need(s, "N");
  Int total = 0;
  for (Int k = 1; k <= n; ++k) {
    Int d = 0;
    while ((Int{1} << (d + 1)) <= k) ++d;
    total += d;
  }
  return total;
}

inline std::optional<Int> max_dijkstra(const ScaleMap& s) {
  Int n = need(s, "N");
  if (7 * (n - 1) > 63) return std::nullopt;  // witness construction needs this headroom
  return n * (n - 1) / 2;
}

inline std::optional<Int> max_bst(const ScaleMap& s) {
  Int n = need(s, "N");
  return n * (n - 1) / 2;
}

inline std::optional<Int> max_none(const ScaleMap&) { return std::nullopt; }

inline std::optional<Int> max_hash_table(const ScaleMap& s) {
  Int n = need(s, "N");
  Int p = need(s, "P");
  if (p * (n - 1) > 127) return std::nullopt;  // needs N distinct same-residue values
  return n * (n - 1) / 2;
}

inline std::optional<Int> max_insertion_sort_badger(const ScaleMap& s) {
  Int n = need(s, "N");
  return n * n - 1;
}

inline std::optional<Int> max_n(const ScaleMap& s) { return need(s, "N"); }
inline std::optional<Int> max_half_n(const ScaleMap& s) { return need(s, "N") / 2; }
inline std::optional<Int> max_6n(const ScaleMap& s) { return 6 * need(s, "N"); }
inline std::optional<Int> max_n_squared(const ScaleMap& s) {
  Int n = need(s, "N");
  return n * n;
}

// ---------------------------------------------------------- witnesses ----

inline std::optional<ConcreteInput> wit_descending(const ScaleMap& s) {
  ConcreteInput in;
  in.arrays["A"] = descending(need(s, "N"));
  return in;
}

inline std::optional<ConcreteInput> wit_ascending(const ScaleMap& s) {
  ConcreteInput in;
  in.arrays["A"] = ascending(need(s, "N"));
  return in;
}

inline std::optional<ConcreteInput> wit_dijkstra(const ScaleMap& s) {
  Int n = need(s, "N");
  if (7 * (n - 1) > 63) return std::nullopt;
  // W[0][u] = 7u, W[k][u] = 7u - 7k - 1 for 1 <= k < u: every scanned pair
  // relaxes exactly once, settling order 0,1,...,N-1.
  std::vector<Int> w(static_cast<size_t>(n * n), 0);
  for (Int u = 1; u < n; ++u) w[static_cast<size_t>(u)] = 7 * u;
  for (Int k = 1; k < n; ++k)
    for (Int u = k + 1; u < n; ++u) w[static_cast<size_t>(k * n + u)] = 7 * u - 7 * k - 1;
  ConcreteInput in;
  in.arrays["W"] = std::move(w);
  return in;
}

inline std::optional<ConcreteInput> wit_none(const ScaleMap&) { return std::nullopt; }

inline std::optional<ConcreteInput> wit_hash_table(const ScaleMap& s) {
  Int n = need(s, "N");
  Int p = need(s, "P");
  if (p * (n - 1) > 127) return std::nullopt;
  std::vector<Int> v(static_cast<size_t>(n));
  for (Int i = 0; i < n; ++i) v[static_cast<size_t>(i)] = i * p;  // distinct, same bucket
  ConcreteInput in;
  in.arrays["A"] = std::move(v);
  return in;
}

inline std::optional<ConcreteInput> wit_zeros(const ScaleMap& s) {
  ConcreteInput in;
  in.arrays["A"] = std::vector<Int>(static_cast<size_t>(need(s, "N")), 0);
  return in;
}

inline std::optional<ConcreteInput> wit_ones(const ScaleMap& s) {
  ConcreteInput in;
  in.arrays["A"] = std::vector<Int>(static_cast<size_t>(need(s, "N")), 1);
  return in;
}

inline std::optional<ConcreteInput> wit_alternating(const ScaleMap& s) {
  Int n = need(s, "N");
  std::vector<Int> v(static_cast<size_t>(n));
  for (Int i = 0; i < n; ++i) v[static_cast<size_t>(i)] = (i % 2 == 0) ? 1 : 0;
  ConcreteInput in;
  in.arrays["A"] = std::move(v);
  return in;
}

inline std::optional<ConcreteInput> wit_full_graph(const ScaleMap& s) {
  Int n = need(s, "N");
  ConcreteInput in;
  in.arrays["G"] = std::vector<Int>(static_cast<size_t>(n * n), 1);
  return in;
}

}  // namespace bench_detail

inline const std::vector<BenchmarkEntry>& registry() {
  using namespace bench_detail;
  static const std::vector<BenchmarkEntry> entries = {
      {"1-1", "InsertionSort", {{"N", 16}}, "1 per element shift", build_insertion_sort,
       max_insertion_sort, wit_descending},
      {"1-2", "QuickSort", {{"N", 16}}, "segment length per call on segments of length >= 2",
       build_quicksort, max_quicksort, wit_descending},
      {"1-3", "HeapInsertion", {{"N", 16}}, "1 per sift-up swap", build_heap_insertion, max_heap,
       wit_descending},
      {"1-4", "Dijkstra", {{"N", 8}}, "1 per successful relaxation", build_dijkstra,
       max_dijkstra, wit_dijkstra},
      {"1-5", "BSTInsertion", {{"N", 16}}, "1 per comparison during descent", build_bst_insertion,
       max_bst, wit_ascending},
      {"1-6", "BellmanFord", {{"N", 8}}, "1 per successful relaxation", build_bellman_ford,
       max_none, wit_none},
      {"1-7", "BellmanFordQueue", {{"N", 8}}, "1 per successful relaxation",
       build_bellman_ford_queue, max_none, wit_none},
      {"1-8", "HashTable", {{"N", 8}, {"P", 13}}, "1 per chain comparison on insert",
       build_hash_table, max_hash_table, wit_hash_table},
      {"2-1", "InsertionSortJump", {{"N", 16}}, "control-flow jumps: 1 per outer, 2 per shift",
       build_insertion_sort_badger, max_insertion_sort_badger, wit_descending},
      {"3-1", "IsPalindrome", {{"N", 20}}, "1 per comparison, full scan with early exit",
       build_is_palindrome, max_n, wit_zeros},
      {"3-2", "IsPalindromeHalf", {{"N", 20}}, "1 per comparison over floor(N/2) pairs",
       build_is_palindrome_opt, max_half_n, wit_zeros},
      {"3-3", "MemoryFill", {{"N", 20}}, "1 per copied non-zero element", build_memory_fill,
       max_n, wit_ones},
      {"3-4", "Alternate0", {{"N", 20}}, "6 per zero/non-zero transition", build_alternate0,
       max_6n, wit_alternating},
      {"3-5", "DFS", {{"N", 10}}, "1 per adjacency probe of visited nodes", build_dfs,
       max_n_squared, wit_full_graph},
      {"3-6", "BFS", {{"N", 10}}, "1 per adjacency probe of visited nodes", build_bfs,
       max_n_squared, wit_full_graph},
  };
  return entries;
}

inline const BenchmarkEntry& find_benchmark(const std::string& id_or_name) {
  for (const auto& e : registry())
    if (e.id == id_or_name || e.name == id_or_name) return e;
  throw NotFound("unknown benchmark '" + id_or_name + "'");
}

inline ScaleMap merged_scale(const BenchmarkEntry& e, const ScaleMap& overrides) {
  ScaleMap s = e.default_scale;
  for (const auto& [k, v] : overrides) s[k] = v;
  return s;
}

inline Program build_benchmark(const BenchmarkEntry& e, const ScaleMap& overrides = {}) {
  return e.build(merged_scale(e, overrides));
}

}  // namespace wca
