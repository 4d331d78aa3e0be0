#include <set>
#include <sstream>

#include "doctest.h"
#include "inctype/bench.hpp"
#include "support/fuzz.hpp"

using namespace inctype;

namespace {

Doc replay(const EditTrace& t) {
  Doc d(bare::hole());
  for (const LocalizedAction& la : t) {
    d.apply(la);
    d.run_to_quiescence();
  }
  return d;
}

std::string category(ActionKind k) {
  switch (k) {
    case ActionKind::DeleteBinder: return "binder";
    case ActionKind::Unwrap: return "unwrap";
    default: return is_wrap(k) ? "wrap" : "leaf";
  }
}

}  // namespace

TEST_CASE("tower: one layer resolves its helpers") {
  Doc d = replay(gen_tower(1, 5));
  AnnExpr p = d.snapshot();
  CHECK(erase(p) == tower_program(1, 5));
  CHECK(p == mark_program(erase(p)));
  CHECK(error_count(p) == 0);
  CHECK(fuzz::binder_violation(d) == std::nullopt);
  std::set<std::string> free;
  fuzz::for_each_node(&d.root(), [&](const Node* n) {
    if (n->form == Form::Var && !Doc::owner_of(*n)) free.insert(n->name);
  });
  CHECK(free.empty());
}

TEST_CASE("tower: generation is deterministic") {
  CHECK(gen_tower(3, 9) == gen_tower(3, 9));
  CHECK(tower_program(4, 2) == tower_program(4, 2));
  CHECK(gen_random_edits(tower_program(4, 2), 50, 3) == gen_random_edits(tower_program(4, 2), 50, 3));
  CHECK_FALSE(gen_tower(3, 9) == gen_tower(3, 10));
}

TEST_CASE("tower: twenty layers shadow mergesort correctly") {
  Doc d = replay(gen_tower(20, 7));
  CHECK(erase(d.snapshot()) == tower_program(20, 7));
  CHECK(fuzz::binder_violation(d) == std::nullopt);
  std::size_t sorts = 0;
  fuzz::for_each_node(&d.root(), [&](const Node* n) {
    if (n->form == Form::Var && n->name == "mergesort") {
      ++sorts;
      CHECK(Doc::owner_of(*n) != nullptr);
    }
  });
  CHECK(sorts == 20);
  CHECK(error_count(d.snapshot()) == 0);
}

TEST_CASE("random edits: applicable, reverting, and covering every kind") {
  BareExpr program = tower_program(4, 3);
  AnnExpr baseline = mark_program(program);
  EditTrace edits = gen_random_edits(program, 500, 8);
  Doc d(program);
  BareExpr cur = program;
  std::set<std::string> kinds;
  std::size_t pairs = 0;
  for (const LocalizedAction& la : edits) {
    if (cur == program) kinds.insert(category(la.action.kind));
    REQUIRE_NOTHROW(d.apply(la));
    bare_perform_in_place(cur, la);
    d.run_to_quiescence();
    if (cur == program) {
      ++pairs;
      REQUIRE(d.snapshot() == baseline);
    }
  }
  CHECK(pairs == 500);
  CHECK(kinds == std::set<std::string>{"binder", "leaf", "unwrap", "wrap"});
}

TEST_CASE("bench: small run and CSV") {
  BenchConfig cfg;
  cfg.layers = 2;
  cfg.edits = 20;
  cfg.seed = 4;
  BenchReport r = run_bench(cfg);
  CHECK(r.rows.size() >= 40);
  CHECK(r.program_nodes == node_count(tower_program(2, 4)));
  std::string csv = to_csv(r);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  CHECK(line.rfind("# ", 0) == 0);
  std::getline(in, line);
  CHECK(line == "edit_kind,inc_time,scratch_time,node_count,steps");
  std::size_t rows = 0;
  std::string last;
  while (std::getline(in, line)) {
    if (line.rfind("# ", 0) != 0) ++rows;
    last = line;
  }
  CHECK(rows == r.rows.size());
  CHECK(last.rfind("# total_speedup=", 0) == 0);

  cfg.timer = TimerKind::Monotonic;
  BenchReport m = run_bench(cfg);
  CHECK(std::string(m.unit) == "ns");
  REQUIRE(m.rows.size() == r.rows.size());
  for (std::size_t i = 0; i < m.rows.size(); ++i) {
    CHECK(m.rows[i].edit_kind == r.rows[i].edit_kind);
    CHECK(m.rows[i].steps == r.rows[i].steps);
    CHECK(m.rows[i].node_count == r.rows[i].node_count);
  }
}
