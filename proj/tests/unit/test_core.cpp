#include "doctest.h"
#include "support/fuzz.hpp"

using namespace inctype;

namespace {

const TypeOpt kNone = std::nullopt;
const Type kUnk = Type::unknown();
const Type kNum = Type::num();
const Type kBool = Type::boolean();

}  // namespace

TEST_CASE("types: printing and structural equality") {
  Type t = Type::arrow(kBool, kNum);
  CHECK(to_string(t) == "(arrow bool num)");
  CHECK(to_string(Type::list(Type::prod(kUnk, kNum))) == "(list (prod ? num))");
  CHECK(to_string(kNone) == "none");
  CHECK(t == parse_type("(arrow bool num)"));
  CHECK(t != Type::arrow(kNum, kNum));
  CHECK(Type::list(kNum) != Type::prod(kNum, kNum));
  CHECK(t.size() == 3);
}

TEST_CASE("syntax: canonical text round-trips") {
  const char* texts[] = {
      "?",
      "nil",
      "(lam x (arrow bool num) (ap (var x) (num 1)))",
      "(asc (pair (num -4) (bool false)) (prod num bool))",
      "(case (var xs) nil hd ? (cons (var hd) (fst ?)))",
      "(lam ? ? (snd ?))",
  };
  for (const char* t : texts) CHECK(print(parse_expr(t)) == t);

  BareExpr e = parse_expr("(lam x (arrow bool num) (ap (var x) (num 1)))");
  CHECK(e.form == Form::Lam);
  CHECK(e.binders[0].name == "x");
  CHECK(e.surface == Type::arrow(kBool, kNum));
  CHECK(e.kids[0].form == Form::Ap);
  CHECK(parse_expr("?").form == Form::Hole);
  CHECK(parse_expr("  ; comment\n (var y) ") == bare::var("y"));
}

TEST_CASE("syntax: parse errors carry an offset") {
  CHECK_THROWS_AS(parse_expr("(ap ?)"), ParseError);
  CHECK_THROWS_AS(parse_expr("(var lam)"), ParseError);
  CHECK_THROWS_AS(parse_expr("? ?"), ParseError);
  CHECK_THROWS_AS(parse_type("(arrow num)"), ParseError);
  try {
    parse_expr("(lam x num (var))");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.offset() > 10);
  }
}

TEST_CASE("syntax: random expressions round-trip through text") {
  fuzz::Rng rng(11);
  for (int i = 0; i < 1000; ++i) {
    BareExpr e = fuzz::random_program(rng, fuzz::uniform(rng, 1, 60));
    std::string text = print(e);
    BareExpr back = parse_expr(text);
    REQUIRE(back == e);
    CHECK(print(back) == text);
  }
}

TEST_CASE("syntax: structural equality agrees with canonical text") {
  fuzz::Rng rng(12);
  std::vector<AnnExpr> pool;
  for (int i = 0; i < 40; ++i) pool.push_back(mark_program(fuzz::random_program(rng, fuzz::uniform(rng, 1, 6))));
  for (int i = 0; i < 1000; ++i) {
    AnnExpr a = pool[rng() % pool.size()];
    AnnExpr b = pool[rng() % pool.size()];
    if (fuzz::coin(rng, 0.3)) b.syn_dirty = !b.syn_dirty;
    CHECK((a == b) == (print_decorated(a) == print_decorated(b)));
  }
}

TEST_CASE("syntax: paths") {
  BareExpr e = parse_expr("(lam x ? (ap (var x) (num 1)))");
  CHECK(at_path(e, {0, 1}) == bare::num(1));
  CHECK(path_to_string({0, 1}) == "1.2");
  CHECK(path_to_string({}).empty());
  CHECK(parse_path("1.2") == Path{0, 1});
  CHECK(all_paths(e).size() == node_count(e));
  CHECK(valid_path(e, {0, 0}));
  CHECK_FALSE(valid_path(e, {1}));
  CHECK_THROWS_AS(at_path(e, {0, 2}), PathError);
}

TEST_CASE("syntax: erase and strip_dirty") {
  AnnExpr p = mark_program(parse_expr("(lam x (arrow bool num) (ap (var x) (num 1)))"));
  CHECK(print(erase(p)) == "(lam x (arrow bool num) (ap (var x) (num 1)))");
  CHECK(erase(mark_program(bare::hole())) == bare::hole());
  CHECK(strip_dirty(p) == p);
  AnnExpr d = p;
  d.kids[0].ana_dirty = true;
  d.surface_dirty = true;
  CHECK(has_dirty(d));
  CHECK(strip_dirty(d) == p);
  CHECK(erase(d) == erase(strip_dirty(d)));

  fuzz::Rng rng(13);
  for (int i = 0; i < 500; ++i) {
    BareExpr e = fuzz::random_program(rng, fuzz::uniform(rng, 1, 200));
    REQUIRE(erase(mark_program(e)) == e);
  }
}

TEST_CASE("actions: text format") {
  CHECK(print(Action::insert_var("x")) == "insert-var x");
  CHECK(print(Action::wrap_ap(0)) == "wrap-ap 1");
  CHECK(print(Action::set_ann(Type::arrow(kBool, kNum))) == "set-ann (arrow bool num)");
  CHECK(print(Action::insert_binder(Binding{"hd"}, 1)) == "insert-binder hd 2");
  CHECK(print(LocalizedAction{{1, 0}, Action::del()}) == "delete @ 2.1");
  CHECK(print(LocalizedAction{{}, Action::del()}) == "delete");

  LocalizedAction la = parse_localized("insert-var x @ 1.2");
  CHECK(la.path == Path{0, 1});
  CHECK(la.action == Action::insert_var("x"));
  CHECK(parse_localized("set-asc (prod num ?) @ 3").action == Action::set_asc(Type::prod(kNum, kUnk)));
  CHECK(parse_action("insert-bool false") == Action::insert_bool(false));
  CHECK(parse_action("delete-binder 2") == Action::delete_binder(1));
  CHECK(parse_action("wrap-case 3") == Action::wrap_case(2));
  CHECK_THROWS(parse_action("wrap-ap 0"));
  CHECK_THROWS(parse_action("jump"));

  EditTrace t = parse_trace("# comment\n\ninsert-var x\nwrap-ap 1\ninsert-num 1 @ 2\n");
  REQUIRE(t.size() == 3);
  CHECK(parse_trace(print_trace(t)) == t);
}

TEST_CASE("side conditions: context lookup") {
  Ctx empty;
  CHECK(ctx_lookup(empty, "x").mark == Mark::Err);
  CHECK(ctx_lookup(empty, "x").type == TypeOpt(kUnk));
  Ctx g{{"x", kNum}};
  CHECK(ctx_lookup(g, "x").mark == Mark::Ok);
  CHECK(ctx_lookup(g, "x").type == TypeOpt(kNum));
  Ctx shadow{{"x", kNum}, {"x", kBool}};
  CHECK(ctx_lookup(shadow, "x").type == TypeOpt(kBool));
  CHECK(ctx_lookup_binding(g, "").mark == Mark::Err);
  CHECK(ctx_lookup_binding(g, "").type == TypeOpt(kUnk));
  CHECK(ctx_lookup_binding(empty, "x").mark == Mark::Err);
  CHECK(ctx_lookup_binding(g, "x").type == TypeOpt(kNum));
}

TEST_CASE("side conditions: matched judgments") {
  Matched2 m = matched_arrow(kUnk);
  CHECK(m.mark == Mark::Ok);
  CHECK(m.first == TypeOpt(kUnk));
  CHECK(m.second == TypeOpt(kUnk));
  m = matched_arrow(kNone);
  CHECK(m.mark == Mark::Ok);
  CHECK(!m.first);
  CHECK(!m.second);
  m = matched_arrow(kNum);
  CHECK(m.mark == Mark::Err);
  CHECK(m.first == TypeOpt(kUnk));
  m = matched_arrow(Type::arrow(kBool, kNum));
  CHECK(m.mark == Mark::Ok);
  CHECK(m.first == TypeOpt(kBool));
  CHECK(m.second == TypeOpt(kNum));

  m = matched_prod(Type::prod(kNum, kBool));
  CHECK(m.mark == Mark::Ok);
  CHECK(m.second == TypeOpt(kBool));
  CHECK(matched_prod(kUnk).first == TypeOpt(kUnk));
  CHECK(matched_prod(Type::list(kNum)).mark == Mark::Err);

  CHECK(matched_list(kUnk).elem == TypeOpt(kUnk));
  CHECK(matched_list(Type::list(kBool)).elem == TypeOpt(kBool));
  Matched1 l = matched_list(Type::arrow(kNum, kNum));
  CHECK(l.mark == Mark::Err);
  CHECK(l.elem == TypeOpt(kUnk));
}

TEST_CASE("side conditions: meet, consistency and fun_syn") {
  CHECK(mark_meet(Mark::Ok, Mark::Ok) == Mark::Ok);
  CHECK(mark_meet(Mark::Ok, Mark::Err) == Mark::Err);
  CHECK(mark_meet(Mark::Err, Mark::Err) == Mark::Err);

  CHECK(consistency(kNum, kBool) == Mark::Err);
  CHECK(consistency(Type::arrow(kUnk, kNum), Type::arrow(kBool, kNum)) == Mark::Ok);
  CHECK(consistency(Type::arrow(kNum, kNum), Type::arrow(kBool, kNum)) == Mark::Err);
  CHECK(consistency(kNone, kNum) == Mark::Ok);
  CHECK(consistency(kNum, kNone) == Mark::Ok);

  fuzz::Rng rng(14);
  for (int i = 0; i < 500; ++i) {
    Type a = fuzz::random_type(rng, 3);
    Type b = fuzz::random_type(rng, 3);
    CHECK(consistency(kUnk, a) == Mark::Ok);
    CHECK(consistency(a, kUnk) == Mark::Ok);
    CHECK(consistency(a, a) == Mark::Ok);
    CHECK(consistency(a, b) == consistency(b, a));
    Matched2 m = matched_arrow(Type::arrow(a, b));
    CHECK(m.first == TypeOpt(a));
    CHECK(m.second == TypeOpt(b));
    CHECK(fun_syn(kNone, a, b) == TypeOpt(Type::arrow(a, b)));
    CHECK(fun_syn(a, a, b) == kNone);
  }
  CHECK(fun_syn(kNone, kNum, kNone) == kNone);
  CHECK(fun_syn(kNone, Type::arrow(kBool, kNum), kNum) ==
        TypeOpt(Type::arrow(Type::arrow(kBool, kNum), kNum)));
  for (Mark a : {Mark::Ok, Mark::Err})
    for (Mark b : {Mark::Ok, Mark::Err}) {
      CHECK(mark_meet(a, b) == mark_meet(b, a));
      CHECK(mark_meet(a, a) == a);
      CHECK(mark_meet(a, Mark::Ok) == a);
      for (Mark c : {Mark::Ok, Mark::Err})
        CHECK(mark_meet(mark_meet(a, b), c) == mark_meet(a, mark_meet(b, c)));
    }
}
