#include <memory>

#include "doctest.h"
#include "support/fuzz.hpp"

using namespace inctype;

namespace {

// A line of n timestamps in increasing order.
struct Line {
  OmOrder om;
  std::vector<OmElement> at;
  explicit Line(int n) {
    at.push_back(om.anchor());
    for (int i = 1; i < n; ++i) at.push_back(om.insert_after(at.back()));
  }
};

std::vector<SplayHook*> entries(const SplaySet& s) {
  std::vector<SplayHook*> out;
  s.for_each([&](SplayHook* h) { out.push_back(h); });
  return out;
}

bool maxima_ok(const OmOrder& om, const SplaySet& s) {
  OmElement m;
  return fuzz::splay_maxima_ok(om, s.root(), &m);
}

}  // namespace

TEST_CASE("splay set: split and join") {
  Line line(400);
  std::mt19937_64 rng(41);
  std::vector<std::unique_ptr<SplayHook>> hooks;
  SplaySet s;
  CHECK(s.split(line.at[5]).first.empty());
  for (int i = 0; i < 100; ++i) {
    auto h = std::make_unique<SplayHook>();
    int p = 2 * i;
    h->pre = line.at[p];
    h->post = line.at[p + 1 + static_cast<int>(rng() % (399 - p))];
    s.insert(h.get());
    hooks.push_back(std::move(h));
  }
  CHECK(s.size() == 100);
  CHECK(s.check_invariants());
  CHECK(maxima_ok(line.om, s));

  for (int round = 0; round < 10000; ++round) {
    OmElement key = line.at[rng() % 400];
    auto [l, r] = s.split(key);
    for (SplayHook* h : entries(l)) REQUIRE(line.om.less(h->pre, key));
    for (SplayHook* h : entries(r)) REQUIRE_FALSE(line.om.less(h->pre, key));
    REQUIRE(maxima_ok(line.om, l));
    REQUIRE(maxima_ok(line.om, r));
    if (round % 3 == 0 && !l.empty() && !r.empty())
      CHECK_THROWS_AS(SplaySet::join(std::move(r), std::move(l)), JoinOrderViolation);
    else
      s = SplaySet::join(std::move(l), std::move(r));
    if (s.size() != 100) {
      // The halves passed to the failed join are gone; rebuild.
      s = SplaySet();
      for (auto& h : hooks) {
        h->parent = h->left = h->right = nullptr;
        s.insert(h.get());
      }
    }
    REQUIRE(s.size() == 100);
    REQUIRE(maxima_ok(line.om, s));
  }
}

TEST_CASE("splay set: lowest containing entry matches brute force") {
  Line line(600);
  std::mt19937_64 rng(42);
  // Properly nested intervals from a random bracket sequence.
  std::vector<std::unique_ptr<SplayHook>> hooks;
  std::vector<SplayHook*> open;
  SplaySet s;
  for (int i = 0; i < 600; ++i) {
    bool close = !open.empty() && (rng() % 2 || i > 600 - static_cast<int>(open.size()) - 1);
    if (close) {
      open.back()->post = line.at[i];
      s.insert(open.back());
      open.pop_back();
    } else if (i < 599) {
      hooks.push_back(std::make_unique<SplayHook>());
      hooks.back()->pre = line.at[i];
      open.push_back(hooks.back().get());
    }
  }
  REQUIRE(open.empty());
  REQUIRE(s.check_invariants());
  for (int q = 0; q < 2000; ++q) {
    int a = static_cast<int>(rng() % 599);
    int b = a + 1 + static_cast<int>(rng() % std::min(5, 599 - a));
    SplayHook* want = nullptr;
    for (auto& h : hooks)
      if (line.om.less(h->pre, line.at[a]) && line.om.less(line.at[b], h->post) &&
          (!want || line.om.less(want->pre, h->pre)))
        want = h.get();
    SplayHook* got = s.lowest_containing(line.at[a], line.at[b]);
    REQUIRE(got == want);
    if (got) CHECK(s.root() == got);
    REQUIRE(maxima_ok(line.om, s));
  }
  for (std::size_t i = 0; i < hooks.size(); i += 2) s.erase(hooks[i].get());
  CHECK(s.size() == hooks.size() / 2);
  CHECK(maxima_ok(line.om, s));
}

TEST_CASE("binder index: capture and release") {
  // lam x [0, 9] ( ap [1, 8] ( var x [2, 3] ) ( lam x [4, 7] ( var x [5, 6] ) ) ), free x at [10, 11]
  Line line(12);
  BinderIndex idx;
  auto var = [&](int pre) {
    auto v = std::make_unique<VarEntry>();
    v->name = "x";
    v->pre = line.at[pre];
    v->post = line.at[pre + 1];
    return v;
  };
  auto binder = [&](int pre, int post) {
    auto b = std::make_unique<BinderRecord>();
    b->name = "x";
    b->pre = line.at[pre];
    b->post = line.at[post];
    return b;
  };
  auto v1 = var(2), v2 = var(5), v3 = var(10);
  for (VarEntry* v : {v1.get(), v2.get(), v3.get()}) CHECK(idx.bind_variable(*v) == nullptr);
  CHECK(idx.free_set("x")->size() == 3);

  auto inner = binder(4, 7);
  std::vector<VarEntry*> got = idx.register_binder(*inner);
  REQUIRE(got.size() == 1);
  CHECK(got[0] == v2.get());
  CHECK(v2->owner == inner.get());

  auto outer = binder(0, 9);
  got = idx.register_binder(*outer);
  REQUIRE(got.size() == 1);
  CHECK(got[0] == v1.get());
  CHECK(v2->owner == inner.get());
  CHECK(v3->owner == nullptr);
  CHECK(idx.check_invariants());

  auto empty = binder(11, 11);
  empty->post = line.om.insert_after(line.at[11]);
  // No occurrence starts strictly inside this scope.
  CHECK(idx.register_binder(*empty).empty());
  CHECK(idx.unregister_binder(*empty).empty());
  CHECK(v3->owner == nullptr);

  got = idx.unregister_binder(*inner);
  REQUIRE(got.size() == 1);
  CHECK(v2->owner == outer.get());
  CHECK(idx.lowest_containing_binder("x", line.at[5], line.at[6]) == outer.get());
  got = idx.unregister_binder(*outer);
  CHECK(got.size() == 2);
  CHECK(idx.free_set("x")->size() == 3);
  idx.unbind_variable(*v1);
  CHECK(idx.free_set("x")->size() == 2);
  CHECK(idx.check_invariants());
}

TEST_CASE("binder index: documents agree with lexical resolution") {
  CHECK(fuzz::binder_violation(Doc(parse_expr("(lam x ? (lam x ? (var x)))"))) == std::nullopt);
  Doc d(parse_expr("(ap (lam x ? (var x)) (lam x ? (var x)))"));
  const Node* a = d.node_at({0, 0});
  const Node* b = d.node_at({1, 0});
  REQUIRE(Doc::owner_of(*a));
  REQUIRE(Doc::owner_of(*b));
  CHECK(Doc::owner_of(*a)->node == d.node_at({0}));
  CHECK(Doc::owner_of(*b)->node == d.node_at({1}));

  fuzz::Rng rng(43);
  for (int i = 0; i < 1000; ++i) {
    Doc doc(fuzz::random_program(rng, fuzz::uniform(rng, 1, 80)));
    REQUIRE(fuzz::binder_violation(doc) == std::nullopt);
    CHECK(doc.binders().check_invariants());
  }
}

TEST_CASE("binder index: timestamps nest like the tree") {
  fuzz::Rng rng(44);
  for (int i = 0; i < 20; ++i) {
    Doc d(fuzz::random_program(rng, 1000));
    std::vector<const Node*> nodes;
    fuzz::for_each_node(&d.root(), [&](const Node* n) { nodes.push_back(n); });
    const OmOrder& om = d.order();
    for (int q = 0; q < 2000; ++q) {
      const Node* a = nodes[rng() % nodes.size()];
      const Node* b = nodes[rng() % nodes.size()];
      bool ancestor = false;
      for (const Node* p = b->parent; p; p = p->parent) ancestor |= p == a;
      bool contains = om.less(a->pre, b->pre) && om.less(b->post, a->post);
      REQUIRE(contains == ancestor);
      CHECK(om.less(a->pre, a->post));
    }
  }
}
