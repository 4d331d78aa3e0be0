#pragma once

// Test-side generators and oracles shared by the unit and acceptance suites.

#include <algorithm>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "inctype/engine.hpp"
#include "inctype/reference.hpp"

namespace fuzz {

using namespace inctype;
using Rng = std::mt19937_64;

inline const std::vector<std::string>& names() {
  static const std::vector<std::string> pool{"x", "y", "z"};
  return pool;
}

inline int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
inline bool coin(Rng& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }
inline std::string any_name(Rng& rng) { return names()[uniform(rng, 0, static_cast<int>(names().size()) - 1)]; }

inline Type random_type(Rng& rng, int depth = 2) {
  int k = uniform(rng, 0, depth > 0 ? 5 : 2);
  switch (k) {
    case 0: return Type::unknown();
    case 1: return Type::num();
    case 2: return Type::boolean();
    case 3: return Type::arrow(random_type(rng, depth - 1), random_type(rng, depth - 1));
    case 4: return Type::prod(random_type(rng, depth - 1), random_type(rng, depth - 1));
    default: return Type::list(random_type(rng, depth - 1));
  }
}

inline Binding random_binding(Rng& rng) { return coin(rng, 0.15) ? Binding{} : Binding{any_name(rng)}; }

// A random program with about `budget` nodes.
inline BareExpr random_program(Rng& rng, int budget) {
  using namespace bare;
  if (budget <= 1) {
    switch (uniform(rng, 0, 4)) {
      case 0: return hole();
      case 1: return var(any_name(rng));
      case 2: return num(uniform(rng, 0, 9));
      case 3: return boolean(coin(rng));
      default: return nil();
    }
  }
  int rest = budget - 1;
  auto split2 = [&](auto make) {
    int l = uniform(rng, 1, std::max(1, rest - 1));
    return make(random_program(rng, l), random_program(rng, std::max(1, rest - l)));
  };
  switch (uniform(rng, 0, 8)) {
    case 0: return lam(random_binding(rng), random_type(rng), random_program(rng, rest));
    case 1: return split2([](BareExpr a, BareExpr b) { return ap(std::move(a), std::move(b)); });
    case 2: return asc(random_program(rng, rest), random_type(rng));
    case 3: return split2([](BareExpr a, BareExpr b) { return pair(std::move(a), std::move(b)); });
    case 4: return fst(random_program(rng, rest));
    case 5: return snd(random_program(rng, rest));
    case 6: return split2([](BareExpr a, BareExpr b) { return cons(std::move(a), std::move(b)); });
    case 7: {
      int a = uniform(rng, 1, std::max(1, rest / 3));
      int b = uniform(rng, 1, std::max(1, rest / 3));
      int c = std::max(1, rest - a - b);
      return case_(random_program(rng, a), random_program(rng, b), random_binding(rng),
                   random_binding(rng), random_program(rng, c));
    }
    default: return lam(random_binding(rng), random_type(rng), random_program(rng, rest));
  }
}

// A uniformly located action applicable to `p`. Wraps are suppressed once the
// program reaches `max_nodes`.
inline LocalizedAction random_action(Rng& rng, const BareExpr& p, std::size_t max_nodes) {
  std::vector<Path> paths = all_paths(p);
  Path at = paths[uniform(rng, 0, static_cast<int>(paths.size()) - 1)];
  const BareExpr& t = at_path(p, at);
  bool may_grow = node_count(p) + 3 <= max_nodes;
  std::vector<std::function<Action()>> options;

  if (t.form == Form::Hole) {
    options.push_back([&] { return Action::insert_var(any_name(rng)); });
    options.push_back([&] {
      switch (uniform(rng, 0, 2)) {
        case 0: return Action::insert_num(uniform(rng, 0, 9));
        case 1: return Action::insert_bool(coin(rng));
        default: return Action::insert_nil();
      }
    });
  }
  if (may_grow) {
    options.push_back([&] {
      switch (uniform(rng, 0, 8)) {
        case 0: return Action::wrap_fun();
        case 1: return Action::wrap_ap(uniform(rng, 0, 1));
        case 2: return Action::wrap_asc();
        case 3: return Action::wrap_pair(uniform(rng, 0, 1));
        case 4: return Action::wrap_fst();
        case 5: return Action::wrap_snd();
        case 6: return Action::wrap_cons(uniform(rng, 0, 1));
        default: return Action::wrap_case(uniform(rng, 0, 2));
      }
    });
  }
  if (t.form != Form::Hole) options.push_back([] { return Action::del(); });
  if (arity(t.form) > 0)
    options.push_back([&] { return Action::unwrap(uniform(rng, 0, arity(t.form) - 1)); });
  if (t.form == Form::Lam) options.push_back([&] { return Action::set_ann(random_type(rng)); });
  if (t.form == Form::Asc) options.push_back([&] { return Action::set_asc(random_type(rng)); });
  if (binder_count(t.form) > 0) {
    options.push_back([&] {
      int slot = uniform(rng, 0, binder_count(t.form) - 1);
      if (t.binders[slot].is_hole()) return Action::insert_binder(Binding{any_name(rng)}, slot);
      return Action::delete_binder(slot);
    });
  }
  if (options.empty()) options.push_back([] { return Action::del(); });
  Action a = options[uniform(rng, 0, static_cast<int>(options.size()) - 1)]();
  return {at, a};
}

// The binder node and slot that lexically bind the variable node n, by walking
// up the tree.
inline std::optional<std::pair<const Node*, int>> naive_owner(const Node* n) {
  const std::string& x = n->name;
  for (const Node* child = n, *p = n->parent; p; child = p, p = p->parent) {
    if (p->form == Form::Lam && p->binders[0].name == x) return std::make_pair(p, 0);
    if (p->form == Form::Case && child->index == 2) {
      if (p->binders[1].name == x) return std::make_pair(p, 1);
      if (p->binders[0].name == x) return std::make_pair(p, 0);
    }
  }
  return std::nullopt;
}

inline void for_each_node(const Node* n, const std::function<void(const Node*)>& f) {
  f(n);
  for (const auto& k : n->kids) for_each_node(k.get(), f);
}

// Recomputes max_post for every subtree and compares with the stored field.
inline bool splay_maxima_ok(const OmOrder& om, const SplayHook* h, OmElement* out) {
  if (!h) return true;
  OmElement m = h->post;
  for (const SplayHook* c : {h->left, h->right}) {
    if (!c) continue;
    OmElement sub;
    if (!splay_maxima_ok(om, c, &sub)) return false;
    if (om.less(m, sub)) m = sub;
  }
  *out = m;
  return h->max_post == m;
}

// Empty when every occurrence's recorded owner equals the lexical one and
// every splay set's augmentation matches brute force.
inline std::optional<std::string> binder_violation(const Doc& d) {
  std::optional<std::string> bad;
  for_each_node(&d.root(), [&](const Node* n) {
    if (bad) return;
    if (n->form == Form::Var) {
      auto want = naive_owner(n);
      const BinderRecord* got = Doc::owner_of(*n);
      bool same = want ? (got && got->node == want->first && got->slot == want->second) : got == nullptr;
      if (!same) bad = "owner of " + n->name + " at " + path_to_string(d.path_of(n)) + " differs";
    }
    for (const auto& r : n->records) {
      if (!r || !r->registered) continue;
      OmElement m;
      if (!splay_maxima_ok(d.order(), r->vars.root(), &m))
        bad = "stale max_post in occurrences of " + r->name;
    }
  });
  if (bad) return bad;
  for (const std::string& x : names()) {
    OmElement m;
    const SplaySet* s = d.binders().binder_set(x);
    if (s && !splay_maxima_ok(d.order(), s->root(), &m)) return "stale max_post in binders of " + x;
    s = d.binders().free_set(x);
    if (s && !splay_maxima_ok(d.order(), s->root(), &m)) return "stale max_post in free " + x;
  }
  return std::nullopt;
}

}  // namespace fuzz
