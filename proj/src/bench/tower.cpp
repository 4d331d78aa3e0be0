#include <random>

#include "inctype/bench.hpp"
#include "inctype/reference.hpp"

namespace inctype {

namespace {

using namespace bare;

Type list_t() { return Type::list(Type::num()); }
Type pair_t() { return Type::prod(list_t(), list_t()); }
Type split_t() { return Type::arrow(list_t(), pair_t()); }
Type merge_t() { return Type::arrow(pair_t(), list_t()); }
Type sort_t() { return Type::arrow(list_t(), list_t()); }

// Recursive calls go through an ascribed hole.
BareExpr self(Type t) { return asc(hole(), std::move(t)); }

BareExpr split_impl() {
  BareExpr rec_call = ap(self(split_t()), var("rest"));
  return lam(Binding{"xs"}, list_t(),
             case_(var("xs"), pair(nil(), nil()), Binding{"x"}, Binding{"rest"},
                   pair(cons(var("x"), snd(rec_call)), fst(rec_call))));
}

BareExpr merge_impl() {
  BareExpr inner = case_(snd(var("p")), fst(var("p")), Binding{"y"}, Binding{"ys"},
                         cons(var("x"), cons(var("y"), ap(self(merge_t()),
                                                          pair(var("xs"), var("ys"))))));
  return lam(Binding{"p"}, pair_t(),
             case_(fst(var("p")), snd(var("p")), Binding{"x"}, Binding{"xs"}, std::move(inner)));
}

BareExpr sort_impl(int layer, int split_k, int merge_k) {
  // Past the first layer the empty case defers to the previous layer's sort.
  BareExpr on_nil = layer == 1 ? nil() : ap(var("mergesort"), nil());
  BareExpr halves = ap(var("split" + std::to_string(split_k)), var("xs"));
  BareExpr merged =
      ap(var("merge" + std::to_string(merge_k)),
         pair(ap(self(sort_t()), fst(halves)), ap(self(sort_t()), snd(halves))));
  return lam(Binding{"xs"}, list_t(),
             case_(var("xs"), std::move(on_nil), Binding{"x"}, Binding{"rest"}, std::move(merged)));
}

BareExpr let_(const std::string& x, Type t, BareExpr def, BareExpr body) {
  Type whole = Type::arrow(t, list_t());
  return ap(asc(lam(Binding{x}, std::move(t), std::move(body)), std::move(whole)), std::move(def));
}

}  // namespace

BareExpr tower_program(int layers, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<BareExpr> sorts;
  for (int i = 1; i <= layers; ++i) {
    std::uniform_int_distribution<int> pick(1, i);
    int s = pick(rng);
    int m = pick(rng);
    sorts.push_back(sort_impl(i, s, m));
  }
  BareExpr body = ap(var("mergesort"), cons(num(3), cons(num(1), cons(num(2), nil()))));
  for (int i = layers; i >= 1; --i) {
    std::string n = std::to_string(i);
    body = let_("mergesort", sort_t(), std::move(sorts[i - 1]), std::move(body));
    body = let_("merge" + n, merge_t(), merge_impl(), std::move(body));
    body = let_("split" + n, split_t(), split_impl(), std::move(body));
  }
  return body;
}

EditTrace gen_tower(int layers, std::uint64_t seed) {
  BareExpr program = tower_program(layers, seed);
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  EditTrace out;
  construction_actions(program, {}, out, &rng);
  return out;
}

namespace {

const char* const kNamePool[] = {"xs", "x", "rest", "p", "y", "ys", "mergesort", "split1",
                                 "merge1", "zz"};

std::string other_name(const std::string& avoid, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> d(0, std::size(kNamePool) - 1);
  while (true) {
    std::string n = kNamePool[d(rng)];
    if (n != avoid) return n;
  }
}

Action leaf_insert(const BareExpr& leaf) {
  switch (leaf.form) {
    case Form::Var: return Action::insert_var(leaf.name);
    case Form::Num: return Action::insert_num(leaf.num);
    case Form::Bool: return Action::insert_bool(leaf.boolean);
    default: return Action::insert_nil();
  }
}

Action other_leaf(const BareExpr& leaf, std::mt19937_64& rng) {
  switch (leaf.form) {
    case Form::Var: return Action::insert_var(other_name(leaf.name, rng));
    case Form::Num: return Action::insert_num(leaf.num + 1);
    case Form::Bool: return Action::insert_bool(!leaf.boolean);
    case Form::Nil: return Action::insert_num(0);
    default: return Action::insert_var(other_name("", rng));
  }
}

Action random_wrap(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(0, 9);
  switch (d(rng)) {
    case 0: return Action::wrap_fun();
    case 1: return Action::wrap_ap(0);
    case 2: return Action::wrap_ap(1);
    case 3: return Action::wrap_asc();
    case 4: return Action::wrap_pair(0);
    case 5: return Action::wrap_pair(1);
    case 6: return Action::wrap_fst();
    case 7: return Action::wrap_cons(0);
    case 8: return Action::wrap_cons(1);
    default: return Action::wrap_case(static_cast<int>(rng() % 3));
  }
}

}  // namespace

EditTrace gen_random_edits(const BareExpr& program, std::size_t pairs, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Path> paths = all_paths(program);
  std::uniform_int_distribution<std::size_t> pick(0, paths.size() - 1);
  EditTrace out;
  for (std::size_t n = 0; n < pairs; ++n) {
    const Path& p = paths[pick(rng)];
    const BareExpr& node = at_path(program, p);
    enum Kind { Leaf, Binder, Wrap, Unwrap };
    std::vector<Kind> kinds{Wrap};
    if (arity(node.form) == 0) kinds.push_back(Leaf);
    for (const Binding& b : node.binders)
      if (binder_count(node.form) > 0 && !b.is_hole()) {
        kinds.push_back(Binder);
        break;
      }
    if (arity(node.form) == 1) kinds.push_back(Unwrap);
    Kind k = kinds[rng() % kinds.size()];
    switch (k) {
      case Leaf:
        if (node.form == Form::Hole) {
          out.push_back({p, other_leaf(node, rng)});
          out.push_back({p, Action::del()});
        } else {
          out.push_back({p, Action::del()});
          out.push_back({p, other_leaf(node, rng)});
          out.push_back({p, Action::del()});
          out.push_back({p, leaf_insert(node)});
        }
        break;
      case Binder: {
        std::vector<int> slots;
        for (int s = 0; s < binder_count(node.form); ++s)
          if (!node.binders[s].is_hole()) slots.push_back(s);
        int s = slots[rng() % slots.size()];
        out.push_back({p, Action::delete_binder(s)});
        out.push_back({p, Action::insert_binder(Binding{other_name(node.binders[s].name, rng)}, s)});
        out.push_back({p, Action::delete_binder(s)});
        out.push_back({p, Action::insert_binder(node.binders[s], s)});
        break;
      }
      case Wrap: {
        Action w = random_wrap(rng);
        out.push_back({p, w});
        out.push_back({p, Action::unwrap(w.child)});
        break;
      }
      case Unwrap:
        out.push_back({p, Action::unwrap(0)});
        switch (node.form) {
          case Form::Lam:
            out.push_back({p, Action::wrap_fun()});
            if (!node.surface.is_unknown()) out.push_back({p, Action::set_ann(node.surface)});
            if (!node.binders[0].is_hole()) out.push_back({p, Action::insert_binder(node.binders[0])});
            break;
          case Form::Asc:
            out.push_back({p, Action::wrap_asc()});
            if (!node.surface.is_unknown()) out.push_back({p, Action::set_asc(node.surface)});
            break;
          case Form::Fst:
            out.push_back({p, Action::wrap_fst()});
            break;
          default:
            out.push_back({p, Action::wrap_snd()});
            break;
        }
        break;
    }
  }
  return out;
}

}  // namespace inctype
