#include <algorithm>
#include <functional>

#include "inctype/reference.hpp"

namespace inctype {

static int wrap_arity_limit(ActionKind k) {
  switch (k) {
    case ActionKind::WrapAp:
    case ActionKind::WrapPair:
    case ActionKind::WrapCons:
      return 2;
    case ActionKind::WrapCase:
      return 3;
    default:
      return 1;
  }
}

void check_applicable(const BareExpr& target, const Action& a) {
  auto fail = [&](const std::string& why) {
    throw ActionInapplicable(print(a) + ": " + why + " (target is " + form_name(target.form) + ")");
  };
  switch (a.kind) {
    case ActionKind::InsertVar:
      if (!valid_identifier(a.name)) fail("invalid identifier");
      [[fallthrough]];
    case ActionKind::InsertNum:
    case ActionKind::InsertBool:
    case ActionKind::InsertNil:
      if (target.form != Form::Hole) fail("target is not a hole");
      return;
    case ActionKind::Delete:
      return;
    case ActionKind::Unwrap:
      if (a.child < 0 || a.child >= arity(target.form)) fail("no such child");
      return;
    case ActionKind::SetAnn:
      if (target.form != Form::Lam) fail("target is not a function");
      return;
    case ActionKind::SetAsc:
      if (target.form != Form::Asc) fail("target is not an ascription");
      return;
    case ActionKind::InsertBinder:
      if (a.slot < 0 || a.slot >= binder_count(target.form)) fail("no such binder");
      if (!target.binders[a.slot].is_hole()) fail("binder is not a hole");
      if (!a.name.empty() && !valid_identifier(a.name)) fail("invalid identifier");
      return;
    case ActionKind::DeleteBinder:
      if (a.slot < 0 || a.slot >= binder_count(target.form)) fail("no such binder");
      return;
    default:
      if (a.child < 0 || a.child >= wrap_arity_limit(a.kind)) fail("no such wrap position");
      return;
  }
}

static BareExpr& navigate(BareExpr& e, const Path& p) {
  BareExpr* cur = &e;
  for (int i : p) {
    if (i < 0 || i >= static_cast<int>(cur->kids.size()))
      throw PathError("no child " + std::to_string(i + 1) + " at " + form_name(cur->form));
    cur = &cur->kids[i];
  }
  return *cur;
}

static void perform_at(BareExpr& target, const Action& a) {
  check_applicable(target, a);
  switch (a.kind) {
    case ActionKind::InsertVar:
      target = bare::var(a.name);
      return;
    case ActionKind::InsertNum:
      target = bare::num(a.num);
      return;
    case ActionKind::InsertBool:
      target = bare::boolean(a.boolean);
      return;
    case ActionKind::InsertNil:
      target = bare::nil();
      return;
    case ActionKind::Delete:
      target = bare::hole();
      return;
    case ActionKind::Unwrap: {
      BareExpr kept = std::move(target.kids[a.child]);
      target = std::move(kept);
      return;
    }
    case ActionKind::SetAnn:
    case ActionKind::SetAsc:
      target.surface = a.type;
      return;
    case ActionKind::InsertBinder:
      target.binders[a.slot] = Binding{a.name};
      return;
    case ActionKind::DeleteBinder:
      target.binders[a.slot] = Binding::hole();
      return;
    default: {
      BareExpr w;
      w.form = wrap_form(a.kind);
      w.kids.resize(arity(w.form));
      w.kids[a.child] = std::move(target);
      target = std::move(w);
      return;
    }
  }
}

void bare_perform_in_place(BareExpr& e, const LocalizedAction& a) {
  perform_at(navigate(e, a.path), a.action);
}

BareExpr bare_perform(BareExpr e, const LocalizedAction& a) {
  bare_perform_in_place(e, a);
  return e;
}

void construction_actions(const BareExpr& to, const Path& path, EditTrace& out,
                          std::mt19937_64* rng) {
  switch (to.form) {
    case Form::Hole:
      return;
    case Form::Var:
      out.push_back({path, Action::insert_var(to.name)});
      return;
    case Form::Num:
      out.push_back({path, Action::insert_num(to.num)});
      return;
    case Form::Bool:
      out.push_back({path, Action::insert_bool(to.boolean)});
      return;
    case Form::Nil:
      out.push_back({path, Action::insert_nil()});
      return;
    default:
      break;
  }
  Action wrap;
  switch (to.form) {
    case Form::Lam: wrap = Action::wrap_fun(); break;
    case Form::Ap: wrap = Action::wrap_ap(0); break;
    case Form::Asc: wrap = Action::wrap_asc(); break;
    case Form::Pair: wrap = Action::wrap_pair(0); break;
    case Form::Fst: wrap = Action::wrap_fst(); break;
    case Form::Snd: wrap = Action::wrap_snd(); break;
    case Form::Cons: wrap = Action::wrap_cons(0); break;
    default: wrap = Action::wrap_case(0); break;
  }
  out.push_back({path, wrap});

  std::vector<std::function<void()>> tasks;
  if (to.form == Form::Lam && !to.surface.is_unknown())
    tasks.emplace_back([&] { out.push_back({path, Action::set_ann(to.surface)}); });
  if (to.form == Form::Asc && !to.surface.is_unknown())
    tasks.emplace_back([&] { out.push_back({path, Action::set_asc(to.surface)}); });
  for (int s = 0; s < binder_count(to.form); ++s)
    if (!to.binders[s].is_hole())
      tasks.emplace_back([&, s] { out.push_back({path, Action::insert_binder(to.binders[s], s)}); });
  for (std::size_t i = 0; i < to.kids.size(); ++i)
    tasks.emplace_back([&, i] {
      Path child = path;
      child.push_back(static_cast<int>(i));
      construction_actions(to.kids[i], child, out, rng);
    });
  if (rng) std::shuffle(tasks.begin(), tasks.end(), *rng);
  for (auto& t : tasks) t();
}

EditTrace action_sequence_between(const BareExpr& from, const BareExpr& to) {
  (void)from;
  EditTrace out;
  out.push_back({{}, Action::del()});
  construction_actions(to, {}, out);
  return out;
}

Zipper::Zipper(BareExpr root) : focus_(std::move(root)) {}

void Zipper::up() {
  Frame f = std::move(frames_.back());
  frames_.pop_back();
  f.parent.kids[f.index] = std::move(focus_);
  focus_ = std::move(f.parent);
  path_.pop_back();
}

void Zipper::down(int i) {
  if (i < 0 || i >= static_cast<int>(focus_.kids.size()))
    throw PathError("no child " + std::to_string(i + 1) + " at " + form_name(focus_.form));
  BareExpr child = std::move(focus_.kids[i]);
  frames_.push_back({std::move(focus_), i});
  focus_ = std::move(child);
  path_.push_back(i);
}

void Zipper::move_to(const Path& p) {
  std::size_t common = 0;
  while (common < p.size() && common < path_.size() && p[common] == path_[common]) ++common;
  while (path_.size() > common) up();
  for (std::size_t i = common; i < p.size(); ++i) down(p[i]);
}

void Zipper::perform(const Action& a) { perform_at(focus_, a); }

const BareExpr& Zipper::root() {
  move_to({});
  return focus_;
}

AnnExpr Zipper::check() { return mark_program(root()); }

}  // namespace inctype
