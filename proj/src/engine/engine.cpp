#include "inctype/engine.hpp"

#include <algorithm>

#include "inctype/reference.hpp"
#include "inctype/side_conditions.hpp"

namespace inctype {

const char* slot_name(SlotKind k) {
  switch (k) {
    case SlotKind::SurfaceAnn: return "ann";
    case SlotKind::SurfaceAsc: return "asc";
    case SlotKind::Ana: return "ana";
    case SlotKind::Syn: return "syn";
  }
  return "?";
}

std::optional<SlotKind> parse_slot(const std::string& s) {
  if (s == "ann") return SlotKind::SurfaceAnn;
  if (s == "asc") return SlotKind::SurfaceAsc;
  if (s == "ana") return SlotKind::Ana;
  if (s == "syn") return SlotKind::Syn;
  return std::nullopt;
}

namespace {

bool is_surface(SlotKind k) { return k == SlotKind::SurfaceAnn || k == SlotKind::SurfaceAsc; }

std::uint8_t rank_of(SlotKind k) {
  // Surface types are upstream of the analysed type sharing their timestamp.
  return is_surface(k) ? 0 : k == SlotKind::Ana ? 1 : 2;
}

bool& flag_of(Node* n, SlotKind k) {
  return is_surface(k) ? n->surface_dirty : k == SlotKind::Ana ? n->ana_dirty : n->syn_dirty;
}

std::uint32_t& gen_of(Node* n, SlotKind k) {
  return is_surface(k) ? n->surface_gen : k == SlotKind::Ana ? n->ana_gen : n->syn_gen;
}

}  // namespace

bool Doc::EntryAfter::operator()(const Entry& a, const Entry& b) const {
  auto c = a.key.order->compare(a.key, b.key);
  if (c != 0) return c > 0;
  return a.rank > b.rank;
}

Doc::Doc(const BareExpr& program) : order_(std::make_unique<OmOrder>()) {
  AnnExpr marked = mark_program(program);
  root_ = build(marked, nullptr, 0);
  OmElement prev = order_->anchor();
  stamp(root_.get(), prev);
  register_binders(root_.get());
  bind_vars(root_.get());
}

Doc::Doc(Doc&&) noexcept = default;
Doc& Doc::operator=(Doc&&) noexcept = default;
Doc::~Doc() = default;

std::unique_ptr<Node> Doc::make_node(Form f) {
  auto n = std::make_unique<Node>();
  n->form = f;
  n->kids.resize(arity(f));
  n->var.node = n.get();
  ++live_nodes_;
  return n;
}

std::unique_ptr<Node> Doc::build(const AnnExpr& e, Node* parent, int index) {
  auto n = make_node(e.form);
  n->ana = e.ana;
  n->consistency = e.consistency;
  n->syn = e.syn;
  n->name = e.name;
  n->binders = e.binders;
  n->surface = e.surface;
  n->binder_types = e.binder_types;
  n->mark1 = e.mark1;
  n->mark2 = e.mark2;
  n->num = e.num;
  n->boolean = e.boolean;
  n->parent = parent;
  n->index = index;
  for (std::size_t i = 0; i < e.kids.size(); ++i)
    n->kids[i] = build(e.kids[i], n.get(), static_cast<int>(i));
  return n;
}

void Doc::stamp(Node* n, OmElement& prev) {
  n->pre = prev = order_->insert_after(prev);
  for (std::size_t i = 0; i < n->kids.size(); ++i) {
    if (n->form == Form::Case && i == 2) {
      n->scope[0] = prev = order_->insert_after(prev);
      n->scope[1] = prev = order_->insert_after(prev);
    }
    stamp(n->kids[i].get(), prev);
    if (n->form == Form::Case && i == 2) {
      n->scope[2] = prev = order_->insert_after(prev);
      n->scope[3] = prev = order_->insert_after(prev);
    }
  }
  n->post = prev = order_->insert_after(prev);
  if (n->form == Form::Var) {
    n->var.name = n->name;
    n->var.pre = n->pre;
    n->var.post = n->post;
  }
}

// Timestamps a freshly built wrapper `w` whose child at `c` is the existing `kept`.
void Doc::stamp_around(Node* w, int c, Node* kept) {
  OmElement prev = w->pre = order_->insert_before(kept->pre);
  for (int i = 0; i < static_cast<int>(w->kids.size()); ++i) {
    if (w->form == Form::Case && i == 2) {
      w->scope[0] = prev = order_->insert_after(prev);
      w->scope[1] = prev = order_->insert_after(prev);
    }
    if (i == c) {
      prev = kept->post;
    } else {
      Node* k = w->kids[i].get();
      k->pre = prev = order_->insert_after(prev);
      k->post = prev = order_->insert_after(prev);
    }
    if (w->form == Form::Case && i == 2) {
      w->scope[2] = prev = order_->insert_after(prev);
      w->scope[3] = prev = order_->insert_after(prev);
    }
  }
  w->post = order_->insert_after(prev);
}

void Doc::make_record(Node* n, int slot) {
  auto rec = std::make_unique<BinderRecord>();
  rec->name = n->binders[slot].name;
  if (n->form == Form::Lam) {
    rec->pre = n->pre;
    rec->post = n->post;
  } else {
    rec->pre = n->scope[slot];
    rec->post = n->scope[3 - slot];
  }
  rec->node = n;
  rec->slot = slot;
  n->records[slot] = std::move(rec);
}

void Doc::register_binders(Node* n) {
  for (int s = 0; s < binder_count(n->form); ++s) {
    if (n->binders[s].is_hole()) continue;
    make_record(n, s);
    index_.register_binder(*n->records[s]);
  }
  for (auto& k : n->kids) register_binders(k.get());
}

void Doc::bind_vars(Node* n) {
  if (n->form == Form::Var) index_.bind_variable(n->var);
  for (auto& k : n->kids) bind_vars(k.get());
}

std::unique_ptr<Node>& Doc::slot_of(Node* n) { return n->parent ? n->parent->kids[n->index] : root_; }

const Node* Doc::node_at(const Path& p) const {
  const Node* cur = root_.get();
  for (int i : p) {
    if (i < 0 || i >= static_cast<int>(cur->kids.size()))
      throw PathError("no child " + std::to_string(i + 1) + " at " + form_name(cur->form));
    cur = cur->kids[i].get();
  }
  return cur;
}

Path Doc::path_of(const Node* n) const {
  Path p;
  for (; n->parent; n = n->parent) p.push_back(n->index);
  std::reverse(p.begin(), p.end());
  return p;
}

// ---------------------------------------------------------------------------
// dirty slots

void Doc::dirty(Node* n, SlotKind k) {
  bool& flag = flag_of(n, k);
  if (flag) return;
  flag = true;
  std::uint32_t gen = ++gen_of(n, k);
  ++dirty_count_;
  if (is_surface(k)) ++surface_dirty_count_;
  Entry e{k == SlotKind::Syn ? n->post : n->pre, rank_of(k), n, k, gen};
  heap_.push_back(e);
  std::push_heap(heap_.begin(), heap_.end(), EntryAfter{});
  if (auditing_) {
    ++audit_report_->dirtied;
    if (!EntryAfter{}(e, *auditing_)) audit_report_->downstream_only = false;
  }
}

void Doc::set_ana(Node* n, TypeOpt v) {
  ++counters_.node_visits;
  if (optimize_ && n->ana == v) return;
  n->ana = std::move(v);
  dirty(n, SlotKind::Ana);
}

void Doc::set_syn(Node* n, TypeOpt v) {
  ++counters_.node_visits;
  if (optimize_ && n->syn == v) return;
  n->syn = std::move(v);
  dirty(n, SlotKind::Syn);
}

TypeOpt Doc::binder_type(const BinderRecord& r) const {
  const Node* b = static_cast<const Node*>(r.node);
  return b->form == Form::Lam ? TypeOpt(b->surface) : b->binder_types[r.slot];
}

void Doc::update_var(VarEntry* v, Mark m, const TypeOpt& t, bool optimize) {
  Node* n = static_cast<Node*>(v->node);
  ++counters_.node_visits;
  n->mark1 = m;
  if (optimize && n->syn == t) return;
  n->syn = t;
  dirty(n, SlotKind::Syn);
}

void Doc::rebind_released(const std::vector<VarEntry*>& vs) {
  for (VarEntry* v : vs) {
    if (v->owner) update_var(v, Mark::Ok, binder_type(*v->owner), false);
    else update_var(v, Mark::Err, Type::unknown(), false);
  }
}

// ---------------------------------------------------------------------------
// deletion

void Doc::tombstone(std::unique_ptr<Node> n) {
  std::vector<Node*> stack{n.get()};
  std::vector<BinderRecord*> recs;
  while (!stack.empty()) {
    Node* x = stack.back();
    stack.pop_back();
    if (!x) continue;
    x->deleted = true;
    --live_nodes_;
    ++counters_.node_visits;
    for (SlotKind k : {SlotKind::SurfaceAnn, SlotKind::Ana, SlotKind::Syn}) {
      bool& f = flag_of(x, k);
      if (!f) continue;
      f = false;
      --dirty_count_;
      if (is_surface(k)) --surface_dirty_count_;
    }
    if (x->form == Form::Var) index_.unbind_variable(x->var);
    for (auto& r : x->records)
      if (r && r->registered) recs.push_back(r.get());
    for (auto& k : x->kids) stack.push_back(k.get());
  }
  // Every occurrence these binders bound was inside the deleted subtree.
  for (BinderRecord* r : recs) rebind_released(index_.unregister_binder(*r));
  graveyard_.push_back(std::move(n));
}

void Doc::collect_garbage() {
  for (auto& dead : graveyard_) {
    std::vector<Node*> stack{dead.get()};
    while (!stack.empty()) {
      Node* x = stack.back();
      stack.pop_back();
      if (!x) continue;
      for (OmElement e : {x->pre, x->post, x->scope[0], x->scope[1], x->scope[2], x->scope[3]})
        if (!e.is_null() && order_->is_live(e)) order_->erase(e);
      for (auto& k : x->kids) stack.push_back(k.get());
    }
  }
  graveyard_.clear();
}

// ---------------------------------------------------------------------------
// actions

void Doc::apply(const LocalizedAction& la) { apply(node_at(la.path), la.action); }

void Doc::apply(const Node* target, const Action& a) {
  if (target->deleted) throw PathError("target node has been deleted");
  Node* t = const_cast<Node*>(target);
  BareExpr shell;
  shell.form = t->form;
  shell.binders = t->binders;
  check_applicable(shell, a);
  ++counters_.actions;
  ++counters_.node_visits;
  optimize_ = false;

  switch (a.kind) {
    case ActionKind::InsertVar: {
      t->form = Form::Var;
      t->name = a.name;
      t->var.name = a.name;
      t->var.pre = t->pre;
      t->var.post = t->post;
      BinderRecord* owner = index_.bind_variable(t->var);
      if (owner) {
        t->mark1 = Mark::Ok;
        t->syn = binder_type(*owner);
      } else {
        t->mark1 = Mark::Err;
        t->syn = Type::unknown();
      }
      dirty(t, SlotKind::Syn);
      break;
    }
    case ActionKind::InsertNum:
      t->form = Form::Num;
      t->num = a.num;
      t->syn = Type::num();
      dirty(t, SlotKind::Syn);
      break;
    case ActionKind::InsertBool:
      t->form = Form::Bool;
      t->boolean = a.boolean;
      t->syn = Type::boolean();
      dirty(t, SlotKind::Syn);
      break;
    case ActionKind::InsertNil:
      t->form = Form::Nil;
      t->syn = Type::list(Type::unknown());
      dirty(t, SlotKind::Syn);
      break;
    case ActionKind::Delete:
      act_replace_with_hole(t);
      return;
    case ActionKind::Unwrap:
      act_unwrap(t, a.child);
      return;
    case ActionKind::SetAnn:
      t->surface = a.type;
      dirty(t, SlotKind::SurfaceAnn);
      break;
    case ActionKind::SetAsc:
      t->surface = a.type;
      dirty(t, SlotKind::SurfaceAsc);
      break;
    case ActionKind::InsertBinder:
      act_insert_binder(t, a);
      break;
    case ActionKind::DeleteBinder:
      act_delete_binder(t, a.slot);
      break;
    default:
      act_wrap(t, a);
      return;
  }
  dirty(t, SlotKind::Ana);
}

void Doc::act_replace_with_hole(Node* t) {
  auto h = make_node(Form::Hole);
  Node* hp = h.get();
  h->ana = t->ana;
  h->consistency = t->consistency;
  h->syn = Type::unknown();
  h->pre = order_->insert_before(t->pre);
  h->post = order_->insert_after(h->pre);
  h->parent = t->parent;
  h->index = t->index;
  std::unique_ptr<Node>& s = slot_of(t);
  std::unique_ptr<Node> old = std::move(s);
  s = std::move(h);
  tombstone(std::move(old));
  dirty(hp, SlotKind::Syn);
  dirty(hp, SlotKind::Ana);
}

void Doc::act_wrap(Node* t, const Action& a) {
  const Form f = wrap_form(a.kind);
  const int c = a.child;
  auto w = make_node(f);
  Node* wp = w.get();
  w->ana = t->ana;
  w->consistency = t->consistency;
  for (int i = 0; i < arity(f); ++i) {
    if (i == c) continue;
    auto h = make_node(Form::Hole);
    h->syn = Type::unknown();
    h->parent = wp;
    h->index = i;
    w->kids[i] = std::move(h);
  }
  stamp_around(wp, c, t);
  std::unique_ptr<Node>& s = slot_of(t);
  w->parent = t->parent;
  w->index = t->index;
  std::unique_ptr<Node> tp = std::move(s);
  tp->parent = wp;
  tp->index = c;
  w->kids[c] = std::move(tp);
  s = std::move(w);
  counters_.node_visits += wp->kids.size();

  t->consistency = Mark::Ok;
  switch (f) {
    case Form::Lam:
      t->ana = std::nullopt;
      dirty(t, SlotKind::Ana);
      wp->syn = std::nullopt;
      dirty(wp, SlotKind::Syn);
      break;
    case Form::Asc:
      t->ana = Type::unknown();
      dirty(t, SlotKind::Ana);
      wp->syn = Type::unknown();
      dirty(wp, SlotKind::Syn);
      break;
    case Form::Ap:
      if (c == 0) {
        t->ana = std::nullopt;
        dirty(t, SlotKind::Ana);
        dirty(t, SlotKind::Syn);
        wp->syn = std::nullopt;
      } else {
        t->ana = Type::unknown();
        dirty(t, SlotKind::Ana);
        wp->syn = Type::unknown();
      }
      dirty(wp, SlotKind::Syn);
      break;
    default:
      for (auto& k : wp->kids) {
        k->ana = std::nullopt;
        k->consistency = Mark::Ok;
        dirty(k.get(), SlotKind::Ana);
        dirty(k.get(), SlotKind::Syn);
      }
      wp->syn = std::nullopt;
      dirty(wp, SlotKind::Syn);
      break;
  }
  dirty(wp, SlotKind::Ana);
}

void Doc::act_unwrap(Node* t, int c) {
  std::unique_ptr<Node> k = std::move(t->kids[c]);
  for (auto& other : t->kids)
    if (other) tombstone(std::move(other));
  std::vector<VarEntry*> released;
  for (int s = 1; s >= 0; --s) {
    if (!t->records[s] || !t->records[s]->registered) continue;
    auto r = index_.unregister_binder(*t->records[s]);
    released.insert(released.end(), r.begin(), r.end());
  }
  Node* kp = k.get();
  k->ana = t->ana;
  k->consistency = t->consistency;
  k->parent = t->parent;
  k->index = t->index;
  std::unique_ptr<Node>& s = slot_of(t);
  std::unique_ptr<Node> old = std::move(s);
  s = std::move(k);
  tombstone(std::move(old));
  rebind_released(released);
  dirty(kp, SlotKind::Syn);
  dirty(kp, SlotKind::Ana);
}

void Doc::act_insert_binder(Node* t, const Action& a) {
  const int s = a.slot;
  if (!a.name.empty()) {
    t->binders[s] = Binding{a.name};
    make_record(t, s);
    auto captured = index_.register_binder(*t->records[s]);
    TypeOpt ty = binder_type(*t->records[s]);
    for (VarEntry* v : captured) update_var(v, Mark::Ok, ty, false);
  }
  dirty(t->kids[scope_child(t->form)].get(), SlotKind::Syn);
}

void Doc::act_delete_binder(Node* t, int slot) {
  if (t->records[slot]) {
    auto released = index_.unregister_binder(*t->records[slot]);
    t->records[slot].reset();
    rebind_released(released);
  }
  t->binders[slot] = Binding::hole();
  dirty(t->kids[scope_child(t->form)].get(), SlotKind::Syn);
}

// ---------------------------------------------------------------------------
// update propagation

StepReport Doc::step() {
  while (!heap_.empty()) {
    std::pop_heap(heap_.begin(), heap_.end(), EntryAfter{});
    Entry e = heap_.back();
    heap_.pop_back();
    if (!e.node->deleted && flag_of(e.node, e.kind) && gen_of(e.node, e.kind) == e.gen)
      return execute(e.node, e.kind);
    ++counters_.stale_pops;
  }
  if (dirty_count_ != 0) throw std::logic_error("dirty slots without frontier entries");
  collect_garbage();
  return StepReport{};
}

StepReport Doc::step_at(DirtyLoc loc) {
  Node* n = const_cast<Node*>(loc.node);
  if (!n || n->deleted || !flag_of(n, loc.kind)) throw NotDirty();
  return execute(n, loc.kind);
}

std::size_t Doc::run_to_quiescence(std::optional<std::size_t> budget) {
  std::size_t limit = budget ? *budget : 64 * std::max<std::size_t>(live_nodes_, 1);
  std::size_t steps = 0;
  while (true) {
    if (steps == limit && !quiescent()) throw StepBudgetExceeded(limit);
    if (step().quiescent) return steps;
    ++steps;
  }
}

std::vector<DirtyLoc> Doc::frontier() const {
  std::vector<Entry> live;
  for (const Entry& e : heap_) {
    Node* n = e.node;
    if (!n->deleted && flag_of(n, e.kind) && gen_of(n, e.kind) == e.gen) live.push_back(e);
  }
  std::sort(live.begin(), live.end(), [](const Entry& a, const Entry& b) { return EntryAfter{}(b, a); });
  std::vector<DirtyLoc> out;
  out.reserve(live.size());
  for (const Entry& e : live) out.push_back({e.node, e.kind});
  return out;
}

StepReport Doc::execute(Node* n, SlotKind k) {
  StepReport r;
  r.quiescent = false;
  r.node = n;
  r.kind = k;
  flag_of(n, k) = false;
  --dirty_count_;
  if (is_surface(k)) {
    --surface_dirty_count_;
    r.consumed_surface = true;
  }
  Entry popped{k == SlotKind::Syn ? n->post : n->pre, rank_of(k), n, k, 0};
  auditing_ = &popped;
  audit_report_ = &r;
  optimize_ = true;
  ++counters_.steps;
  ++counters_.node_visits;
  switch (k) {
    case SlotKind::SurfaceAnn:
      step_ann_fun(n, r);
      break;
    case SlotKind::SurfaceAsc:
      step_asc(n, r);
      break;
    case SlotKind::Ana:
      if (n->form == Form::Lam) step_ana_fun(n, r);
      else step_ana(n, r);
      break;
    case SlotKind::Syn:
      step_syn(n, r);
      break;
  }
  auditing_ = nullptr;
  audit_report_ = nullptr;
  optimize_ = false;
  return r;
}

void Doc::step_ana(Node* n, StepReport& r) {
  r.rule = "ana";
  n->consistency = consistency(n->ana, n->syn);
}

void Doc::step_ana_fun(Node* n, StepReport& r) {
  r.rule = "ana-fun";
  Matched2 m = matched_arrow(n->ana);
  n->mark1 = m.mark;
  n->mark2 = consistency(m.first, n->surface);
  n->consistency = Mark::Ok;
  Node* body = n->kids[0].get();
  set_ana(body, m.second);
  set_syn(n, fun_syn(n->ana, n->surface, body->syn));
}

void Doc::step_ann_fun(Node* n, StepReport& r) {
  r.rule = "ann-fun";
  BinderRecord* rec = n->records[0].get();
  if (rec && rec->registered) {
    TypeOpt ty = n->surface;
    rec->vars.for_each(
        [&](SplayHook* h) { update_var(static_cast<VarEntry*>(h), Mark::Ok, ty, true); });
  }
  dirty(n, SlotKind::Ana);
}

void Doc::step_asc(Node* n, StepReport& r) {
  r.rule = "asc";
  set_ana(n->kids[0].get(), n->surface);
  set_syn(n, n->surface);
}

void Doc::step_syn(Node* n, StepReport& r) {
  n->consistency = consistency(n->ana, n->syn);
  Node* p = n->parent;
  if (!p) {
    r.rule = "top";
    return;
  }
  r.rule = "syn";
  ++counters_.node_visits;
  switch (p->form) {
    case Form::Lam:
      if (!n->ana) {
        r.rule = "syn-fun";
        set_syn(p, fun_syn(p->ana, p->surface, n->syn));
      }
      break;
    case Form::Ap:
      if (n->index == 0) {
        r.rule = "ap";
        Matched2 m = matched_arrow(n->syn);
        p->mark1 = m.mark;
        set_ana(p->kids[1].get(), m.first);
        set_syn(p, m.second);
      }
      break;
    case Form::Pair:
      r.rule = "pair";
      set_syn(p, prod_opt(p->kids[0]->syn, p->kids[1]->syn));
      break;
    case Form::Fst:
    case Form::Snd: {
      r.rule = "proj";
      Matched2 m = matched_prod(n->syn);
      p->mark1 = m.mark;
      set_syn(p, p->form == Form::Fst ? m.first : m.second);
      break;
    }
    case Form::Cons:
      if (n->index == 0) {
        r.rule = "cons";
        TypeOpt lt = list_opt(n->syn);
        set_ana(p->kids[1].get(), lt);
        set_syn(p, lt);
      }
      break;
    case Form::Case:
      if (n->index == 0) {
        r.rule = "case-scrut";
        Matched1 m = matched_list(n->syn);
        p->mark1 = m.mark;
        std::array<TypeOpt, 2> next{m.elem, list_opt(m.elem)};
        for (int s = 0; s < 2; ++s) {
          if (p->binder_types[s] == next[s]) continue;
          p->binder_types[s] = next[s];
          BinderRecord* rec = p->records[s].get();
          if (!rec || !rec->registered) continue;
          rec->vars.for_each([&](SplayHook* h) {
            update_var(static_cast<VarEntry*>(h), Mark::Ok, next[s], true);
          });
        }
      } else if (n->index == 1) {
        r.rule = "case-nil";
        set_ana(p->kids[2].get(), n->syn);
        set_syn(p, n->syn);
      }
      break;
    default:
      break;
  }
}

// ---------------------------------------------------------------------------
// snapshots

static AnnExpr snapshot_of(const Node& n) {
  AnnExpr e;
  e.form = n.form;
  e.ana = n.ana;
  e.ana_dirty = n.ana_dirty;
  e.consistency = n.consistency;
  e.syn = n.syn;
  e.syn_dirty = n.syn_dirty;
  e.name = n.name;
  e.binders = n.binders;
  e.surface = n.surface;
  e.surface_dirty = n.surface_dirty;
  e.binder_types = n.binder_types;
  e.mark1 = n.mark1;
  e.mark2 = n.mark2;
  e.num = n.num;
  e.boolean = n.boolean;
  e.kids.reserve(n.kids.size());
  for (const auto& k : n.kids) e.kids.push_back(snapshot_of(*k));
  return e;
}

AnnExpr Doc::snapshot() const { return snapshot_of(*root_); }

}  // namespace inctype
