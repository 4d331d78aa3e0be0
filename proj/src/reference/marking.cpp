#include "inctype/reference.hpp"

namespace inctype {

AnnExpr mark_expr(Ctx& ctx, const TypeOpt& ana, const BareExpr& e) {
  AnnExpr out;
  out.form = e.form;
  out.name = e.name;
  out.binders = e.binders;
  out.surface = e.surface;
  out.num = e.num;
  out.boolean = e.boolean;
  out.ana = ana;
  out.kids.reserve(e.kids.size());

  switch (e.form) {
    case Form::Hole:
      out.syn = Type::unknown();
      break;
    case Form::Var: {
      Lookup l = ctx_lookup(ctx, e.name);
      out.mark1 = l.mark;
      out.syn = l.type;
      break;
    }
    case Form::Num:
      out.syn = Type::num();
      break;
    case Form::Bool:
      out.syn = Type::boolean();
      break;
    case Form::Nil:
      out.syn = Type::list(Type::unknown());
      break;
    case Form::Lam: {
      Matched2 m = matched_arrow(ana);
      out.mark1 = m.mark;
      out.mark2 = consistency(m.first, e.surface);
      bool named = !e.binders[0].is_hole();
      if (named) ctx.emplace_back(e.binders[0].name, e.surface);
      out.kids.push_back(mark_expr(ctx, m.second, e.kids[0]));
      if (named) ctx.pop_back();
      out.syn = fun_syn(ana, e.surface, out.kids[0].syn);
      break;
    }
    case Form::Ap: {
      out.kids.push_back(mark_expr(ctx, std::nullopt, e.kids[0]));
      Matched2 m = matched_arrow(out.kids[0].syn);
      out.mark1 = m.mark;
      out.kids.push_back(mark_expr(ctx, m.first, e.kids[1]));
      out.syn = m.second;
      break;
    }
    case Form::Asc:
      out.kids.push_back(mark_expr(ctx, e.surface, e.kids[0]));
      out.syn = e.surface;
      break;
    case Form::Pair:
      out.kids.push_back(mark_expr(ctx, std::nullopt, e.kids[0]));
      out.kids.push_back(mark_expr(ctx, std::nullopt, e.kids[1]));
      out.syn = prod_opt(out.kids[0].syn, out.kids[1].syn);
      break;
    case Form::Fst:
    case Form::Snd: {
      out.kids.push_back(mark_expr(ctx, std::nullopt, e.kids[0]));
      Matched2 m = matched_prod(out.kids[0].syn);
      out.mark1 = m.mark;
      out.syn = e.form == Form::Fst ? m.first : m.second;
      break;
    }
    case Form::Cons: {
      out.kids.push_back(mark_expr(ctx, std::nullopt, e.kids[0]));
      TypeOpt lt = list_opt(out.kids[0].syn);
      out.kids.push_back(mark_expr(ctx, lt, e.kids[1]));
      out.syn = lt;
      break;
    }
    case Form::Case: {
      out.kids.push_back(mark_expr(ctx, std::nullopt, e.kids[0]));
      Matched1 m = matched_list(out.kids[0].syn);
      out.mark1 = m.mark;
      out.binder_types = {m.elem, list_opt(m.elem)};
      out.kids.push_back(mark_expr(ctx, std::nullopt, e.kids[1]));
      std::size_t depth = ctx.size();
      for (int s = 0; s < 2; ++s)
        if (!e.binders[s].is_hole()) ctx.emplace_back(e.binders[s].name, out.binder_types[s]);
      out.kids.push_back(mark_expr(ctx, out.kids[1].syn, e.kids[2]));
      ctx.resize(depth);
      out.syn = out.kids[1].syn;
      break;
    }
  }
  out.consistency = consistency(ana, out.syn);
  return out;
}

AnnExpr mark_program(const BareExpr& e) {
  Ctx ctx;
  return mark_expr(ctx, std::nullopt, e);
}

bool is_well_marked(const AnnExpr& p) { return mark_program(erase(p)) == strip_dirty(p); }

namespace {

struct WfEntry {
  std::string name;
  TypeOpt type;
  bool dirty;
};

class WfChecker {
 public:
  std::optional<std::string> run(const AnnExpr& root) {
    if (root.ana) return std::string("root analysed against a type");
    if (root.consistency != Mark::Ok) return std::string("root marked inconsistent");
    Path p;
    visit(root, p);
    return failure_;
  }

 private:
  template <class T>
  void expect(bool upstream_dirty, const T& computed, const T& stored, const char* what,
              const Path& p) {
    if (failure_ || upstream_dirty || computed == stored) return;
    failure_ = std::string(what) + " at [" + path_to_string(p) + "]";
  }

  void visit(const AnnExpr& e, Path& p) {
    if (failure_) return;
    const bool ad = e.ana_dirty;
    const bool td = e.surface_dirty;
    bool uses_mark1 = false;
    bool uses_mark2 = false;
    if (e.form != Form::Case) {
      expect(false, TypeOpt{}, e.binder_types[0], "binder type on non-case", p);
      expect(false, TypeOpt{}, e.binder_types[1], "binder type on non-case", p);
    }
    if (static_cast<int>(e.kids.size()) != arity(e.form)) {
      failure_ = "arity mismatch at [" + path_to_string(p) + "]";
      return;
    }
    auto kid_dirty = [&](int i) { return e.kids[i].syn_dirty; };
    std::size_t depth = ctx_.size();

    switch (e.form) {
      case Form::Hole:
        expect(false, TypeOpt(Type::unknown()), e.syn, "hole synthesis", p);
        break;
      case Form::Var: {
        uses_mark1 = true;
        const WfEntry* hit = nullptr;
        for (auto it = ctx_.rbegin(); it != ctx_.rend(); ++it)
          if (it->name == e.name) {
            hit = &*it;
            break;
          }
        if (hit) {
          expect(false, Mark::Ok, e.mark1, "bound variable mark", p);
          expect(hit->dirty, hit->type, e.syn, "variable synthesis", p);
        } else {
          expect(false, Mark::Err, e.mark1, "free variable mark", p);
          expect(false, TypeOpt(Type::unknown()), e.syn, "free variable synthesis", p);
        }
        break;
      }
      case Form::Num:
        expect(false, TypeOpt(Type::num()), e.syn, "number synthesis", p);
        break;
      case Form::Bool:
        expect(false, TypeOpt(Type::boolean()), e.syn, "boolean synthesis", p);
        break;
      case Form::Nil:
        expect(false, TypeOpt(Type::list(Type::unknown())), e.syn, "nil synthesis", p);
        break;
      case Form::Lam: {
        uses_mark1 = uses_mark2 = true;
        Matched2 m = matched_arrow(e.ana);
        expect(ad, m.mark, e.mark1, "non-arrow mark", p);
        expect(ad || td, consistency(m.first, e.surface), e.mark2, "domain mark", p);
        expect(ad, m.second, e.kids[0].ana, "body analysis", p);
        expect(ad || td || kid_dirty(0), fun_syn(e.ana, e.surface, e.kids[0].syn), e.syn,
               "function synthesis", p);
        if (!e.binders[0].is_hole()) ctx_.push_back({e.binders[0].name, e.surface, td});
        break;
      }
      case Form::Ap: {
        uses_mark1 = true;
        Matched2 m = matched_arrow(e.kids[0].syn);
        expect(false, TypeOpt{}, e.kids[0].ana, "function position analysis", p);
        expect(kid_dirty(0), m.mark, e.mark1, "matched arrow mark", p);
        expect(kid_dirty(0), m.first, e.kids[1].ana, "argument analysis", p);
        expect(kid_dirty(0), m.second, e.syn, "application synthesis", p);
        break;
      }
      case Form::Asc:
        expect(td, TypeOpt(e.surface), e.kids[0].ana, "ascription analysis", p);
        expect(td, TypeOpt(e.surface), e.syn, "ascription synthesis", p);
        break;
      case Form::Pair:
        expect(false, TypeOpt{}, e.kids[0].ana, "pair analysis", p);
        expect(false, TypeOpt{}, e.kids[1].ana, "pair analysis", p);
        expect(kid_dirty(0) || kid_dirty(1), prod_opt(e.kids[0].syn, e.kids[1].syn), e.syn,
               "pair synthesis", p);
        break;
      case Form::Fst:
      case Form::Snd: {
        uses_mark1 = true;
        Matched2 m = matched_prod(e.kids[0].syn);
        expect(false, TypeOpt{}, e.kids[0].ana, "projection analysis", p);
        expect(kid_dirty(0), m.mark, e.mark1, "matched product mark", p);
        expect(kid_dirty(0), e.form == Form::Fst ? m.first : m.second, e.syn,
               "projection synthesis", p);
        break;
      }
      case Form::Cons: {
        TypeOpt lt = list_opt(e.kids[0].syn);
        expect(false, TypeOpt{}, e.kids[0].ana, "head analysis", p);
        expect(kid_dirty(0), lt, e.kids[1].ana, "tail analysis", p);
        expect(kid_dirty(0), lt, e.syn, "cons synthesis", p);
        break;
      }
      case Form::Case: {
        uses_mark1 = true;
        Matched1 m = matched_list(e.kids[0].syn);
        expect(false, TypeOpt{}, e.kids[0].ana, "scrutinee analysis", p);
        expect(kid_dirty(0), m.mark, e.mark1, "matched list mark", p);
        expect(kid_dirty(0), m.elem, e.binder_types[0], "head binder type", p);
        expect(kid_dirty(0), list_opt(m.elem), e.binder_types[1], "tail binder type", p);
        expect(false, TypeOpt{}, e.kids[1].ana, "nil branch analysis", p);
        expect(kid_dirty(1), e.kids[1].syn, e.kids[2].ana, "cons branch analysis", p);
        expect(kid_dirty(1), e.kids[1].syn, e.syn, "case synthesis", p);
        break;
      }
    }
    if (!uses_mark1) expect(false, Mark::Ok, e.mark1, "unused mark", p);
    if (!uses_mark2) expect(false, Mark::Ok, e.mark2, "unused mark", p);
    if (e.form != Form::Lam && e.form != Form::Asc)
      expect(false, false, e.surface_dirty, "surface dirty on form without surface type", p);
    expect(ad || e.syn_dirty, consistency(e.ana, e.syn), e.consistency, "consistency mark", p);

    for (std::size_t i = 0; i < e.kids.size(); ++i) {
      if (e.form == Form::Case && i == 2) {
        for (int s = 0; s < 2; ++s)
          if (!e.binders[s].is_hole()) ctx_.push_back({e.binders[s].name, e.binder_types[s], false});
      }
      p.push_back(static_cast<int>(i));
      visit(e.kids[i], p);
      p.pop_back();
    }
    ctx_.resize(depth);
  }

  std::vector<WfEntry> ctx_;
  std::optional<std::string> failure_;
};

}  // namespace

std::optional<std::string> well_formed_violation(const AnnExpr& p) { return WfChecker().run(p); }

bool is_well_formed(const AnnExpr& p) { return !well_formed_violation(p).has_value(); }

}  // namespace inctype
