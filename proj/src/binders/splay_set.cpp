#include "inctype/splay_set.hpp"

#include <vector>

namespace inctype {

static bool lt(OmElement a, OmElement b) { return a.order->less(a, b); }

void SplaySet::update(SplayHook* x) {
  OmElement m = x->post;
  if (x->left && lt(m, x->left->max_post)) m = x->left->max_post;
  if (x->right && lt(m, x->right->max_post)) m = x->right->max_post;
  x->max_post = m;
}

void SplaySet::rotate(SplayHook* x) {
  SplayHook* p = x->parent;
  SplayHook* g = p->parent;
  if (p->left == x) {
    p->left = x->right;
    if (x->right) x->right->parent = p;
    x->right = p;
  } else {
    p->right = x->left;
    if (x->left) x->left->parent = p;
    x->left = p;
  }
  p->parent = x;
  x->parent = g;
  if (g) {
    if (g->left == p) g->left = x;
    else g->right = x;
  }
  update(p);
  update(x);
}

void SplaySet::splay(SplayHook* x) {
  while (SplayHook* p = x->parent) {
    if (SplayHook* g = p->parent) {
      if ((g->left == p) == (p->left == x)) rotate(p);
      else rotate(x);
    }
    rotate(x);
  }
  root_ = x;
}

std::pair<SplaySet, SplaySet> SplaySet::split(OmElement key) {
  if (!root_) return {};
  SplayHook* last = nullptr;
  for (SplayHook* x = root_; x;) {
    last = x;
    x = lt(x->pre, key) ? x->right : x->left;
  }
  splay(last);
  root_ = nullptr;
  if (lt(last->pre, key)) {
    SplayHook* r = last->right;
    if (r) r->parent = nullptr;
    last->right = nullptr;
    update(last);
    return {SplaySet(last), SplaySet(r)};
  }
  SplayHook* l = last->left;
  if (l) l->parent = nullptr;
  last->left = nullptr;
  update(last);
  return {SplaySet(l), SplaySet(last)};
}

SplaySet SplaySet::join(SplaySet left, SplaySet right) {
  if (!left.root_) return right;
  if (!right.root_) return left;
  SplayHook* x = left.root_;
  while (x->right) x = x->right;
  left.splay(x);
  SplayHook* y = right.root_;
  while (y->left) y = y->left;
  right.splay(y);
  if (!lt(x->pre, y->pre)) throw JoinOrderViolation();
  x->right = y;
  y->parent = x;
  update(x);
  left.root_ = nullptr;
  right.root_ = nullptr;
  return SplaySet(x);
}

void SplaySet::insert(SplayHook* h) {
  h->parent = h->left = h->right = nullptr;
  auto [l, r] = split(h->pre);
  h->left = l.root_;
  h->right = r.root_;
  if (h->left) h->left->parent = h;
  if (h->right) h->right->parent = h;
  l.root_ = r.root_ = nullptr;
  update(h);
  root_ = h;
}

void SplaySet::erase(SplayHook* h) {
  splay(h);
  SplayHook* l = h->left;
  SplayHook* r = h->right;
  if (l) l->parent = nullptr;
  if (r) r->parent = nullptr;
  h->left = h->right = h->parent = nullptr;
  root_ = nullptr;
  SplaySet joined = join(SplaySet(l), SplaySet(r));
  root_ = joined.root_;
  joined.root_ = nullptr;
}

SplayHook* SplaySet::lowest_containing(OmElement at_pre, OmElement at_post) {
  auto [l, r] = split(at_pre);
  SplayHook* found = nullptr;
  SplayHook* last = nullptr;
  for (SplayHook* x = l.root_; x;) {
    last = x;
    if (x->right && lt(at_post, x->right->max_post)) {
      x = x->right;
    } else if (lt(at_post, x->post)) {
      found = x;
      break;
    } else if (x->left && lt(at_post, x->left->max_post)) {
      x = x->left;
    } else {
      break;
    }
  }
  if (last) l.splay(last);
  *this = join(std::move(l), std::move(r));
  if (found) splay(found);
  return found;
}

void SplaySet::for_each(const std::function<void(SplayHook*)>& f) const {
  std::vector<SplayHook*> stack;
  SplayHook* x = root_;
  while (x || !stack.empty()) {
    while (x) {
      stack.push_back(x);
      x = x->left;
    }
    x = stack.back();
    stack.pop_back();
    SplayHook* next = x->right;
    f(x);
    x = next;
  }
}

std::size_t SplaySet::size() const {
  std::size_t n = 0;
  for_each([&](SplayHook*) { ++n; });
  return n;
}

namespace {

bool check_subtree(const SplayHook* x, const SplayHook* parent, OmElement& max_out) {
  if (x->parent != parent) return false;
  OmElement m = x->post;
  for (const SplayHook* c : {x->left, x->right}) {
    if (!c) continue;
    if (c == x->left ? !lt(c->pre, x->pre) : !lt(x->pre, c->pre)) return false;
    OmElement cm;
    if (!check_subtree(c, x, cm)) return false;
    if (lt(m, cm)) m = cm;
  }
  max_out = m;
  return m == x->max_post;
}

}  // namespace

bool SplaySet::check_invariants() const {
  if (!root_) return true;
  std::vector<SplayHook*> order;
  for_each([&](SplayHook* h) { order.push_back(h); });
  for (std::size_t i = 1; i < order.size(); ++i)
    if (!lt(order[i - 1]->pre, order[i]->pre)) return false;
  OmElement m;
  return check_subtree(root_, nullptr, m);
}

}  // namespace inctype
