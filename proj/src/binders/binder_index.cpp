#include "inctype/binder_index.hpp"

#include <stdexcept>

namespace inctype {

BinderRecord* BinderIndex::lowest_containing_binder(const std::string& name, OmElement pre,
                                                    OmElement post) {
  auto it = binders_.find(name);
  if (it == binders_.end()) return nullptr;
  return static_cast<BinderRecord*>(it->second.lowest_containing(pre, post));
}

SplaySet& BinderIndex::owner_set(BinderRecord* owner, const std::string& name) {
  return owner ? owner->vars : free_[name];
}

BinderRecord* BinderIndex::bind_variable(VarEntry& v) {
  if (v.bound) throw std::logic_error("variable already bound");
  BinderRecord* owner = lowest_containing_binder(v.name, v.pre, v.post);
  owner_set(owner, v.name).insert(&v);
  v.owner = owner;
  v.bound = true;
  return owner;
}

void BinderIndex::unbind_variable(VarEntry& v) {
  if (!v.bound) return;
  owner_set(v.owner, v.name).erase(&v);
  v.owner = nullptr;
  v.bound = false;
}

std::vector<VarEntry*> BinderIndex::register_binder(BinderRecord& b) {
  if (b.registered) throw std::logic_error("binder already registered");
  BinderRecord* outer = lowest_containing_binder(b.name, b.pre, b.post);
  SplaySet& outer_set = owner_set(outer, b.name);
  auto [left, rest] = outer_set.split(b.pre);
  auto [middle, right] = rest.split(b.post);
  outer_set = SplaySet::join(std::move(left), std::move(right));
  b.vars = std::move(middle);
  std::vector<VarEntry*> captured;
  b.vars.for_each([&](SplayHook* h) {
    auto* v = static_cast<VarEntry*>(h);
    v->owner = &b;
    captured.push_back(v);
  });
  binders_[b.name].insert(&b);
  b.registered = true;
  return captured;
}

std::vector<VarEntry*> BinderIndex::unregister_binder(BinderRecord& b) {
  if (!b.registered) return {};
  binders_[b.name].erase(&b);
  b.registered = false;
  BinderRecord* outer = lowest_containing_binder(b.name, b.pre, b.post);
  std::vector<VarEntry*> released;
  b.vars.for_each([&](SplayHook* h) {
    auto* v = static_cast<VarEntry*>(h);
    v->owner = outer;
    released.push_back(v);
  });
  SplaySet& outer_set = owner_set(outer, b.name);
  auto [left, right] = outer_set.split(b.pre);
  outer_set = SplaySet::join(SplaySet::join(std::move(left), std::move(b.vars)), std::move(right));
  return released;
}

const SplaySet* BinderIndex::free_set(const std::string& name) const {
  auto it = free_.find(name);
  return it == free_.end() ? nullptr : &it->second;
}

const SplaySet* BinderIndex::binder_set(const std::string& name) const {
  auto it = binders_.find(name);
  return it == binders_.end() ? nullptr : &it->second;
}

bool BinderIndex::check_invariants() const {
  for (const auto& [name, set] : binders_) {
    if (!set.check_invariants()) return false;
    bool ok = true;
    set.for_each([&](SplayHook* h) {
      auto* b = static_cast<BinderRecord*>(h);
      if (b->name != name || !b->registered || !b->vars.check_invariants()) ok = false;
      b->vars.for_each([&](SplayHook* vh) {
        auto* v = static_cast<VarEntry*>(vh);
        if (v->owner != b || v->name != name) ok = false;
      });
    });
    if (!ok) return false;
  }
  for (const auto& [name, set] : free_) {
    if (!set.check_invariants()) return false;
    bool ok = true;
    set.for_each([&](SplayHook* vh) {
      auto* v = static_cast<VarEntry*>(vh);
      if (v->owner != nullptr || v->name != name) ok = false;
    });
    if (!ok) return false;
  }
  return true;
}

}  // namespace inctype
