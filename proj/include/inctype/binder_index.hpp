#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "inctype/splay_set.hpp"

namespace inctype {

struct BinderRecord;

// A variable occurrence; pre/post are its node's timestamps.
struct VarEntry : SplayHook {
  std::string name;
  BinderRecord* owner = nullptr;  // null while free or unbound
  bool bound = false;             // registered in some set
  void* node = nullptr;
};

// A named binder; pre/post delimit its scope.
struct BinderRecord : SplayHook {
  std::string name;
  SplaySet vars;
  bool registered = false;
  void* node = nullptr;
  int slot = 0;
};

// Maps every variable occurrence to its binding site. Each name has a splay set
// of binders keyed by scope; every binder, and the root for each name, owns a
// splay set of the occurrences it binds.
class BinderIndex {
 public:
  BinderIndex() = default;
  BinderIndex(const BinderIndex&) = delete;
  BinderIndex& operator=(const BinderIndex&) = delete;
  BinderIndex(BinderIndex&&) = default;
  BinderIndex& operator=(BinderIndex&&) = default;

  BinderRecord* lowest_containing_binder(const std::string& name, OmElement pre, OmElement post);

  // Returns the owner (null when the occurrence is free).
  BinderRecord* bind_variable(VarEntry& v);
  void unbind_variable(VarEntry& v);

  // Returns the occurrences captured from the enclosing owner, in order.
  std::vector<VarEntry*> register_binder(BinderRecord& b);
  // Returns the occurrences released to the enclosing owner, in order.
  std::vector<VarEntry*> unregister_binder(BinderRecord& b);

  const SplaySet* free_set(const std::string& name) const;
  const SplaySet* binder_set(const std::string& name) const;
  bool check_invariants() const;

 private:
  SplaySet& owner_set(BinderRecord* owner, const std::string& name);

  std::unordered_map<std::string, SplaySet> binders_;
  std::unordered_map<std::string, SplaySet> free_;
};

}  // namespace inctype
