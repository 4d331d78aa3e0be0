#pragma once

#include <functional>

#include "inctype/order_maintenance.hpp"

namespace inctype {

// Intrusive link for SplaySet. An entry is keyed by its pre timestamp and
// carries the maximum post timestamp of its subtree.
struct SplayHook {
  SplayHook* parent = nullptr;
  SplayHook* left = nullptr;
  SplayHook* right = nullptr;
  OmElement pre;
  OmElement post;
  OmElement max_post;

  bool linked() const { return parent || left || right; }
};

class JoinOrderViolation : public std::logic_error {
 public:
  JoinOrderViolation() : std::logic_error("join: left set does not precede right set") {}
};

// Splay tree of entries ordered by pre timestamp. Entries are owned elsewhere.
class SplaySet {
 public:
  SplaySet() = default;
  SplaySet(const SplaySet&) = delete;
  SplaySet& operator=(const SplaySet&) = delete;
  SplaySet(SplaySet&& o) noexcept : root_(o.root_) { o.root_ = nullptr; }
  SplaySet& operator=(SplaySet&& o) noexcept {
    root_ = o.root_;
    o.root_ = nullptr;
    return *this;
  }

  bool empty() const { return root_ == nullptr; }
  SplayHook* root() const { return root_; }

  void insert(SplayHook* h);
  // h must be an entry of this set.
  void erase(SplayHook* h);
  // Entries with pre < key go left, the rest right. Empties this set.
  std::pair<SplaySet, SplaySet> split(OmElement key);
  static SplaySet join(SplaySet left, SplaySet right);

  // The entry with the greatest pre such that pre < at_pre and post > at_post.
  SplayHook* lowest_containing(OmElement at_pre, OmElement at_post);

  void for_each(const std::function<void(SplayHook*)>& f) const;
  std::size_t size() const;
  // BST order and max_post augmentation checked by brute force.
  bool check_invariants() const;

 private:
  explicit SplaySet(SplayHook* root) : root_(root) {}
  void splay(SplayHook* x);
  static void rotate(SplayHook* x);
  static void update(SplayHook* x);

  SplayHook* root_ = nullptr;
};

}  // namespace inctype
