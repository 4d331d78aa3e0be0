#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace inctype {

class OmOrder;

// Handle to an element of an OmOrder. Handles stay valid as values after the
// element is deleted; operations on them then fail with DeadElement.
struct OmElement {
  const OmOrder* order = nullptr;
  std::uint32_t index = 0;
  std::uint32_t gen = 0;

  bool is_null() const { return order == nullptr; }
  friend bool operator==(const OmElement&, const OmElement&) = default;
};

class OmError : public std::logic_error {
 public:
  enum class Kind { DeadElement, OrderMismatch };
  OmError(Kind k, const char* what) : std::logic_error(what), kind_(k) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

// Two-level order-maintenance list: a top-level list of buckets labelled by
// list labelling, each holding up to kBucketCapacity locally tagged elements.
class OmOrder {
 public:
  static constexpr std::uint32_t kBucketCapacity = 62;

  OmOrder();
  OmOrder(const OmOrder&) = delete;
  OmOrder& operator=(const OmOrder&) = delete;

  // The element created with the order.
  OmElement anchor() const { return anchor_; }

  OmElement insert_after(OmElement e);
  OmElement insert_before(OmElement e);
  void erase(OmElement e);
  std::strong_ordering compare(OmElement a, OmElement b) const;
  bool less(OmElement a, OmElement b) const { return compare(a, b) < 0; }
  bool is_live(OmElement e) const;
  std::size_t size() const { return live_; }

  // Checks internal invariants; used by tests.
  bool check_invariants() const;
  std::size_t bucket_count() const { return live_buckets_; }

 private:
  static constexpr std::uint32_t kNone = 0xffffffffu;
  static constexpr std::uint64_t kTopUniverseBits = 62;

  struct Record {
    std::uint64_t tag = 0;
    std::uint32_t bucket = kNone;
    std::uint32_t prev = kNone;
    std::uint32_t next = kNone;
    std::uint32_t gen = 0;
    bool live = false;
  };
  struct Bucket {
    std::uint64_t tag = 0;
    std::uint32_t prev = kNone;
    std::uint32_t next = kNone;
    std::uint32_t head = kNone;
    std::uint32_t tail = kNone;
    std::uint32_t count = 0;
    bool live = false;
  };

  std::uint32_t live_index(OmElement e) const;
  std::uint32_t new_record();
  std::uint32_t new_bucket();
  std::uint32_t insert_bucket_after(std::uint32_t b);
  void relabel_top(std::uint32_t b);
  void relabel_local(std::uint32_t b);
  void split_bucket(std::uint32_t b);
  // Inserts a new element into bucket b between prev and next (either may be kNone).
  std::uint32_t insert_in_bucket(std::uint32_t b, std::uint32_t prev, std::uint32_t next);
  OmElement handle(std::uint32_t r) const { return {this, r, recs_[r].gen}; }

  std::vector<Record> recs_;
  std::vector<std::uint32_t> free_recs_;
  std::vector<Bucket> buckets_;
  std::vector<std::uint32_t> free_buckets_;
  std::uint32_t first_bucket_ = kNone;
  std::size_t live_ = 0;
  std::size_t live_buckets_ = 0;
  OmElement anchor_;
};

}  // namespace inctype
