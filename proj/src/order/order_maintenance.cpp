#include "inctype/order_maintenance.hpp"

#include <cmath>

namespace inctype {

namespace {
constexpr std::uint64_t kTopLimit = std::uint64_t{1} << 62;
// Density threshold base for top-level relabelling; a range of 2^i labels may
// hold at most (2/T)^i buckets with T = 1.5.
constexpr double kDensityBase = 4.0 / 3.0;
}  // namespace

OmOrder::OmOrder() {
  std::uint32_t b = new_bucket();
  buckets_[b].tag = 0;
  first_bucket_ = b;
  std::uint32_t r = insert_in_bucket(b, kNone, kNone);
  anchor_ = handle(r);
}

std::uint32_t OmOrder::new_record() {
  std::uint32_t r;
  if (!free_recs_.empty()) {
    r = free_recs_.back();
    free_recs_.pop_back();
  } else {
    r = static_cast<std::uint32_t>(recs_.size());
    recs_.emplace_back();
  }
  recs_[r].live = true;
  ++live_;
  return r;
}

std::uint32_t OmOrder::new_bucket() {
  std::uint32_t b;
  if (!free_buckets_.empty()) {
    b = free_buckets_.back();
    free_buckets_.pop_back();
    buckets_[b] = Bucket{};
  } else {
    b = static_cast<std::uint32_t>(buckets_.size());
    buckets_.emplace_back();
  }
  buckets_[b].live = true;
  ++live_buckets_;
  return b;
}

std::uint32_t OmOrder::live_index(OmElement e) const {
  if (e.order != this) throw OmError(OmError::Kind::OrderMismatch, "element belongs to another order");
  if (e.index >= recs_.size() || !recs_[e.index].live || recs_[e.index].gen != e.gen)
    throw OmError(OmError::Kind::DeadElement, "element has been deleted");
  return e.index;
}

bool OmOrder::is_live(OmElement e) const {
  return e.order == this && e.index < recs_.size() && recs_[e.index].live &&
         recs_[e.index].gen == e.gen;
}

void OmOrder::relabel_local(std::uint32_t b) {
  Bucket& bk = buckets_[b];
  std::uint64_t step = UINT64_MAX / (static_cast<std::uint64_t>(bk.count) + 1);
  std::uint64_t tag = step;
  for (std::uint32_t r = bk.head; r != kNone; r = recs_[r].next) {
    recs_[r].tag = tag;
    tag += step;
  }
}

std::uint32_t OmOrder::insert_in_bucket(std::uint32_t b, std::uint32_t prev, std::uint32_t next) {
  for (int attempt = 0;; ++attempt) {
    bool room = true;
    std::uint64_t lo = 0;
    std::uint64_t hi = UINT64_MAX;
    if (prev != kNone) {
      if (recs_[prev].tag == UINT64_MAX) room = false;
      else lo = recs_[prev].tag + 1;
    }
    if (next != kNone) {
      if (recs_[next].tag == 0) room = false;
      else hi = recs_[next].tag - 1;
    }
    if (room && lo <= hi) {
      std::uint32_t r = new_record();
      Record& rec = recs_[r];
      rec.tag = lo + (hi - lo) / 2;
      rec.bucket = b;
      rec.prev = prev;
      rec.next = next;
      Bucket& bk = buckets_[b];
      if (prev != kNone) recs_[prev].next = r;
      else bk.head = r;
      if (next != kNone) recs_[next].prev = r;
      else bk.tail = r;
      ++bk.count;
      return r;
    }
    if (attempt > 0) throw std::logic_error("order maintenance: local relabel left no room");
    relabel_local(b);
  }
}

void OmOrder::relabel_top(std::uint32_t b) {
  std::uint32_t lo = b;
  std::uint32_t hi = b;
  std::uint64_t count = 1;
  const std::uint64_t tag = buckets_[b].tag;
  for (std::uint64_t i = 1; i <= kTopUniverseBits; ++i) {
    std::uint64_t size = std::uint64_t{1} << i;
    std::uint64_t base = tag & ~(size - 1);
    while (buckets_[lo].prev != kNone && buckets_[buckets_[lo].prev].tag >= base) {
      lo = buckets_[lo].prev;
      ++count;
    }
    while (buckets_[hi].next != kNone && buckets_[buckets_[hi].next].tag < base + size) {
      hi = buckets_[hi].next;
      ++count;
    }
    double threshold = std::pow(kDensityBase, static_cast<double>(i));
    bool fits = static_cast<double>(count + 1) <= threshold && size / count >= 2;
    if (fits || i == kTopUniverseBits) {
      if (size / count < 2) throw std::length_error("order maintenance: label space exhausted");
      std::uint64_t spacing = size / count;
      std::uint64_t t = base;
      for (std::uint32_t x = lo;; x = buckets_[x].next) {
        buckets_[x].tag = t;
        t += spacing;
        if (x == hi) break;
      }
      return;
    }
  }
}

std::uint32_t OmOrder::insert_bucket_after(std::uint32_t b) {
  for (int attempt = 0;; ++attempt) {
    std::uint32_t nx = buckets_[b].next;
    std::uint64_t next_tag = nx != kNone ? buckets_[nx].tag : kTopLimit;
    std::uint64_t tag = buckets_[b].tag;
    if (next_tag - tag >= 2) {
      std::uint32_t nb = new_bucket();
      Bucket& bk = buckets_[nb];
      bk.tag = tag + (next_tag - tag) / 2;
      bk.prev = b;
      bk.next = nx;
      buckets_[b].next = nb;
      if (nx != kNone) buckets_[nx].prev = nb;
      return nb;
    }
    if (attempt > 0) throw std::logic_error("order maintenance: top relabel left no room");
    relabel_top(b);
  }
}

void OmOrder::split_bucket(std::uint32_t b) {
  std::uint32_t nb = insert_bucket_after(b);
  Bucket& old_b = buckets_[b];
  std::uint32_t keep = old_b.count / 2;
  std::uint32_t r = old_b.head;
  for (std::uint32_t i = 1; i < keep; ++i) r = recs_[r].next;
  std::uint32_t moved = recs_[r].next;
  Bucket& new_b = buckets_[nb];
  new_b.head = moved;
  new_b.tail = old_b.tail;
  new_b.count = old_b.count - keep;
  old_b.tail = r;
  old_b.count = keep;
  recs_[r].next = kNone;
  recs_[moved].prev = kNone;
  for (std::uint32_t x = moved; x != kNone; x = recs_[x].next) recs_[x].bucket = nb;
  relabel_local(b);
  relabel_local(nb);
}

OmElement OmOrder::insert_after(OmElement e) {
  std::uint32_t r = live_index(e);
  if (buckets_[recs_[r].bucket].count >= kBucketCapacity) split_bucket(recs_[r].bucket);
  return handle(insert_in_bucket(recs_[r].bucket, r, recs_[r].next));
}

OmElement OmOrder::insert_before(OmElement e) {
  std::uint32_t r = live_index(e);
  if (buckets_[recs_[r].bucket].count >= kBucketCapacity) split_bucket(recs_[r].bucket);
  return handle(insert_in_bucket(recs_[r].bucket, recs_[r].prev, r));
}

void OmOrder::erase(OmElement e) {
  std::uint32_t r = live_index(e);
  Record& rec = recs_[r];
  std::uint32_t b = rec.bucket;
  Bucket& bk = buckets_[b];
  if (rec.prev != kNone) recs_[rec.prev].next = rec.next;
  else bk.head = rec.next;
  if (rec.next != kNone) recs_[rec.next].prev = rec.prev;
  else bk.tail = rec.prev;
  --bk.count;
  rec.live = false;
  ++rec.gen;
  rec.prev = rec.next = rec.bucket = kNone;
  free_recs_.push_back(r);
  --live_;
  if (bk.count == 0 && live_buckets_ > 1) {
    if (bk.prev != kNone) buckets_[bk.prev].next = bk.next;
    else first_bucket_ = bk.next;
    if (bk.next != kNone) buckets_[bk.next].prev = bk.prev;
    bk.live = false;
    free_buckets_.push_back(b);
    --live_buckets_;
  }
}

std::strong_ordering OmOrder::compare(OmElement a, OmElement b) const {
  std::uint32_t ra = live_index(a);
  std::uint32_t rb = live_index(b);
  if (ra == rb) return std::strong_ordering::equal;
  const Record& x = recs_[ra];
  const Record& y = recs_[rb];
  if (x.bucket != y.bucket) return buckets_[x.bucket].tag <=> buckets_[y.bucket].tag;
  return x.tag <=> y.tag;
}

bool OmOrder::check_invariants() const {
  std::size_t seen = 0;
  std::size_t seen_buckets = 0;
  bool first = true;
  std::uint64_t last_bucket_tag = 0;
  std::uint32_t prev_b = kNone;
  for (std::uint32_t b = first_bucket_; b != kNone; b = buckets_[b].next) {
    const Bucket& bk = buckets_[b];
    if (!bk.live || bk.prev != prev_b || bk.tag >= kTopLimit) return false;
    if (!first && bk.tag <= last_bucket_tag) return false;
    if (bk.count > kBucketCapacity) return false;
    first = false;
    last_bucket_tag = bk.tag;
    ++seen_buckets;
    std::uint32_t n = 0;
    std::uint32_t prev_r = kNone;
    for (std::uint32_t r = bk.head; r != kNone; r = recs_[r].next) {
      const Record& rec = recs_[r];
      if (!rec.live || rec.bucket != b || rec.prev != prev_r) return false;
      if (prev_r != kNone && recs_[prev_r].tag >= rec.tag) return false;
      prev_r = r;
      ++n;
    }
    if (n != bk.count || bk.tail != prev_r) return false;
    seen += n;
    prev_b = b;
  }
  return seen == live_ && seen_buckets == live_buckets_;
}

}  // namespace inctype
