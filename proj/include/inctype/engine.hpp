#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "inctype/actions.hpp"
#include "inctype/binder_index.hpp"
#include "inctype/order_maintenance.hpp"
#include "inctype/syntax.hpp"

namespace inctype {

enum class SlotKind : std::uint8_t { SurfaceAnn, SurfaceAsc, Ana, Syn };

const char* slot_name(SlotKind k);
std::optional<SlotKind> parse_slot(const std::string& s);

// A node of the incremental document. Fields mirror AnnExpr plus the
// bookkeeping needed for propagation and binding.
struct Node {
  Form form = Form::Hole;
  TypeOpt ana;
  Mark consistency = Mark::Ok;
  TypeOpt syn;
  bool ana_dirty = false;
  bool syn_dirty = false;
  bool surface_dirty = false;
  std::uint32_t ana_gen = 0;
  std::uint32_t syn_gen = 0;
  std::uint32_t surface_gen = 0;

  std::string name;
  std::array<Binding, 2> binders;
  Type surface;
  std::array<TypeOpt, 2> binder_types;
  Mark mark1 = Mark::Ok;
  Mark mark2 = Mark::Ok;
  std::int64_t num = 0;
  bool boolean = false;

  Node* parent = nullptr;
  int index = 0;
  std::vector<std::unique_ptr<Node>> kids;

  OmElement pre;
  OmElement post;
  // Case only: head scope (0, 3) encloses tail scope (1, 2), both around the cons branch.
  std::array<OmElement, 4> scope;
  VarEntry var;
  std::array<std::unique_ptr<BinderRecord>, 2> records;
  bool deleted = false;
};

struct DirtyLoc {
  const Node* node = nullptr;
  SlotKind kind = SlotKind::Ana;
  friend bool operator==(const DirtyLoc&, const DirtyLoc&) = default;
};

struct StepReport {
  bool quiescent = true;
  const Node* node = nullptr;
  SlotKind kind = SlotKind::Ana;
  const char* rule = "";
  bool consumed_surface = false;
  // Every slot dirtied by the step lies strictly after the consumed one.
  bool downstream_only = true;
  std::size_t dirtied = 0;
};

struct EngineCounters {
  std::uint64_t actions = 0;
  std::uint64_t steps = 0;
  std::uint64_t stale_pops = 0;
  std::uint64_t node_visits = 0;
};

class NotDirty : public std::runtime_error {
 public:
  NotDirty() : std::runtime_error("location is not on the update frontier") {}
};

class StepBudgetExceeded : public std::runtime_error {
 public:
  explicit StepBudgetExceeded(std::size_t budget)
      : std::runtime_error("update propagation exceeded " + std::to_string(budget) + " steps") {}
};

class Doc {
 public:
  explicit Doc(const BareExpr& program);
  Doc(Doc&&) noexcept;
  Doc& operator=(Doc&&) noexcept;
  ~Doc();

  void apply(const LocalizedAction& a);
  // Applies at a node already resolved from a path, as an editor cursor would.
  void apply(const Node* target, const Action& a);
  StepReport step();
  StepReport step_at(DirtyLoc loc);
  // Returns the number of steps taken. The default budget is 64 per live node.
  std::size_t run_to_quiescence(std::optional<std::size_t> budget = std::nullopt);

  bool quiescent() const { return dirty_count_ == 0; }
  std::size_t dirty_count() const { return dirty_count_; }
  std::size_t surface_dirty_count() const { return surface_dirty_count_; }
  // Dirty locations in propagation order.
  std::vector<DirtyLoc> frontier() const;

  AnnExpr snapshot() const;
  const Node& root() const { return *root_; }
  const Node* node_at(const Path& p) const;
  Path path_of(const Node* n) const;
  std::size_t node_count() const { return live_nodes_; }
  const OmOrder& order() const { return *order_; }
  const BinderIndex& binders() const { return index_; }
  // The node and binder slot owning a variable occurrence, or null when free.
  static const BinderRecord* owner_of(const Node& var) { return var.var.owner; }

  EngineCounters& counters() { return counters_; }
  const EngineCounters& counters() const { return counters_; }

 private:
  struct Entry {
    OmElement key;
    std::uint8_t rank;
    Node* node;
    SlotKind kind;
    std::uint32_t gen;
  };
  struct EntryAfter {
    bool operator()(const Entry& a, const Entry& b) const;
  };

  std::unique_ptr<Node>& slot_of(Node* n);
  std::unique_ptr<Node> make_node(Form f);
  std::unique_ptr<Node> build(const AnnExpr& e, Node* parent, int index);
  void stamp(Node* n, OmElement& prev);
  void stamp_around(Node* w, int c, Node* kept);
  void register_binders(Node* n);
  void bind_vars(Node* n);
  void make_record(Node* n, int slot);
  void tombstone(std::unique_ptr<Node> n);
  void collect_garbage();

  void dirty(Node* n, SlotKind k);
  void set_ana(Node* n, TypeOpt v);
  void set_syn(Node* n, TypeOpt v);
  TypeOpt binder_type(const BinderRecord& r) const;
  void update_var(VarEntry* v, Mark m, const TypeOpt& t, bool optimize);
  void rebind_released(const std::vector<VarEntry*>& vs);

  void act_wrap(Node* t, const Action& a);
  void act_unwrap(Node* t, int c);
  void act_replace_with_hole(Node* t);
  void act_insert_binder(Node* t, const Action& a);
  void act_delete_binder(Node* t, int slot);

  StepReport execute(Node* n, SlotKind k);
  void step_ana(Node* n, StepReport& r);
  void step_ana_fun(Node* n, StepReport& r);
  void step_ann_fun(Node* n, StepReport& r);
  void step_asc(Node* n, StepReport& r);
  void step_syn(Node* n, StepReport& r);

  std::unique_ptr<OmOrder> order_;
  std::unique_ptr<Node> root_;
  BinderIndex index_;
  std::vector<Entry> heap_;
  std::vector<std::unique_ptr<Node>> graveyard_;
  std::size_t dirty_count_ = 0;
  std::size_t surface_dirty_count_ = 0;
  std::size_t live_nodes_ = 0;
  EngineCounters counters_;

  // Set while a step runs, to audit the slots it dirties.
  const Entry* auditing_ = nullptr;
  StepReport* audit_report_ = nullptr;
  // Steps skip re-dirtying slots whose value does not change; actions never do.
  bool optimize_ = false;
};

}  // namespace inctype
