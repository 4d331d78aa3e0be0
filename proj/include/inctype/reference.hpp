#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "inctype/actions.hpp"
#include "inctype/side_conditions.hpp"
#include "inctype/syntax.hpp"

namespace inctype {

// From-scratch marking. A None analysis means synthetic mode.
AnnExpr mark_expr(Ctx& ctx, const TypeOpt& ana, const BareExpr& e);
AnnExpr mark_program(const BareExpr& e);

bool is_well_marked(const AnnExpr& p);

// Returns a description of the first violated well-formedness condition.
std::optional<std::string> well_formed_violation(const AnnExpr& p);
bool is_well_formed(const AnnExpr& p);

// Structural action semantics on bare syntax; throws ActionInapplicable or PathError.
void bare_perform_in_place(BareExpr& e, const LocalizedAction& a);
BareExpr bare_perform(BareExpr e, const LocalizedAction& a);
void check_applicable(const BareExpr& target, const Action& a);

// Actions that build `to` at `path`, assuming the node there is a hole. With an
// rng, the annotation, binders and children of each node are built in random order.
void construction_actions(const BareExpr& to, const Path& path, EditTrace& out,
                          std::mt19937_64* rng = nullptr);
EditTrace action_sequence_between(const BareExpr& from, const BareExpr& to);

// Bare tree with a movable focus, used by the from-scratch baseline.
class Zipper {
 public:
  explicit Zipper(BareExpr root);

  void move_to(const Path& p);
  const Path& focus_path() const { return path_; }
  BareExpr& focus() { return focus_; }
  void perform(const Action& a);
  // Zips up, marks the whole program, and leaves the focus at the root.
  AnnExpr check();
  const BareExpr& root();

 private:
  struct Frame {
    BareExpr parent;
    int index;
  };
  void up();
  void down(int i);

  BareExpr focus_;
  std::vector<Frame> frames_;
  Path path_;
};

}  // namespace inctype
