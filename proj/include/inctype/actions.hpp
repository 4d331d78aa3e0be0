#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "inctype/syntax.hpp"

namespace inctype {

enum class ActionKind : std::uint8_t {
  InsertVar,
  InsertNum,
  InsertBool,
  InsertNil,
  WrapFun,
  WrapAp,
  WrapAsc,
  WrapPair,
  WrapFst,
  WrapSnd,
  WrapCons,
  WrapCase,
  Delete,
  Unwrap,
  SetAnn,
  SetAsc,
  InsertBinder,
  DeleteBinder,
};

struct Action {
  ActionKind kind = ActionKind::Delete;
  std::string name;       // InsertVar name, InsertBinder binding (empty = hole)
  Type type;              // SetAnn / SetAsc
  std::int64_t num = 0;   // InsertNum
  bool boolean = false;   // InsertBool
  int child = 0;          // 0-based child for Wrap*/Unwrap
  int slot = 0;           // binder slot for Insert/DeleteBinder

  friend bool operator==(const Action&, const Action&) = default;

  static Action insert_var(std::string x);
  static Action insert_num(std::int64_t n);
  static Action insert_bool(bool b);
  static Action insert_nil();
  static Action wrap_fun();
  static Action wrap_ap(int child);
  static Action wrap_asc();
  static Action wrap_pair(int child);
  static Action wrap_fst();
  static Action wrap_snd();
  static Action wrap_cons(int child);
  static Action wrap_case(int child);
  static Action del();
  static Action unwrap(int child);
  static Action set_ann(Type t);
  static Action set_asc(Type t);
  static Action insert_binder(Binding b, int slot = 0);
  static Action delete_binder(int slot = 0);
};

// The constructor a wrap action builds, or Hole for other actions.
Form wrap_form(ActionKind k);
bool is_wrap(ActionKind k);

struct LocalizedAction {
  Path path;
  Action action;
  friend bool operator==(const LocalizedAction&, const LocalizedAction&) = default;
};

using EditTrace = std::vector<LocalizedAction>;

class ActionInapplicable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string action_name(ActionKind k);
std::string print(const Action& a);
std::string print(const LocalizedAction& a);
Action parse_action(std::string_view text);
// Format: "<action> <args> @ <path>"; the "@ <path>" suffix is omitted at the root.
LocalizedAction parse_localized(std::string_view line);
// One action per line; blank lines and lines starting with '#' are skipped.
EditTrace parse_trace(std::string_view text);
std::string print_trace(const EditTrace& t);

}  // namespace inctype
