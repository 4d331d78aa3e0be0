#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "inctype/types.hpp"

namespace inctype {

enum class Form : std::uint8_t {
  Hole,
  Var,
  Lam,
  Ap,
  Asc,
  Num,
  Bool,
  Pair,
  Fst,
  Snd,
  Nil,
  Cons,
  Case,
};

// Number of subexpressions a form carries.
int arity(Form f);
// Number of binder slots: 1 for Lam, 2 for Case (head, tail), else 0.
int binder_count(Form f);
// Child index whose subtree is the scope of the form's binders, or -1.
int scope_child(Form f);
// Forms whose analytic behaviour is synthesize-then-compare.
bool subsumable(Form f);
const char* form_name(Form f);

// An empty name is the binder hole.
struct Binding {
  std::string name;

  bool is_hole() const { return name.empty(); }
  static Binding hole() { return {}; }
  friend bool operator==(const Binding&, const Binding&) = default;
};

struct BareExpr {
  Form form = Form::Hole;
  std::string name;                 // Var
  std::array<Binding, 2> binders;   // Lam: [0]; Case: head, tail
  Type surface;                     // Lam annotation or Asc type
  std::int64_t num = 0;
  bool boolean = false;
  std::vector<BareExpr> kids;

  friend bool operator==(const BareExpr&, const BareExpr&) = default;
};

namespace bare {
BareExpr hole();
BareExpr var(std::string x);
BareExpr lam(Binding b, Type ann, BareExpr body);
BareExpr ap(BareExpr f, BareExpr a);
BareExpr asc(BareExpr e, Type t);
BareExpr num(std::int64_t n);
BareExpr boolean(bool b);
BareExpr pair(BareExpr l, BareExpr r);
BareExpr fst(BareExpr e);
BareExpr snd(BareExpr e);
BareExpr nil();
BareExpr cons(BareExpr hd, BareExpr tl);
BareExpr case_(BareExpr scrut, BareExpr nil_body, Binding hd, Binding tl, BareExpr cons_body);
}  // namespace bare

// A marked expression. With all dirty flags clear this is a marked program;
// with dirty flags it is the state of an incremental document.
struct AnnExpr {
  Form form = Form::Hole;

  // analytic wrapper
  TypeOpt ana;
  bool ana_dirty = false;
  Mark consistency = Mark::Ok;

  // synthetic wrapper
  TypeOpt syn;
  bool syn_dirty = false;

  std::string name;
  std::array<Binding, 2> binders;
  Type surface;
  bool surface_dirty = false;
  std::array<TypeOpt, 2> binder_types;  // Case only
  // Var: free. Lam: non-arrow, domain mismatch. Ap: matched arrow.
  // Fst/Snd: matched product. Case: matched list.
  Mark mark1 = Mark::Ok;
  Mark mark2 = Mark::Ok;
  std::int64_t num = 0;
  bool boolean = false;
  std::vector<AnnExpr> kids;

  friend bool operator==(const AnnExpr&, const AnnExpr&) = default;
};

BareExpr erase(const AnnExpr& e);
AnnExpr strip_dirty(AnnExpr e);
bool has_dirty(const AnnExpr& e);
std::size_t node_count(const BareExpr& e);
std::size_t node_count(const AnnExpr& e);
// Every Err mark in the tree.
std::size_t error_count(const AnnExpr& e);

// Child paths are 0-based internally; text uses 1-based indices.
using Path = std::vector<int>;

const BareExpr& at_path(const BareExpr& e, const Path& p);
const AnnExpr& at_path(const AnnExpr& e, const Path& p);
bool valid_path(const BareExpr& e, const Path& p);
std::vector<Path> all_paths(const BareExpr& e);

std::string path_to_string(const Path& p);
Path parse_path(std::string_view text);

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, std::size_t offset)
      : std::runtime_error(msg + " at offset " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

class PathError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string print(const BareExpr& e);
std::string print(const Binding& b);
std::string print_decorated(const AnnExpr& e);
BareExpr parse_expr(std::string_view text);
Type parse_type(std::string_view text);
Binding parse_binding(std::string_view text);
bool valid_identifier(std::string_view s);
// Splits text into its top-level atoms and parenthesised groups.
std::vector<std::string> split_sexprs(std::string_view text);

}  // namespace inctype
