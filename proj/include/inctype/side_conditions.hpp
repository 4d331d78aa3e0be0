#pragma once

#include <string>
#include <utility>
#include <vector>

#include "inctype/types.hpp"

namespace inctype {

// Association-list typing context; later entries shadow earlier ones.
using Ctx = std::vector<std::pair<std::string, TypeOpt>>;

struct Lookup {
  Mark mark;
  TypeOpt type;
  friend bool operator==(const Lookup&, const Lookup&) = default;
};

struct Matched2 {
  Mark mark;
  TypeOpt first;
  TypeOpt second;
  friend bool operator==(const Matched2&, const Matched2&) = default;
};

struct Matched1 {
  Mark mark;
  TypeOpt elem;
  friend bool operator==(const Matched1&, const Matched1&) = default;
};

Lookup ctx_lookup(const Ctx& ctx, const std::string& x);
// A binder hole never binds, so lookup through it reports a free variable.
Lookup ctx_lookup_binding(const Ctx& ctx, const std::string& binding);

Matched2 matched_arrow(const TypeOpt& t);
Matched2 matched_prod(const TypeOpt& t);
Matched1 matched_list(const TypeOpt& t);

Mark mark_meet(Mark a, Mark b);
bool consistent(const Type& a, const Type& b);
Mark consistency(const TypeOpt& a, const TypeOpt& b);

TypeOpt fun_syn(const TypeOpt& ana, const TypeOpt& ann, const TypeOpt& body);

// Type constructors lifted over absent types.
TypeOpt prod_opt(const TypeOpt& a, const TypeOpt& b);
TypeOpt list_opt(const TypeOpt& elem);

}  // namespace inctype
