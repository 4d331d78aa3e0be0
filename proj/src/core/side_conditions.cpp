#include "inctype/side_conditions.hpp"

namespace inctype {

Lookup ctx_lookup(const Ctx& ctx, const std::string& x) {
  for (auto it = ctx.rbegin(); it != ctx.rend(); ++it)
    if (it->first == x) return {Mark::Ok, it->second};
  return {Mark::Err, Type::unknown()};
}

Lookup ctx_lookup_binding(const Ctx& ctx, const std::string& binding) {
  if (binding.empty()) return {Mark::Err, Type::unknown()};
  return ctx_lookup(ctx, binding);
}

Matched2 matched_arrow(const TypeOpt& t) {
  if (!t) return {Mark::Ok, std::nullopt, std::nullopt};
  if (t->is_unknown()) return {Mark::Ok, Type::unknown(), Type::unknown()};
  if (t->kind() == Type::Kind::Arrow) return {Mark::Ok, t->first(), t->second()};
  return {Mark::Err, Type::unknown(), Type::unknown()};
}

Matched2 matched_prod(const TypeOpt& t) {
  if (!t) return {Mark::Ok, std::nullopt, std::nullopt};
  if (t->is_unknown()) return {Mark::Ok, Type::unknown(), Type::unknown()};
  if (t->kind() == Type::Kind::Prod) return {Mark::Ok, t->first(), t->second()};
  return {Mark::Err, Type::unknown(), Type::unknown()};
}

Matched1 matched_list(const TypeOpt& t) {
  if (!t) return {Mark::Ok, std::nullopt};
  if (t->is_unknown()) return {Mark::Ok, Type::unknown()};
  if (t->kind() == Type::Kind::List) return {Mark::Ok, t->first()};
  return {Mark::Err, Type::unknown()};
}

Mark mark_meet(Mark a, Mark b) {
  return a == Mark::Ok && b == Mark::Ok ? Mark::Ok : Mark::Err;
}

bool consistent(const Type& a, const Type& b) {
  if (a.is_unknown() || b.is_unknown()) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Type::Kind::Arrow:
    case Type::Kind::Prod:
      return consistent(a.first(), b.first()) && consistent(a.second(), b.second());
    case Type::Kind::List:
      return consistent(a.first(), b.first());
    default:
      return true;
  }
}

Mark consistency(const TypeOpt& a, const TypeOpt& b) {
  if (!a || !b) return Mark::Ok;
  return consistent(*a, *b) ? Mark::Ok : Mark::Err;
}

TypeOpt fun_syn(const TypeOpt& ana, const TypeOpt& ann, const TypeOpt& body) {
  if (ana || !ann || !body) return std::nullopt;
  return Type::arrow(*ann, *body);
}

TypeOpt prod_opt(const TypeOpt& a, const TypeOpt& b) {
  if (!a || !b) return std::nullopt;
  return Type::prod(*a, *b);
}

TypeOpt list_opt(const TypeOpt& elem) {
  if (!elem) return std::nullopt;
  return Type::list(*elem);
}

}  // namespace inctype
