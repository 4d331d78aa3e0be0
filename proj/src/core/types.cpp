#include "inctype/types.hpp"

namespace inctype {

std::size_t Type::size() const {
  switch (kind_) {
    case Kind::Arrow:
    case Kind::Prod:
      return 1 + first().size() + second().size();
    case Kind::List:
      return 1 + first().size();
    default:
      return 1;
  }
}

bool operator==(const Type& a, const Type& b) {
  if (a.kind_ != b.kind_) return false;
  switch (a.kind_) {
    case Type::Kind::Arrow:
    case Type::Kind::Prod:
      return a.parts_ == b.parts_ ||
             (a.first() == b.first() && a.second() == b.second());
    case Type::Kind::List:
      return a.parts_ == b.parts_ || a.first() == b.first();
    default:
      return true;
  }
}

static void append(std::string& out, const Type& t) {
  switch (t.kind()) {
    case Type::Kind::Unknown:
      out += '?';
      return;
    case Type::Kind::Num:
      out += "num";
      return;
    case Type::Kind::Bool:
      out += "bool";
      return;
    case Type::Kind::Arrow:
    case Type::Kind::Prod:
      out += t.kind() == Type::Kind::Arrow ? "(arrow " : "(prod ";
      append(out, t.first());
      out += ' ';
      append(out, t.second());
      out += ')';
      return;
    case Type::Kind::List:
      out += "(list ";
      append(out, t.first());
      out += ')';
      return;
  }
}

std::string to_string(const Type& t) {
  std::string out;
  append(out, t);
  return out;
}

std::string to_string(const TypeOpt& t) { return t ? to_string(*t) : "none"; }

std::string to_string(Mark m) { return m == Mark::Ok ? "ok" : "err"; }

}  // namespace inctype
