#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>

namespace inctype {

// Immutable structural type. Compound types share their children, so copies
// are cheap and never alias mutable state.
class Type {
 public:
  enum class Kind : std::uint8_t { Unknown, Num, Bool, Arrow, Prod, List };

  Type() = default;

  static Type unknown() { return Type(); }
  static Type num() { return Type(Kind::Num); }
  static Type boolean() { return Type(Kind::Bool); }
  static Type arrow(Type dom, Type cod);
  static Type prod(Type left, Type right);
  static Type list(Type elem);

  Kind kind() const { return kind_; }
  bool is_unknown() const { return kind_ == Kind::Unknown; }

  // Arrow: (dom, cod). Prod: (left, right). List: first() is the element.
  const Type& first() const;
  const Type& second() const;

  std::size_t size() const;

  friend bool operator==(const Type& a, const Type& b);
  friend bool operator!=(const Type& a, const Type& b) { return !(a == b); }

 private:
  struct Parts;

  explicit Type(Kind k) : kind_(k) {}
  Type(Kind k, Type a, Type b);

  Kind kind_ = Kind::Unknown;
  std::shared_ptr<const Parts> parts_;
};

struct Type::Parts {
  Type first;
  Type second;
};

inline Type::Type(Kind k, Type a, Type b)
    : kind_(k), parts_(std::make_shared<const Parts>(Parts{std::move(a), std::move(b)})) {}
inline Type Type::arrow(Type dom, Type cod) { return Type(Kind::Arrow, std::move(dom), std::move(cod)); }
inline Type Type::prod(Type left, Type right) {
  return Type(Kind::Prod, std::move(left), std::move(right));
}
inline Type Type::list(Type elem) { return Type(Kind::List, std::move(elem), Type()); }
inline const Type& Type::first() const { return parts_->first; }
inline const Type& Type::second() const { return parts_->second; }

// None is the absent type written as a box in the formal presentation.
using TypeOpt = std::optional<Type>;

enum class Mark : std::uint8_t { Ok, Err };

std::string to_string(const Type& t);
std::string to_string(const TypeOpt& t);
std::string to_string(Mark m);

}  // namespace inctype
