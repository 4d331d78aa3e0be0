#include "inctype/actions.hpp"

#include <charconv>

namespace inctype {

static Action make(ActionKind k) {
  Action a;
  a.kind = k;
  return a;
}

Action Action::insert_var(std::string x) {
  Action a = make(ActionKind::InsertVar);
  a.name = std::move(x);
  return a;
}
Action Action::insert_num(std::int64_t n) {
  Action a = make(ActionKind::InsertNum);
  a.num = n;
  return a;
}
Action Action::insert_bool(bool b) {
  Action a = make(ActionKind::InsertBool);
  a.boolean = b;
  return a;
}
Action Action::insert_nil() { return make(ActionKind::InsertNil); }
Action Action::wrap_fun() { return make(ActionKind::WrapFun); }
Action Action::wrap_ap(int child) {
  Action a = make(ActionKind::WrapAp);
  a.child = child;
  return a;
}
Action Action::wrap_asc() { return make(ActionKind::WrapAsc); }
Action Action::wrap_pair(int child) {
  Action a = make(ActionKind::WrapPair);
  a.child = child;
  return a;
}
Action Action::wrap_fst() { return make(ActionKind::WrapFst); }
Action Action::wrap_snd() { return make(ActionKind::WrapSnd); }
Action Action::wrap_cons(int child) {
  Action a = make(ActionKind::WrapCons);
  a.child = child;
  return a;
}
Action Action::wrap_case(int child) {
  Action a = make(ActionKind::WrapCase);
  a.child = child;
  return a;
}
Action Action::del() { return make(ActionKind::Delete); }
Action Action::unwrap(int child) {
  Action a = make(ActionKind::Unwrap);
  a.child = child;
  return a;
}
Action Action::set_ann(Type t) {
  Action a = make(ActionKind::SetAnn);
  a.type = std::move(t);
  return a;
}
Action Action::set_asc(Type t) {
  Action a = make(ActionKind::SetAsc);
  a.type = std::move(t);
  return a;
}
Action Action::insert_binder(Binding b, int slot) {
  Action a = make(ActionKind::InsertBinder);
  a.name = std::move(b.name);
  a.slot = slot;
  return a;
}
Action Action::delete_binder(int slot) {
  Action a = make(ActionKind::DeleteBinder);
  a.slot = slot;
  return a;
}

Form wrap_form(ActionKind k) {
  switch (k) {
    case ActionKind::WrapFun: return Form::Lam;
    case ActionKind::WrapAp: return Form::Ap;
    case ActionKind::WrapAsc: return Form::Asc;
    case ActionKind::WrapPair: return Form::Pair;
    case ActionKind::WrapFst: return Form::Fst;
    case ActionKind::WrapSnd: return Form::Snd;
    case ActionKind::WrapCons: return Form::Cons;
    case ActionKind::WrapCase: return Form::Case;
    default: return Form::Hole;
  }
}

bool is_wrap(ActionKind k) { return wrap_form(k) != Form::Hole; }

std::string action_name(ActionKind k) {
  switch (k) {
    case ActionKind::InsertVar: return "insert-var";
    case ActionKind::InsertNum: return "insert-num";
    case ActionKind::InsertBool: return "insert-bool";
    case ActionKind::InsertNil: return "insert-nil";
    case ActionKind::WrapFun: return "wrap-fun";
    case ActionKind::WrapAp: return "wrap-ap";
    case ActionKind::WrapAsc: return "wrap-asc";
    case ActionKind::WrapPair: return "wrap-pair";
    case ActionKind::WrapFst: return "wrap-fst";
    case ActionKind::WrapSnd: return "wrap-snd";
    case ActionKind::WrapCons: return "wrap-cons";
    case ActionKind::WrapCase: return "wrap-case";
    case ActionKind::Delete: return "delete";
    case ActionKind::Unwrap: return "unwrap";
    case ActionKind::SetAnn: return "set-ann";
    case ActionKind::SetAsc: return "set-asc";
    case ActionKind::InsertBinder: return "insert-binder";
    case ActionKind::DeleteBinder: return "delete-binder";
  }
  return "?";
}

std::string print(const Action& a) {
  std::string out = action_name(a.kind);
  switch (a.kind) {
    case ActionKind::InsertVar:
      out += " " + a.name;
      break;
    case ActionKind::InsertNum:
      out += " " + std::to_string(a.num);
      break;
    case ActionKind::InsertBool:
      out += a.boolean ? " true" : " false";
      break;
    case ActionKind::WrapAp:
    case ActionKind::WrapPair:
    case ActionKind::WrapCons:
    case ActionKind::WrapCase:
    case ActionKind::Unwrap:
      out += " " + std::to_string(a.child + 1);
      break;
    case ActionKind::SetAnn:
    case ActionKind::SetAsc:
      out += " " + to_string(a.type);
      break;
    case ActionKind::InsertBinder:
      out += " " + print(Binding{a.name});
      if (a.slot != 0) out += " " + std::to_string(a.slot + 1);
      break;
    case ActionKind::DeleteBinder:
      if (a.slot != 0) out += " " + std::to_string(a.slot + 1);
      break;
    default:
      break;
  }
  return out;
}

std::string print(const LocalizedAction& a) {
  std::string out = print(a.action);
  if (!a.path.empty()) out += " @ " + path_to_string(a.path);
  return out;
}

static int parse_index(const std::string& s, int max) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || v < 1 || v > max)
    throw ParseError("bad child index '" + s + "'", 0);
  return v - 1;
}

Action parse_action(std::string_view text) {
  std::vector<std::string> parts = split_sexprs(text);
  if (parts.empty()) throw ParseError("empty action", 0);
  const std::string& head = parts[0];
  auto want = [&](std::size_t lo, std::size_t hi) {
    if (parts.size() < lo + 1 || parts.size() > hi + 1)
      throw ParseError("wrong number of arguments for " + head, 0);
  };
  if (head == "insert-var") {
    want(1, 1);
    if (!valid_identifier(parts[1])) throw ParseError("invalid identifier '" + parts[1] + "'", 0);
    return Action::insert_var(parts[1]);
  }
  if (head == "insert-num") {
    want(1, 1);
    std::int64_t v = 0;
    const std::string& s = parts[1];
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) throw ParseError("bad number", 0);
    return Action::insert_num(v);
  }
  if (head == "insert-bool") {
    want(1, 1);
    if (parts[1] != "true" && parts[1] != "false") throw ParseError("bad boolean", 0);
    return Action::insert_bool(parts[1] == "true");
  }
  if (head == "insert-nil") return want(0, 0), Action::insert_nil();
  if (head == "wrap-fun") return want(0, 0), Action::wrap_fun();
  if (head == "wrap-asc") return want(0, 0), Action::wrap_asc();
  if (head == "wrap-fst") return want(0, 0), Action::wrap_fst();
  if (head == "wrap-snd") return want(0, 0), Action::wrap_snd();
  if (head == "delete") return want(0, 0), Action::del();
  if (head == "wrap-ap") return want(1, 1), Action::wrap_ap(parse_index(parts[1], 2));
  if (head == "wrap-pair") return want(1, 1), Action::wrap_pair(parse_index(parts[1], 2));
  if (head == "wrap-cons") return want(1, 1), Action::wrap_cons(parse_index(parts[1], 2));
  if (head == "wrap-case") return want(1, 1), Action::wrap_case(parse_index(parts[1], 3));
  if (head == "unwrap") return want(1, 1), Action::unwrap(parse_index(parts[1], 3));
  if (head == "set-ann") return want(1, 1), Action::set_ann(parse_type(parts[1]));
  if (head == "set-asc") return want(1, 1), Action::set_asc(parse_type(parts[1]));
  if (head == "insert-binder") {
    want(1, 2);
    int slot = parts.size() == 3 ? parse_index(parts[2], 2) : 0;
    return Action::insert_binder(parse_binding(parts[1]), slot);
  }
  if (head == "delete-binder") {
    want(0, 1);
    return Action::delete_binder(parts.size() == 2 ? parse_index(parts[1], 2) : 0);
  }
  throw ParseError("unknown action '" + head + "'", 0);
}

LocalizedAction parse_localized(std::string_view line) {
  LocalizedAction out;
  std::size_t at = line.rfind('@');
  if (at == std::string_view::npos) {
    out.action = parse_action(line);
  } else {
    out.action = parse_action(line.substr(0, at));
    out.path = parse_path(line.substr(at + 1));
  }
  return out;
}

EditTrace parse_trace(std::string_view text) {
  EditTrace out;
  std::size_t pos = 0;
  std::size_t lineno = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    ++lineno;
    pos = nl + 1;
    std::size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string_view::npos || line[first] == '#') continue;
    try {
      out.push_back(parse_localized(line));
    } catch (const ParseError& e) {
      throw ParseError("line " + std::to_string(lineno) + ": " + e.what(), pos);
    }
  }
  return out;
}

std::string print_trace(const EditTrace& t) {
  std::string out;
  for (const auto& a : t) out += print(a) + "\n";
  return out;
}

}  // namespace inctype
