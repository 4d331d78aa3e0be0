#include "inctype/syntax.hpp"

#include <charconv>

namespace inctype {

int arity(Form f) {
  switch (f) {
    case Form::Hole:
    case Form::Var:
    case Form::Num:
    case Form::Bool:
    case Form::Nil:
      return 0;
    case Form::Lam:
    case Form::Asc:
    case Form::Fst:
    case Form::Snd:
      return 1;
    case Form::Ap:
    case Form::Pair:
    case Form::Cons:
      return 2;
    case Form::Case:
      return 3;
  }
  return 0;
}

int binder_count(Form f) {
  if (f == Form::Lam) return 1;
  if (f == Form::Case) return 2;
  return 0;
}

int scope_child(Form f) {
  if (f == Form::Lam) return 0;
  if (f == Form::Case) return 2;
  return -1;
}

bool subsumable(Form f) { return f != Form::Lam; }

const char* form_name(Form f) {
  switch (f) {
    case Form::Hole: return "hole";
    case Form::Var: return "var";
    case Form::Lam: return "lam";
    case Form::Ap: return "ap";
    case Form::Asc: return "asc";
    case Form::Num: return "num";
    case Form::Bool: return "bool";
    case Form::Pair: return "pair";
    case Form::Fst: return "fst";
    case Form::Snd: return "snd";
    case Form::Nil: return "nil";
    case Form::Cons: return "cons";
    case Form::Case: return "case";
  }
  return "?";
}

namespace bare {

static BareExpr node(Form f, std::vector<BareExpr> kids) {
  BareExpr e;
  e.form = f;
  e.kids = std::move(kids);
  return e;
}

BareExpr hole() { return BareExpr{}; }

BareExpr var(std::string x) {
  BareExpr e = node(Form::Var, {});
  e.name = std::move(x);
  return e;
}

BareExpr lam(Binding b, Type ann, BareExpr body) {
  std::vector<BareExpr> kids;
  kids.push_back(std::move(body));
  BareExpr e = node(Form::Lam, std::move(kids));
  e.binders[0] = std::move(b);
  e.surface = std::move(ann);
  return e;
}

BareExpr ap(BareExpr f, BareExpr a) {
  std::vector<BareExpr> kids;
  kids.push_back(std::move(f));
  kids.push_back(std::move(a));
  return node(Form::Ap, std::move(kids));
}

BareExpr asc(BareExpr body, Type t) {
  std::vector<BareExpr> kids;
  kids.push_back(std::move(body));
  BareExpr e = node(Form::Asc, std::move(kids));
  e.surface = std::move(t);
  return e;
}

BareExpr num(std::int64_t n) {
  BareExpr e = node(Form::Num, {});
  e.num = n;
  return e;
}

BareExpr boolean(bool b) {
  BareExpr e = node(Form::Bool, {});
  e.boolean = b;
  return e;
}

BareExpr pair(BareExpr l, BareExpr r) {
  std::vector<BareExpr> kids;
  kids.push_back(std::move(l));
  kids.push_back(std::move(r));
  return node(Form::Pair, std::move(kids));
}

BareExpr fst(BareExpr e) {
  std::vector<BareExpr> kids;
  kids.push_back(std::move(e));
  return node(Form::Fst, std::move(kids));
}

BareExpr snd(BareExpr e) {
  std::vector<BareExpr> kids;
  kids.push_back(std::move(e));
  return node(Form::Snd, std::move(kids));
}

BareExpr nil() { return node(Form::Nil, {}); }

BareExpr cons(BareExpr hd, BareExpr tl) {
  std::vector<BareExpr> kids;
  kids.push_back(std::move(hd));
  kids.push_back(std::move(tl));
  return node(Form::Cons, std::move(kids));
}

BareExpr case_(BareExpr scrut, BareExpr nil_body, Binding hd, Binding tl, BareExpr cons_body) {
  std::vector<BareExpr> kids;
  kids.push_back(std::move(scrut));
  kids.push_back(std::move(nil_body));
  kids.push_back(std::move(cons_body));
  BareExpr e = node(Form::Case, std::move(kids));
  e.binders[0] = std::move(hd);
  e.binders[1] = std::move(tl);
  return e;
}

}  // namespace bare

BareExpr erase(const AnnExpr& e) {
  BareExpr out;
  out.form = e.form;
  out.name = e.name;
  out.binders = e.binders;
  out.surface = e.surface;
  out.num = e.num;
  out.boolean = e.boolean;
  out.kids.reserve(e.kids.size());
  for (const auto& k : e.kids) out.kids.push_back(erase(k));
  return out;
}

AnnExpr strip_dirty(AnnExpr e) {
  e.ana_dirty = e.syn_dirty = e.surface_dirty = false;
  for (auto& k : e.kids) k = strip_dirty(std::move(k));
  return e;
}

bool has_dirty(const AnnExpr& e) {
  if (e.ana_dirty || e.syn_dirty || e.surface_dirty) return true;
  for (const auto& k : e.kids)
    if (has_dirty(k)) return true;
  return false;
}

std::size_t node_count(const BareExpr& e) {
  std::size_t n = 1;
  for (const auto& k : e.kids) n += node_count(k);
  return n;
}

std::size_t node_count(const AnnExpr& e) {
  std::size_t n = 1;
  for (const auto& k : e.kids) n += node_count(k);
  return n;
}

std::size_t error_count(const AnnExpr& e) {
  std::size_t n = e.consistency == Mark::Err ? 1 : 0;
  switch (e.form) {
    case Form::Var:
    case Form::Ap:
    case Form::Fst:
    case Form::Snd:
    case Form::Case:
      n += e.mark1 == Mark::Err;
      break;
    case Form::Lam:
      n += (e.mark1 == Mark::Err) + (e.mark2 == Mark::Err);
      break;
    default:
      break;
  }
  for (const auto& k : e.kids) n += error_count(k);
  return n;
}

template <class E>
static const E& walk(const E& e, const Path& p) {
  const E* cur = &e;
  for (int i : p) {
    if (i < 0 || i >= static_cast<int>(cur->kids.size()))
      throw PathError("no child " + std::to_string(i + 1) + " at " + form_name(cur->form));
    cur = &cur->kids[i];
  }
  return *cur;
}

const BareExpr& at_path(const BareExpr& e, const Path& p) { return walk(e, p); }
const AnnExpr& at_path(const AnnExpr& e, const Path& p) { return walk(e, p); }

bool valid_path(const BareExpr& e, const Path& p) {
  const BareExpr* cur = &e;
  for (int i : p) {
    if (i < 0 || i >= static_cast<int>(cur->kids.size())) return false;
    cur = &cur->kids[i];
  }
  return true;
}

static void collect_paths(const BareExpr& e, Path& prefix, std::vector<Path>& out) {
  out.push_back(prefix);
  for (std::size_t i = 0; i < e.kids.size(); ++i) {
    prefix.push_back(static_cast<int>(i));
    collect_paths(e.kids[i], prefix, out);
    prefix.pop_back();
  }
}

std::vector<Path> all_paths(const BareExpr& e) {
  std::vector<Path> out;
  Path prefix;
  collect_paths(e, prefix, out);
  return out;
}

std::string path_to_string(const Path& p) {
  std::string out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) out += '.';
    out += std::to_string(p[i] + 1);
  }
  return out;
}

Path parse_path(std::string_view text) {
  Path p;
  std::size_t i = 0;
  while (i < text.size() && text[i] == ' ') ++i;
  std::size_t end = text.size();
  while (end > i && text[end - 1] == ' ') --end;
  text = text.substr(i, end - i);
  if (text.empty()) return p;
  std::size_t pos = 0;
  while (true) {
    int v = 0;
    auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + text.size(), v);
    if (ec != std::errc() || v < 1) throw ParseError("bad path component", pos);
    p.push_back(v - 1);
    pos = static_cast<std::size_t>(ptr - text.data());
    if (pos == text.size()) break;
    if (text[pos] != '.') throw ParseError("expected '.' in path", pos);
    ++pos;
  }
  return p;
}

// ---------------------------------------------------------------------------
// printing

std::string print(const Binding& b) { return b.is_hole() ? "?" : b.name; }

static void print_into(std::string& out, const BareExpr& e) {
  switch (e.form) {
    case Form::Hole:
      out += '?';
      return;
    case Form::Nil:
      out += "nil";
      return;
    case Form::Var:
      out += "(var " + e.name + ")";
      return;
    case Form::Num:
      out += "(num " + std::to_string(e.num) + ")";
      return;
    case Form::Bool:
      out += e.boolean ? "(bool true)" : "(bool false)";
      return;
    case Form::Lam:
      out += "(lam " + print(e.binders[0]) + " " + to_string(e.surface) + " ";
      print_into(out, e.kids[0]);
      out += ')';
      return;
    case Form::Asc:
      out += "(asc ";
      print_into(out, e.kids[0]);
      out += " " + to_string(e.surface) + ")";
      return;
    case Form::Case:
      out += "(case ";
      print_into(out, e.kids[0]);
      out += ' ';
      print_into(out, e.kids[1]);
      out += " " + print(e.binders[0]) + " " + print(e.binders[1]) + " ";
      print_into(out, e.kids[2]);
      out += ')';
      return;
    default:
      out += '(';
      out += form_name(e.form);
      for (const auto& k : e.kids) {
        out += ' ';
        print_into(out, k);
      }
      out += ')';
      return;
  }
}

std::string print(const BareExpr& e) {
  std::string out;
  print_into(out, e);
  return out;
}

static void decorate(std::string& out, const AnnExpr& e) {
  out += "{ana=" + to_string(e.ana) + ", mark=" + to_string(e.consistency) +
         ", syn=" + to_string(e.syn) + ", dirty=";
  if (!e.ana_dirty && !e.syn_dirty && !e.surface_dirty) out += '-';
  if (e.ana_dirty) out += 'a';
  if (e.syn_dirty) out += 's';
  if (e.surface_dirty) out += 't';
  switch (e.form) {
    case Form::Var:
      out += ", free=" + to_string(e.mark1);
      break;
    case Form::Lam:
      out += ", arrow=" + to_string(e.mark1) + ", dom=" + to_string(e.mark2);
      break;
    case Form::Ap:
      out += ", fun=" + to_string(e.mark1);
      break;
    case Form::Fst:
    case Form::Snd:
      out += ", prod=" + to_string(e.mark1);
      break;
    case Form::Case:
      out += ", list=" + to_string(e.mark1) + ", hd=" + to_string(e.binder_types[0]) +
             ", tl=" + to_string(e.binder_types[1]);
      break;
    default:
      break;
  }
  out += '}';
}

static void print_decorated_into(std::string& out, const AnnExpr& e) {
  switch (e.form) {
    case Form::Hole:
      out += '?';
      break;
    case Form::Nil:
      out += "nil";
      break;
    case Form::Var:
      out += "(var " + e.name + ")";
      break;
    case Form::Num:
      out += "(num " + std::to_string(e.num) + ")";
      break;
    case Form::Bool:
      out += e.boolean ? "(bool true)" : "(bool false)";
      break;
    case Form::Lam:
      out += "(lam " + print(e.binders[0]) + " " + to_string(e.surface) + " ";
      print_decorated_into(out, e.kids[0]);
      out += ')';
      break;
    case Form::Asc:
      out += "(asc ";
      print_decorated_into(out, e.kids[0]);
      out += " " + to_string(e.surface) + ")";
      break;
    case Form::Case:
      out += "(case ";
      print_decorated_into(out, e.kids[0]);
      out += ' ';
      print_decorated_into(out, e.kids[1]);
      out += " " + print(e.binders[0]) + " " + print(e.binders[1]) + " ";
      print_decorated_into(out, e.kids[2]);
      out += ')';
      break;
    default:
      out += '(';
      out += form_name(e.form);
      for (const auto& k : e.kids) {
        out += ' ';
        print_decorated_into(out, k);
      }
      out += ')';
      break;
  }
  decorate(out, e);
}

std::string print_decorated(const AnnExpr& e) {
  std::string out;
  print_decorated_into(out, e);
  return out;
}

// ---------------------------------------------------------------------------
// parsing

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }
bool is_delim(char c) { return is_space(c) || c == '(' || c == ')'; }

const char* const kReserved[] = {"var",  "lam", "ap",  "asc",  "num",  "bool",  "pair",
                                 "fst",  "snd", "nil", "cons", "case", "arrow", "prod",
                                 "list", "true", "false"};

class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) {}

  void skip() {
    while (pos_ < text_.size()) {
      if (is_space(text_[pos_])) {
        ++pos_;
      } else if (text_[pos_] == ';') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  bool at_end() {
    skip();
    return pos_ >= text_.size();
  }

  char peek() {
    skip();
    if (pos_ >= text_.size()) throw ParseError("unexpected end of input", pos_);
    return text_[pos_];
  }

  void expect(char c) {
    if (peek() != c) throw ParseError(std::string("expected '") + c + "'", pos_);
    ++pos_;
  }

  std::string atom() {
    skip();
    std::size_t start = pos_;
    while (pos_ < text_.size() && !is_delim(text_[pos_])) ++pos_;
    if (start == pos_) throw ParseError("expected atom", start);
    return std::string(text_.substr(start, pos_ - start));
  }

  std::size_t pos() const { return pos_; }

  Type type() {
    std::size_t at = pos_;
    if (peek() == '(') {
      ++pos_;
      std::string head = atom();
      Type t;
      if (head == "arrow" || head == "prod") {
        Type a = type();
        Type b = type();
        t = head == "arrow" ? Type::arrow(std::move(a), std::move(b))
                            : Type::prod(std::move(a), std::move(b));
      } else if (head == "list") {
        t = Type::list(type());
      } else {
        throw ParseError("unknown type constructor '" + head + "'", at);
      }
      expect(')');
      return t;
    }
    std::string a = atom();
    if (a == "?") return Type::unknown();
    if (a == "num") return Type::num();
    if (a == "bool") return Type::boolean();
    throw ParseError("unknown type '" + a + "'", at);
  }

  Binding binding() {
    std::size_t at = pos_;
    if (peek() == '(') throw ParseError("expected binding", at);
    std::string a = atom();
    if (a == "?") return Binding::hole();
    if (!valid_identifier(a)) throw ParseError("invalid identifier '" + a + "'", at);
    return Binding{a};
  }

  BareExpr expr() {
    std::size_t at = pos_;
    if (peek() != '(') {
      std::string a = atom();
      if (a == "?") return bare::hole();
      if (a == "nil") return bare::nil();
      throw ParseError("unexpected atom '" + a + "'", at);
    }
    ++pos_;
    std::string head = atom();
    BareExpr e;
    if (head == "var") {
      std::size_t id_at = pos_;
      std::string x = atom();
      if (!valid_identifier(x)) throw ParseError("invalid identifier '" + x + "'", id_at);
      e = bare::var(x);
    } else if (head == "lam") {
      Binding b = binding();
      Type t = type();
      e = bare::lam(std::move(b), std::move(t), expr());
    } else if (head == "ap" || head == "pair" || head == "cons") {
      BareExpr l = expr();
      BareExpr r = expr();
      e = head == "ap"     ? bare::ap(std::move(l), std::move(r))
          : head == "pair" ? bare::pair(std::move(l), std::move(r))
                           : bare::cons(std::move(l), std::move(r));
    } else if (head == "asc") {
      BareExpr body = expr();
      e = bare::asc(std::move(body), type());
    } else if (head == "num") {
      std::size_t num_at = pos_;
      std::string n = atom();
      std::int64_t v = 0;
      auto [ptr, ec] = std::from_chars(n.data(), n.data() + n.size(), v);
      if (ec != std::errc() || ptr != n.data() + n.size())
        throw ParseError("bad number '" + n + "'", num_at);
      e = bare::num(v);
    } else if (head == "bool") {
      std::size_t b_at = pos_;
      std::string b = atom();
      if (b != "true" && b != "false") throw ParseError("bad boolean '" + b + "'", b_at);
      e = bare::boolean(b == "true");
    } else if (head == "fst" || head == "snd") {
      BareExpr k = expr();
      e = head == "fst" ? bare::fst(std::move(k)) : bare::snd(std::move(k));
    } else if (head == "case") {
      BareExpr scrut = expr();
      BareExpr nil_body = expr();
      Binding hd = binding();
      Binding tl = binding();
      e = bare::case_(std::move(scrut), std::move(nil_body), std::move(hd), std::move(tl), expr());
    } else {
      throw ParseError("unknown form '" + head + "'", at);
    }
    expect(')');
    return e;
  }

  void finish() {
    if (!at_end()) throw ParseError("trailing input", pos_);
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

bool valid_identifier(std::string_view s) {
  if (s.empty()) return false;
  char c0 = s[0];
  if (!((c0 >= 'a' && c0 <= 'z') || (c0 >= 'A' && c0 <= 'Z') || c0 == '_')) return false;
  for (char c : s) {
    bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
              c == '_' || c == '\'';
    if (!ok) return false;
  }
  for (const char* r : kReserved)
    if (s == r) return false;
  return true;
}

BareExpr parse_expr(std::string_view text) {
  Reader r(text);
  BareExpr e = r.expr();
  r.finish();
  return e;
}

Type parse_type(std::string_view text) {
  Reader r(text);
  Type t = r.type();
  r.finish();
  return t;
}

Binding parse_binding(std::string_view text) {
  Reader r(text);
  Binding b = r.binding();
  r.finish();
  return b;
}

std::vector<std::string> split_sexprs(std::string_view text) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < text.size()) {
    if (is_space(text[i])) {
      ++i;
      continue;
    }
    std::size_t start = i;
    if (text[i] == '(') {
      int depth = 0;
      for (; i < text.size(); ++i) {
        if (text[i] == '(') ++depth;
        if (text[i] == ')' && --depth == 0) break;
      }
      if (depth != 0) throw ParseError("unbalanced parentheses", start);
      ++i;
    } else if (text[i] == ')') {
      throw ParseError("unexpected ')'", i);
    } else {
      while (i < text.size() && !is_delim(text[i])) ++i;
    }
    out.emplace_back(text.substr(start, i - start));
  }
  return out;
}

}  // namespace inctype
