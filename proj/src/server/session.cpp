#include "inctype/reference.hpp"
#include "inctype/server.hpp"

namespace inctype {

namespace {

class ProtocolError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

const json& field(const json& req, const char* key) {
  auto it = req.find(key);
  if (it == req.end()) throw ProtocolError(std::string("missing field '") + key + "'");
  return *it;
}

std::string string_field(const json& req, const char* key) {
  const json& v = field(req, key);
  if (!v.is_string()) throw ProtocolError(std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

Path path_field(const json& req, const char* key) {
  const json& v = field(req, key);
  if (!v.is_string()) throw ProtocolError(std::string("field '") + key + "' must be a path string");
  return parse_path(v.get<std::string>());
}

// The longest prefix of p that still addresses a node.
Path clamp_path(const Doc& d, Path p) {
  const Node* cur = &d.root();
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] < 0 || p[i] >= static_cast<int>(cur->kids.size())) {
      p.resize(i);
      break;
    }
    cur = cur->kids[p[i]].get();
  }
  return p;
}

json error_reply(const std::string& msg) { return json{{"ok", false}, {"error", msg}}; }

}  // namespace

json SessionManager::state(Session& s) {
  json dirty = json::array();
  for (const DirtyLoc& loc : s.doc.frontier())
    dirty.push_back({{"path", path_to_string(s.doc.path_of(loc.node))}, {"slot", slot_name(loc.kind)}});
  AnnExpr snap = s.doc.snapshot();
  return json{{"ok", true},
              {"session", s.id},
              {"revision", s.revision},
              {"tree", print_decorated(snap)},
              {"program", print(erase(snap))},
              {"dirty", std::move(dirty)},
              {"cursor", path_to_string(s.cursor)},
              {"quiescent", s.doc.quiescent()},
              {"errors", error_count(snap)}};
}

std::size_t SessionManager::session_count() const {
  std::lock_guard lock(mu_);
  return sessions_.size();
}

std::shared_ptr<Session> SessionManager::find(std::int64_t id) const {
  std::lock_guard lock(mu_);
  auto it = sessions_.find(id);
  return it == sessions_.end() ? nullptr : it->second;
}

json SessionManager::open(const json& req) {
  BareExpr program = bare::hole();
  if (req.contains("program")) program = parse_expr(string_field(req, "program"));
  std::shared_ptr<Session> s;
  {
    std::lock_guard lock(mu_);
    std::int64_t id = next_id_++;
    s = std::make_shared<Session>(id, program);
    sessions_.emplace(id, s);
  }
  std::lock_guard lock(s->mu);
  return state(*s);
}

json SessionManager::process(const json& req) {
  try {
    if (!req.is_object()) throw ProtocolError("request must be a JSON object");
    std::string op = string_field(req, "op");
    if (op == "open") return open(req);

    const json& sid = field(req, "session");
    if (!sid.is_number_integer()) throw ProtocolError("field 'session' must be an integer");
    std::int64_t id = sid.get<std::int64_t>();
    if (op == "close") {
      std::lock_guard lock(mu_);
      if (sessions_.erase(id) == 0) throw ProtocolError("unknown session " + std::to_string(id));
      return json{{"ok", true}, {"session", id}};
    }
    std::shared_ptr<Session> s = find(id);
    if (!s) throw ProtocolError("unknown session " + std::to_string(id));
    std::lock_guard lock(s->mu);
    try {
      return handle(*s, req);
    } catch (const std::exception& e) {
      json r = error_reply(e.what());
      r["session"] = id;
      r["revision"] = s->revision;
      return r;
    }
  } catch (const std::exception& e) {
    return error_reply(e.what());
  }
}

json SessionManager::handle(Session& s, const json& req) {
  std::string op = string_field(req, "op");
  Doc& d = s.doc;

  if (op == "state") return state(s);

  if (op == "move") {
    Path target;
    if (req.contains("path")) {
      target = path_field(req, "path");
    } else {
      std::string dir = string_field(req, "direction");
      target = s.cursor;
      if (dir == "parent") {
        if (target.empty()) throw ProtocolError("cursor is at the root");
        target.pop_back();
      } else if (dir == "child") {
        const json& c = field(req, "child");
        if (!c.is_number_integer()) throw ProtocolError("field 'child' must be an integer");
        target.push_back(c.get<int>() - 1);
      } else if (dir == "root") {
        target.clear();
      } else {
        throw ProtocolError("unknown direction '" + dir + "'");
      }
    }
    d.node_at(target);
    s.cursor = std::move(target);
    ++s.revision;
    return state(s);
  }

  if (op == "action") {
    Path at = req.contains("path") ? path_field(req, "path") : s.cursor;
    Action a = parse_action(string_field(req, "action"));
    d.apply({at, a});
    s.cursor = clamp_path(d, s.cursor);
    ++s.revision;
    return state(s);
  }

  if (op == "step") {
    StepReport r = d.step();
    if (!r.quiescent) ++s.revision;
    json out = state(s);
    out["stepped"] = !r.quiescent;
    if (!r.quiescent) out["rule"] = r.rule;
    return out;
  }

  if (op == "step_at") {
    Path at = path_field(req, "path");
    std::string slot = string_field(req, "slot");
    std::optional<SlotKind> k = parse_slot(slot);
    if (!k) throw ProtocolError("unknown slot '" + slot + "'");
    StepReport r = d.step_at({d.node_at(at), *k});
    ++s.revision;
    json out = state(s);
    out["stepped"] = true;
    out["rule"] = r.rule;
    return out;
  }

  if (op == "run") {
    std::optional<std::size_t> budget;
    if (req.contains("budget")) {
      const json& b = req["budget"];
      if (!b.is_number_integer() || b.get<std::int64_t>() < 0) throw ProtocolError("field 'budget' must be a non-negative integer");
      budget = b.get<std::size_t>();
    }
    std::size_t steps = 0;
    std::uint64_t before = d.counters().steps;
    try {
      steps = d.run_to_quiescence(budget);
    } catch (const StepBudgetExceeded&) {
      if (d.counters().steps != before) ++s.revision;
      throw;
    }
    if (steps > 0) ++s.revision;
    json out = state(s);
    out["steps"] = steps;
    return out;
  }

  throw ProtocolError("unknown op '" + op + "'");
}

}  // namespace inctype
