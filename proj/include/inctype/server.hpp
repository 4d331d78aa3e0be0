#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include "json.hpp"

#include "inctype/engine.hpp"

namespace inctype {

using json = nlohmann::json;

struct Session {
  std::int64_t id = 0;
  Doc doc;
  Path cursor;
  std::int64_t revision = 0;
  std::mutex mu;

  Session(std::int64_t id, const BareExpr& program) : id(id), doc(program) {}
};

// Handles protocol messages. Requests for one session are serialized; distinct
// sessions proceed independently.
class SessionManager {
 public:
  json process(const json& request);
  std::size_t session_count() const;

 private:
  json open(const json& req);
  std::shared_ptr<Session> find(std::int64_t id) const;
  static json handle(Session& s, const json& req);
  static json state(Session& s);

  mutable std::mutex mu_;
  std::map<std::int64_t, std::shared_ptr<Session>> sessions_;
  std::int64_t next_id_ = 1;
};

// Frames are a 4-byte big-endian payload length followed by UTF-8 JSON.
constexpr std::uint32_t kMaxFrame = 64u << 20;
bool read_frame(int fd, std::string& payload);
bool write_frame(int fd, const std::string& payload);

class SocketServer {
 public:
  explicit SocketServer(SessionManager& mgr) : mgr_(mgr) {}
  ~SocketServer();
  // Binds 127.0.0.1:port (0 picks a free port) and returns the bound port.
  std::uint16_t listen(std::uint16_t port);
  // Accepts connections until stop(); one thread per connection.
  void serve();
  void stop();

 private:
  void connection(int fd);

  SessionManager& mgr_;
  int listen_fd_ = -1;
  std::atomic<bool> stopping_{false};
  std::atomic<int> active_{0};
};

}  // namespace inctype
