#include <arpa/inet.h>
#include <netinet/in.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <thread>

#include "inctype/server.hpp"

namespace inctype {

namespace {

bool read_all(int fd, char* buf, std::size_t n) {
  while (n > 0) {
    ssize_t r = ::recv(fd, buf, n, 0);
    if (r < 0 && errno == EINTR) continue;
    if (r <= 0) return false;
    buf += r;
    n -= static_cast<std::size_t>(r);
  }
  return true;
}

bool write_all(int fd, const char* buf, std::size_t n) {
  while (n > 0) {
    ssize_t w = ::send(fd, buf, n, MSG_NOSIGNAL);
    if (w < 0 && errno == EINTR) continue;
    if (w <= 0) return false;
    buf += w;
    n -= static_cast<std::size_t>(w);
  }
  return true;
}

std::runtime_error sys_error(const char* what) {
  return std::runtime_error(std::string(what) + ": " + std::strerror(errno));
}

}  // namespace

bool read_frame(int fd, std::string& payload) {
  unsigned char hdr[4];
  if (!read_all(fd, reinterpret_cast<char*>(hdr), 4)) return false;
  std::uint32_t len = (std::uint32_t{hdr[0]} << 24) | (std::uint32_t{hdr[1]} << 16) |
                      (std::uint32_t{hdr[2]} << 8) | std::uint32_t{hdr[3]};
  if (len > kMaxFrame) return false;
  payload.resize(len);
  return read_all(fd, payload.data(), len);
}

bool write_frame(int fd, const std::string& payload) {
  if (payload.size() > kMaxFrame) return false;
  auto len = static_cast<std::uint32_t>(payload.size());
  unsigned char hdr[4] = {static_cast<unsigned char>(len >> 24), static_cast<unsigned char>(len >> 16),
                          static_cast<unsigned char>(len >> 8), static_cast<unsigned char>(len)};
  return write_all(fd, reinterpret_cast<const char*>(hdr), 4) && write_all(fd, payload.data(), len);
}

SocketServer::~SocketServer() {
  stop();
  while (active_.load() > 0) std::this_thread::yield();
}

std::uint16_t SocketServer::listen(std::uint16_t port) {
  listen_fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
  if (listen_fd_ < 0) throw sys_error("socket");
  int one = 1;
  ::setsockopt(listen_fd_, SOL_SOCKET, SO_REUSEADDR, &one, sizeof one);
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
  addr.sin_port = htons(port);
  if (::bind(listen_fd_, reinterpret_cast<sockaddr*>(&addr), sizeof addr) < 0) throw sys_error("bind");
  if (::listen(listen_fd_, 16) < 0) throw sys_error("listen");
  socklen_t len = sizeof addr;
  if (::getsockname(listen_fd_, reinterpret_cast<sockaddr*>(&addr), &len) < 0)
    throw sys_error("getsockname");
  return ntohs(addr.sin_port);
}

void SocketServer::serve() {
  while (!stopping_.load()) {
    pollfd p{listen_fd_, POLLIN, 0};
    int r = ::poll(&p, 1, 100);
    if (r < 0 && errno != EINTR) throw sys_error("poll");
    if (r <= 0) continue;
    int fd = ::accept(listen_fd_, nullptr, nullptr);
    if (fd < 0) continue;
    ++active_;
    std::thread([this, fd] {
      connection(fd);
      ::close(fd);
      --active_;
    }).detach();
  }
}

void SocketServer::stop() {
  stopping_.store(true);
  if (listen_fd_ >= 0) {
    ::close(listen_fd_);
    listen_fd_ = -1;
  }
}

void SocketServer::connection(int fd) {
  std::string in;
  while (!stopping_.load()) {
    pollfd p{fd, POLLIN, 0};
    int r = ::poll(&p, 1, 100);
    if (r < 0 && errno != EINTR) return;
    if (r <= 0) continue;
    if (!read_frame(fd, in)) return;
    json reply;
    try {
      reply = mgr_.process(json::parse(in));
    } catch (const json::parse_error& e) {
      reply = json{{"ok", false}, {"error", std::string("malformed JSON: ") + e.what()}};
    }
    if (!write_frame(fd, reply.dump())) return;
  }
}

}  // namespace inctype
