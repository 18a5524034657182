// Copyright (c) the fvel toolkit contributors.
// Licensed under the Apache 2.0 License.

#include <fcntl.h>
#include <netdb.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <cstring>

#include "fvel/errors.hpp"
#include "fvel/prover.hpp"

namespace fvel {

namespace {

using Clock = std::chrono::steady_clock;

int remaining_ms(Clock::time_point deadline) {
  auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - Clock::now());
  return left.count() < 0 ? 0 : static_cast<int>(left.count());
}

class TcpBackend final : public ProverBackend {
 public:
  ~TcpBackend() override {
    if (fd_ >= 0) ::close(fd_);
  }

  WireReply init(const ProverConfig& config) override {
    timeout_ = config.timeout_seconds;
    connect_to(config.endpoint, config.timeout_seconds);
    Json payload = {{"session_roots", config.session_roots},
                    {"working_directory", config.working_directory},
                    {"imports", config.imports},
                    {"timeout", config.timeout_seconds}};
    Json reply = request("init", payload, config.timeout_seconds);
    auto wire = to_wire(reply);
    if (!wire.ok) {
      std::string msg = wire.errors.empty() ? "init rejected" : wire.errors.front();
      throw InitRejectedError(msg);
    }
    return wire;
  }

  WireReply step(const std::string& text) override {
    Json reply = request("step", Json{{"text", text}}, timeout_);
    return to_wire(reply);
  }

  void close() override {
    if (fd_ < 0) return;
    try {
      send_line(Json{{"id", ++next_id_}, {"cmd", "close"}, {"payload", Json::object()}}.dump(),
                Clock::now() + std::chrono::milliseconds(500));
    } catch (...) {
    }
    ::close(fd_);
    fd_ = -1;
  }

 private:
  static WireReply to_wire(const Json& reply) {
    WireReply r;
    r.ok = reply.value("ok", false);
    r.state = reply.value("state", std::string());
    if (reply.contains("errors"))
      for (const auto& e : reply["errors"]) r.errors.push_back(e.get<std::string>());
    if (reply.contains("elapsed_ms")) r.elapsed = reply["elapsed_ms"].get<double>() / 1000.0;
    if (reply.contains("loaded"))
      for (const auto& e : reply["loaded"]) r.loaded.push_back(e.get<std::string>());
    return r;
  }

  void connect_to(const std::string& endpoint, double timeout_seconds) {
    auto colon = endpoint.find_last_of(':');
    if (colon == std::string::npos)
      throw ConnectFailedError("endpoint must be host:port, got: " + endpoint);
    std::string host = endpoint.substr(0, colon);
    std::string port = endpoint.substr(colon + 1);

    addrinfo hints{};
    hints.ai_family = AF_UNSPEC;
    hints.ai_socktype = SOCK_STREAM;
    addrinfo* res = nullptr;
    int rc = ::getaddrinfo(host.c_str(), port.c_str(), &hints, &res);
    if (rc != 0) throw ConnectFailedError("resolve " + endpoint + ": " + gai_strerror(rc));

    auto deadline = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                       std::chrono::duration<double>(timeout_seconds));
    std::string last_error = "no addresses";
    for (addrinfo* ai = res; ai; ai = ai->ai_next) {
      int fd = ::socket(ai->ai_family, ai->ai_socktype | SOCK_NONBLOCK, ai->ai_protocol);
      if (fd < 0) {
        last_error = std::strerror(errno);
        continue;
      }
      if (::connect(fd, ai->ai_addr, ai->ai_addrlen) == 0) {
        fd_ = fd;
        break;
      }
      if (errno == EINPROGRESS) {
        pollfd pfd{fd, POLLOUT, 0};
        int pr = ::poll(&pfd, 1, remaining_ms(deadline));
        if (pr > 0) {
          int err = 0;
          socklen_t len = sizeof(err);
          ::getsockopt(fd, SOL_SOCKET, SO_ERROR, &err, &len);
          if (err == 0) {
            fd_ = fd;
            break;
          }
          last_error = std::strerror(err);
        } else {
          last_error = pr == 0 ? "connect timed out" : std::strerror(errno);
        }
      } else {
        last_error = std::strerror(errno);
      }
      ::close(fd);
    }
    ::freeaddrinfo(res);
    if (fd_ < 0) throw ConnectFailedError("connect " + endpoint + ": " + last_error);
  }

  Json request(const std::string& cmd, Json payload, double timeout_seconds) {
    const int id = ++next_id_;
    auto deadline = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                       std::chrono::duration<double>(timeout_seconds));
    Json req = {{"id", id}, {"cmd", cmd}, {"payload", std::move(payload)}};
    send_line(req.dump(), deadline);
    std::string line = recv_line(deadline);
    Json reply;
    try {
      reply = Json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw SessionLostError(std::string("bad reply: ") + e.what());
    }
    if (reply.value("id", -1) != id)
      throw SessionLostError("reply id mismatch (one outstanding request per session)");
    return reply;
  }

  void send_line(std::string line, Clock::time_point deadline) {
    line.push_back('\n');
    std::size_t sent = 0;
    while (sent < line.size()) {
      pollfd pfd{fd_, POLLOUT, 0};
      int pr = ::poll(&pfd, 1, remaining_ms(deadline));
      if (pr == 0) throw TimeoutError("send timed out");
      if (pr < 0) throw SessionLostError(std::strerror(errno));
      ssize_t n = ::send(fd_, line.data() + sent, line.size() - sent, MSG_NOSIGNAL);
      if (n < 0) {
        if (errno == EAGAIN || errno == EWOULDBLOCK) continue;
        throw SessionLostError(std::strerror(errno));
      }
      sent += static_cast<std::size_t>(n);
    }
  }

  std::string recv_line(Clock::time_point deadline) {
    for (;;) {
      auto nl = buffer_.find('\n');
      if (nl != std::string::npos) {
        std::string line = buffer_.substr(0, nl);
        buffer_.erase(0, nl + 1);
        return line;
      }
      pollfd pfd{fd_, POLLIN, 0};
      int pr = ::poll(&pfd, 1, remaining_ms(deadline));
      if (pr == 0) throw TimeoutError("reply timed out");
      if (pr < 0) throw SessionLostError(std::strerror(errno));
      char chunk[4096];
      ssize_t n = ::recv(fd_, chunk, sizeof(chunk), 0);
      if (n == 0) throw SessionLostError("connection closed by prover bridge");
      if (n < 0) {
        if (errno == EAGAIN || errno == EWOULDBLOCK) continue;
        throw SessionLostError(std::strerror(errno));
      }
      buffer_.append(chunk, static_cast<std::size_t>(n));
    }
  }

  int fd_ = -1;
  int next_id_ = 0;
  double timeout_ = 120.0;
  std::string buffer_;
};

}  // namespace

std::unique_ptr<ProverBackend> make_tcp_backend() { return std::make_unique<TcpBackend>(); }

}  // namespace fvel
