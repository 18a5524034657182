// Copyright (c) the fvel toolkit contributors.
// Licensed under the Apache 2.0 License.
//
// Uniform interactive-prover session over two backends: a TCP client
// speaking newline-delimited JSON to a prover bridge, and a deterministic
// replay backend driven by a transcript fixture (step text -> reply).
// Cheating keywords (`sorry`/`oops` outside comments, strings, cartouches)
// are flagged here, independent of what any backend would answer.

#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fvel/json_io.hpp"

namespace fvel {

enum class SessionStatus { Open, Closed, Failed };

struct SessionHandle {
  std::string session_id;
  std::string working_directory;
  std::vector<std::string> loaded_sessions;
  SessionStatus status = SessionStatus::Closed;
};

struct ProverReply {
  bool ok = false;
  std::string state;                 // "" when no open goals
  std::vector<std::string> errors;
  bool cheating = false;
  double elapsed = 0.0;              // seconds
};

struct ProverConfig {
  std::string endpoint;                       // "host:port"; falls back to FVEL_PROVER_ENDPOINT
  std::vector<std::string> session_roots;
  std::string working_directory;
  std::vector<std::string> imports;
  double timeout_seconds = 120.0;             // per step and for connect/init
};

// Wire-level backend. Transport failures throw SessionLostError; timeouts
// throw TimeoutError; connection/initialization problems throw
// ConnectFailedError / InitRejectedError.
class ProverBackend {
 public:
  struct WireReply {
    bool ok = false;
    std::string state;
    std::vector<std::string> errors;
    double elapsed = 0.0;
    std::vector<std::string> loaded;  // backend-acknowledged roots/sessions
  };

  virtual ~ProverBackend() = default;
  virtual WireReply init(const ProverConfig& config) = 0;
  virtual WireReply step(const std::string& text) = 0;
  virtual void close() = 0;
};

class Session {
 public:
  Session(Session&&) noexcept = default;
  Session& operator=(Session&&) noexcept = default;
  Session(const Session&) = delete;
  Session& operator=(const Session&) = delete;
  ~Session();

  // Opens and initializes. Throws ConnectFailedError, InitRejectedError or
  // TimeoutError.
  static Session open(const ProverConfig& config, std::unique_ptr<ProverBackend> backend);

  const SessionHandle& handle() const { return handle_; }

  // Rejects with SessionLostError unless the session is Open; throws
  // std::invalid_argument on an empty step. A step carrying a cheating
  // token short-circuits to {ok:false, cheating:true} without touching the
  // backend. A timed-out step poisons the session (status Failed).
  ProverReply apply_step(const std::string& step);

  // Idempotent; transport errors are swallowed.
  void close();

 private:
  explicit Session(std::unique_ptr<ProverBackend> backend) : backend_(std::move(backend)) {}

  SessionHandle handle_;
  std::unique_ptr<ProverBackend> backend_;
};

// Transcript shape:
//   {"roots": [...], "init_ok": true, "init_errors": [...],
//    "steps": {"<step text>": {"ok":bool,"state":str,"errors":[...],"elapsed":sec}},
//    "default": {...}}
// Unknown steps get "default" or a not-ok reply naming the step.
std::unique_ptr<ProverBackend> make_replay_backend(Json transcript);
std::unique_ptr<ProverBackend> make_replay_backend_from_file(const std::string& path);

// Requests {"id":n,"cmd":"init"|"step"|"close","payload":{...}}; replies
// {"id":n,"ok":bool,"state":str,"errors":[...],"elapsed_ms":int}, one line each.
std::unique_ptr<ProverBackend> make_tcp_backend();

// Selector forms: "replay:<transcript.json>" or "tcp:<host:port>" (or "tcp"
// with the endpoint from config / FVEL_PROVER_ENDPOINT).
Session open_session(const ProverConfig& config, const std::string& selector);

}  // namespace fvel
