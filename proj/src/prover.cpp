// Copyright (c) the fvel toolkit contributors.
// Licensed under the Apache 2.0 License.

#include "fvel/prover.hpp"

#include <atomic>
#include <cstdlib>

#include "fvel/errors.hpp"
#include "fvel/outer_syntax.hpp"

namespace fvel {

namespace {

std::atomic<int> g_session_counter{0};

double elapsed_from_json(const Json& reply) {
  if (reply.contains("elapsed")) return reply["elapsed"].get<double>();
  if (reply.contains("elapsed_ms")) return reply["elapsed_ms"].get<double>() / 1000.0;
  return 0.0;
}

ProverBackend::WireReply wire_reply_from_json(const Json& j) {
  ProverBackend::WireReply r;
  r.ok = j.value("ok", false);
  r.state = j.value("state", std::string());
  if (j.contains("errors"))
    for (const auto& e : j["errors"]) r.errors.push_back(e.get<std::string>());
  r.elapsed = elapsed_from_json(j);
  if (j.contains("loaded"))
    for (const auto& e : j["loaded"]) r.loaded.push_back(e.get<std::string>());
  return r;
}

class ReplayBackend final : public ProverBackend {
 public:
  explicit ReplayBackend(Json transcript) : transcript_(std::move(transcript)) {}

  WireReply init(const ProverConfig& config) override {
    (void)config;
    WireReply r;
    if (transcript_.contains("init_ok") && !transcript_["init_ok"].get<bool>()) {
      std::string msg = "init rejected";
      if (transcript_.contains("init_errors") && !transcript_["init_errors"].empty())
        msg = transcript_["init_errors"][0].get<std::string>();
      throw InitRejectedError(msg);
    }
    r.ok = true;
    if (transcript_.contains("roots"))
      for (const auto& root : transcript_["roots"]) r.loaded.push_back(root.get<std::string>());
    return r;
  }

  WireReply step(const std::string& text) override {
    if (transcript_.contains("steps") && transcript_["steps"].contains(text))
      return wire_reply_from_json(transcript_["steps"][text]);
    if (transcript_.contains("default")) return wire_reply_from_json(transcript_["default"]);
    WireReply r;
    r.ok = false;
    r.errors.push_back("no scripted reply for step: " + text.substr(0, 60));
    return r;
  }

  void close() override {}

 private:
  Json transcript_;
};

}  // namespace

std::unique_ptr<ProverBackend> make_replay_backend(Json transcript) {
  return std::make_unique<ReplayBackend>(std::move(transcript));
}

std::unique_ptr<ProverBackend> make_replay_backend_from_file(const std::string& path) {
  return make_replay_backend(read_json_file(path));
}

Session Session::open(const ProverConfig& config, std::unique_ptr<ProverBackend> backend) {
  Session session(std::move(backend));
  auto reply = session.backend_->init(config);  // throws on connect/init failure
  session.handle_.session_id = "s" + std::to_string(++g_session_counter);
  session.handle_.working_directory = config.working_directory;
  session.handle_.loaded_sessions = reply.loaded;
  for (const auto& name : config.imports) session.handle_.loaded_sessions.push_back(name);
  session.handle_.status = SessionStatus::Open;
  return session;
}

ProverReply Session::apply_step(const std::string& step) {
  if (handle_.status != SessionStatus::Open)
    throw SessionLostError("session " + handle_.session_id + " is not open");
  if (step.empty()) throw std::invalid_argument("apply_step: empty step");

  ProverReply reply;
  if (contains_cheating_token(step)) {
    reply.ok = false;
    reply.cheating = true;
    return reply;
  }
  try {
    auto wire = backend_->step(step);
    reply.ok = wire.ok;
    reply.state = wire.state;
    reply.errors = wire.errors;
    reply.elapsed = wire.elapsed;
  } catch (const TimeoutError& e) {
    // Prover-side state is unknown after a timeout; poison the session.
    handle_.status = SessionStatus::Failed;
    reply.ok = false;
    reply.errors = {"timeout", e.what()};
  } catch (const SessionLostError&) {
    handle_.status = SessionStatus::Failed;
    throw;
  }
  return reply;
}

void Session::close() {
  if (handle_.status == SessionStatus::Closed) return;
  handle_.status = SessionStatus::Closed;
  if (!backend_) return;
  try {
    backend_->close();
  } catch (...) {
    // close never fails; transport errors are dropped
  }
}

Session::~Session() {
  if (backend_) close();
}

Session open_session(const ProverConfig& config, const std::string& selector) {
  if (selector.rfind("replay:", 0) == 0)
    return Session::open(config, make_replay_backend_from_file(selector.substr(7)));
  if (selector == "tcp" || selector.rfind("tcp:", 0) == 0) {
    ProverConfig cfg = config;
    if (selector.size() > 4) cfg.endpoint = selector.substr(4);
    if (cfg.endpoint.empty()) {
      const char* env = std::getenv("FVEL_PROVER_ENDPOINT");
      if (env) cfg.endpoint = env;
    }
    if (cfg.endpoint.empty())
      throw ConnectFailedError("no prover endpoint (set FVEL_PROVER_ENDPOINT or use tcp:<host:port>)");
    return Session::open(cfg, make_tcp_backend());
  }
  throw ConnectFailedError("unknown prover selector: " + selector);
}

}  // namespace fvel
