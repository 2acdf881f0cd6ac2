#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "wquiv/io.hpp"

namespace wquiv {

struct SessionConfig {
  bool lenient = false;
};

enum class ActionKind { mutate, frame };

struct SessionAction {
  ActionKind kind = ActionKind::mutate;
  int vertex = 0;
  std::vector<CancelledPair> cancelled;
};

// An interactive mutation history. Replaying history() from initial()
// reproduces current(). Failed transitions leave the session unchanged.
class Session {
 public:
  explicit Session(WeightedQuiver initial, SessionConfig config = {});

  const WeightedQuiver& initial() const noexcept { return initial_; }
  const WeightedQuiver& current() const noexcept { return done_.empty() ? initial_ : done_.back().state; }
  const SessionConfig& config() const noexcept { return config_; }
  bool framed() const noexcept;
  std::vector<SessionAction> history() const;
  std::size_t redo_depth() const noexcept { return undone_.size(); }

  const SessionAction& mutate(int vertex);
  const SessionAction& frame();
  void undo();
  void redo();

  WeightedQuiver replay() const;

 private:
  struct Step {
    SessionAction action;
    WeightedQuiver state;
  };

  Step apply(const WeightedQuiver& from, const SessionAction& action) const;

  WeightedQuiver initial_;
  SessionConfig config_;
  std::vector<Step> done_;
  std::vector<SessionAction> undone_;
};

Json action_to_json(const SessionAction& a);
// {schema_version, quiver, framed, history, redo_depth}
Json session_state_json(const Session& s);

struct Response {
  int status = 200;
  Json body;
};

// The session protocol without the transport: GET /state, POST /mutate
// {"vertex": k}, POST /undo, POST /redo, POST /frame, GET /c-vectors,
// GET /analysis/two-cycles, GET /classify. Errors are
// {"code", "message", "witness"?} with status 400 (404 for unknown routes).
Response handle_request(Session& session, std::string_view method, std::string_view path, std::string_view body);

// HTTP transport over handle_request; requests are serialized.
class SessionServer {
 public:
  explicit SessionServer(Session& session);
  ~SessionServer();
  SessionServer(const SessionServer&) = delete;
  SessionServer& operator=(const SessionServer&) = delete;

  // Binds to the port (0 picks a free one) and returns the bound port.
  // Throws "port_busy" on failure.
  int bind(const std::string& host, int port);
  // Serves until stop() is called.
  void listen();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace wquiv
