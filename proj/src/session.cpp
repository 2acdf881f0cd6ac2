#include "wquiv/session.hpp"

#include <algorithm>

#include "wquiv/error.hpp"

namespace wquiv {

Session::Session(WeightedQuiver initial, SessionConfig config) : initial_(std::move(initial)), config_(config) {
  require_valid(initial_);
}

bool Session::framed() const noexcept {
  return std::any_of(done_.begin(), done_.end(), [](const Step& s) { return s.action.kind == ActionKind::frame; }) ||
         !initial_.frozen_ids().empty();
}

std::vector<SessionAction> Session::history() const {
  std::vector<SessionAction> out;
  for (const auto& s : done_) out.push_back(s.action);
  return out;
}

Session::Step Session::apply(const WeightedQuiver& from, const SessionAction& action) const {
  if (action.kind == ActionKind::frame) {
    return {action, wquiv::frame(from)};
  }
  auto record = wquiv::mutate(from, action.vertex, MutationOptions{config_.lenient});
  return {{ActionKind::mutate, action.vertex, std::move(record.cancelled)}, std::move(record.result)};
}

const SessionAction& Session::mutate(int vertex) {
  done_.push_back(apply(current(), {ActionKind::mutate, vertex, {}}));
  undone_.clear();
  return done_.back().action;
}

const SessionAction& Session::frame() {
  if (framed()) throw Error("already_framed", "the session quiver is already framed");
  done_.push_back(apply(current(), {ActionKind::frame, 0, {}}));
  undone_.clear();
  return done_.back().action;
}

void Session::undo() {
  if (done_.empty()) throw Error("nothing_to_undo", "the history is empty");
  undone_.push_back(done_.back().action);
  done_.pop_back();
}

void Session::redo() {
  if (undone_.empty()) throw Error("nothing_to_redo", "there is nothing to redo");
  done_.push_back(apply(current(), undone_.back()));
  undone_.pop_back();
}

WeightedQuiver Session::replay() const {
  WeightedQuiver q = initial_;
  for (const auto& s : done_) q = apply(q, s.action).state;
  return q;
}

Json action_to_json(const SessionAction& a) {
  if (a.kind == ActionKind::frame) return {{"op", "frame"}};
  return {{"op", "mutate"}, {"vertex", a.vertex}, {"cancelled", cancelled_to_json(a.cancelled)}};
}

Json session_state_json(const Session& s) {
  Json history = Json::array();
  for (const auto& a : s.history()) history.push_back(action_to_json(a));
  return {{"schema_version", kSchemaVersion},
          {"quiver", quiver_to_json(s.current())},
          {"framed", s.framed()},
          {"history", history},
          {"redo_depth", s.redo_depth()}};
}

Response handle_request(Session& session, std::string_view method, std::string_view path, std::string_view body) {
  auto ok = [](Json j) {
    if (!j.contains("schema_version")) {
      Json out{{"schema_version", kSchemaVersion}};
      for (auto& [k, v] : j.items()) out[k] = v;
      return Response{200, std::move(out)};
    }
    return Response{200, std::move(j)};
  };
  try {
    if (method == "GET" && path == "/state") return ok(session_state_json(session));
    if (method == "POST" && path == "/mutate") {
      Json request;
      try {
        request = Json::parse(body);
      } catch (const nlohmann::json::parse_error& e) {
        throw Error("parse", std::string("request body: ") + e.what());
      }
      if (!request.is_object() || !request.contains("vertex") || !request["vertex"].is_number_integer()) {
        throw Error("schema", "expected {\"vertex\": <integer>}");
      }
      session.mutate(request["vertex"].get<int>());
      return ok(session_state_json(session));
    }
    if (method == "POST" && path == "/undo") {
      session.undo();
      return ok(session_state_json(session));
    }
    if (method == "POST" && path == "/redo") {
      session.redo();
      return ok(session_state_json(session));
    }
    if (method == "POST" && path == "/frame") {
      session.frame();
      return ok(session_state_json(session));
    }
    if (method == "GET" && path == "/c-vectors") {
      if (!session.framed()) throw Error("not_framed", "c-vectors need a framed quiver; POST /frame first");
      return ok(c_vectors_to_json(c_vectors(session.current())));
    }
    if (method == "GET" && path == "/analysis/two-cycles") {
      return ok({{"two_cycles", two_cycles_to_json(session.current())}});
    }
    if (method == "GET" && path == "/classify") return ok(tame_verdict_to_json(classify_tame(session.current())));
  } catch (const Error& e) {
    return {400, error_to_json(e.code(), e.what(), e.witness())};
  }
  return {404, error_to_json("not_found", "no route " + std::string(method) + " " + std::string(path))};
}

}  // namespace wquiv
