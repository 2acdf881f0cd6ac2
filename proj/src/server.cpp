#include <httplib.h>

#include <mutex>

#include "wquiv/error.hpp"
#include "wquiv/io.hpp"
#include "wquiv/session.hpp"

namespace wquiv {

struct SessionServer::Impl {
  Session& session;
  std::mutex mutex;
  httplib::Server server;

  explicit Impl(Session& s) : session(s) {
    auto route = [this](const httplib::Request& req, httplib::Response& res) {
      Response r;
      {
        std::lock_guard<std::mutex> lock(mutex);
        r = handle_request(session, req.method, req.path, req.body);
      }
      res.status = r.status;
      res.set_header("Access-Control-Allow-Origin", "*");
      res.set_content(r.body.dump(), "application/json");
    };
    for (const char* path : {"/state", "/c-vectors", "/analysis/two-cycles", "/classify"}) server.Get(path, route);
    for (const char* path : {"/mutate", "/undo", "/redo", "/frame"}) server.Post(path, route);
    // Unknown routes still answer in the protocol's error shape.
    // httplib defaults to SO_REUSEPORT, which would let a second server share
    // the port and split one user's clicks across two sessions.
    server.set_socket_options([](socket_t sock) {
      int yes = 1;
      setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof(yes));
    });
    server.set_error_handler([](const httplib::Request& req, httplib::Response& res) {
      if (!res.body.empty()) return;
      res.set_content(
          error_to_json(res.status == 404 ? "not_found" : "http_error", "no route " + req.method + " " + req.path)
              .dump(),
          "application/json");
    });
  }
};

SessionServer::SessionServer(Session& session) : impl_(std::make_unique<Impl>(session)) {}

SessionServer::~SessionServer() { stop(); }

int SessionServer::bind(const std::string& host, int port) {
  const int bound = port == 0 ? impl_->server.bind_to_any_port(host) : (impl_->server.bind_to_port(host, port) ? port : -1);
  if (bound < 0) throw Error("port_busy", "cannot bind " + host + ":" + std::to_string(port));
  return bound;
}

void SessionServer::listen() { impl_->server.listen_after_bind(); }

void SessionServer::stop() {
  if (impl_) impl_->server.stop();
}

}  // namespace wquiv
