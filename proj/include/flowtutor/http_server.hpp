#pragma once

#include <memory>
#include <string>

#include "flowtutor/protocol.hpp"

namespace httplib {
class Server;
}

namespace flowtutor {

/// HTTP binding of Gateway:
///
///   GET  /health
///   POST /sessions                     {"seed": n}?          -> create
///   GET  /sessions/{id}                                      -> snapshot
///   POST /sessions/{id}/actions        {"revision"?, "action": {...}}
///   PUT  /sessions/{id}/edgelist       edgelist text (?revision=n)
///   GET  /sessions/{id}/edgelist                             -> text/plain
///
/// Bodies are the gateway's JSON responses; status maps ok/not_found/
/// bad_request/conflict to 200/404/400/409.
class HttpServer {
 public:
  explicit HttpServer(Gateway& gateway);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  /// Binds to an ephemeral port when `port` is 0; returns the bound port or -1.
  int bind(const std::string& host, int port);
  /// Blocks until stop().
  bool listen();
  void stop();

 private:
  Gateway& gateway_;
  std::unique_ptr<httplib::Server> server_;
};

}  // namespace flowtutor
