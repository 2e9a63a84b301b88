#include "flowtutor/http_server.hpp"

#include "httplib.h"

namespace flowtutor {

using nlohmann::json;

namespace {

int http_status(const json& response) {
  const std::string status = response.value("status", "ok");
  if (status == "not_found") return 404;
  if (status == "bad_request") return 400;
  if (status == "conflict") return 409;
  return 200;
}

void reply(httplib::Response& res, const json& body) {
  res.status = http_status(body);
  res.set_content(body.dump(), "application/json");
}

}  // namespace

HttpServer::HttpServer(Gateway& gateway)
    : gateway_(gateway), server_(std::make_unique<httplib::Server>()) {
  auto& srv = *server_;

  srv.Get("/health", [this](const httplib::Request&, httplib::Response& res) {
    reply(res, gateway_.route({{"type", "health"}}));
  });

  srv.Post("/sessions", [this](const httplib::Request& req, httplib::Response& res) {
    json request{{"type", "create_session"}};
    if (!req.body.empty()) {
      json body = json::parse(req.body, nullptr, false);
      if (body.is_discarded() || !body.is_object()) {
        return reply(res, {{"status", "bad_request"},
                           {"error", {{"field", ""}, {"message", "body is not a JSON object"}}}});
      }
      if (body.contains("seed")) request["seed"] = body["seed"];
    }
    reply(res, gateway_.route(request));
  });

  srv.Get(R"(/sessions/([0-9a-f]+))", [this](const httplib::Request& req, httplib::Response& res) {
    reply(res, gateway_.route({{"type", "get_snapshot"}, {"session_id", req.matches[1].str()}}));
  });

  srv.Post(R"(/sessions/([0-9a-f]+)/actions)",
           [this](const httplib::Request& req, httplib::Response& res) {
             json body = json::parse(req.body, nullptr, false);
             if (body.is_discarded() || !body.is_object()) {
               return reply(res, {{"status", "bad_request"},
                                  {"error", {{"field", ""}, {"message", "body is not a JSON object"}}}});
             }
             json request{{"type", "action"}, {"session_id", req.matches[1].str()}};
             if (body.contains("action")) request["action"] = body["action"];
             if (body.contains("revision")) request["revision"] = body["revision"];
             reply(res, gateway_.route(request));
           });

  srv.Put(R"(/sessions/([0-9a-f]+)/edgelist)",
          [this](const httplib::Request& req, httplib::Response& res) {
            json request{{"type", "import_edgelist"},
                         {"session_id", req.matches[1].str()},
                         {"body", req.body}};
            if (req.has_param("revision")) {
              try {
                request["revision"] = std::stoll(req.get_param_value("revision"));
              } catch (const std::exception&) {
                return reply(res, {{"status", "bad_request"},
                                   {"error", {{"field", "/revision"}, {"message", "expected an integer"}}}});
              }
            }
            reply(res, gateway_.route(request));
          });

  srv.Get(R"(/sessions/([0-9a-f]+)/edgelist)",
          [this](const httplib::Request& req, httplib::Response& res) {
            json out = gateway_.route(
                {{"type", "export_edgelist"}, {"session_id", req.matches[1].str()}});
            if (out.value("status", "") != "ok") return reply(res, out);
            res.status = 200;
            res.set_content(out["document"].get<std::string>(), "text/plain; charset=utf-8");
          });
}

HttpServer::~HttpServer() = default;

int HttpServer::bind(const std::string& host, int port) {
  if (port == 0) return server_->bind_to_any_port(host);
  return server_->bind_to_port(host, port) ? port : -1;
}

bool HttpServer::listen() { return server_->listen_after_bind(); }

void HttpServer::stop() { server_->stop(); }

}  // namespace flowtutor
