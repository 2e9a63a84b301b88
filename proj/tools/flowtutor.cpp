// Command-line entry: solve, mincut, fmt, serve.

#include <csignal>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "flowtutor/cuts.hpp"
#include "flowtutor/edgelist.hpp"
#include "flowtutor/http_server.hpp"
#include "flowtutor/paths.hpp"
#include "flowtutor/protocol.hpp"

namespace {

flowtutor::HttpServer* g_server = nullptr;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string join(const std::set<flowtutor::NodeId>& ids) {
  std::string out;
  for (const auto& id : ids) {
    if (!out.empty()) out += ", ";
    out += id;
  }
  return out;
}

long env_seconds(const char* name, long fallback) {
  const char* v = std::getenv(name);
  if (v == nullptr || *v == '\0') return fallback;
  return std::stol(v);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Interactive max-flow / min-cut tutor"};
  app.require_subcommand(1);

  std::string file;
  std::string strategy_name = "shortest";
  std::uint64_t seed = 0;
  auto* solve_cmd = app.add_subcommand("solve", "Run Ford-Fulkerson and print value, iterations and history");
  solve_cmd->add_option("file", file, "edgelist file")->required();
  solve_cmd->add_option("--strategy", strategy_name, "random | shortest | widest")
      ->check(CLI::IsMember({"random", "shortest", "widest"}));
  solve_cmd->add_option("--seed", seed, "seed for the random strategy");

  auto* mincut_cmd = app.add_subcommand("mincut", "Print the minimum cut with the smallest source side");
  mincut_cmd->add_option("file", file, "edgelist file")->required();

  auto* fmt_cmd = app.add_subcommand("fmt", "Print the canonical form of an edgelist");
  fmt_cmd->add_option("file", file, "edgelist file")->required();

  std::string host = "127.0.0.1";
  int port = 8080;
  long idle_timeout = env_seconds("FLOWTUTOR_IDLE_TIMEOUT", 24 * 3600);
  auto* serve_cmd = app.add_subcommand("serve", "Run the session gateway over HTTP");
  serve_cmd->add_option("--port", port, "TCP port (0 picks a free one)")->envname("FLOWTUTOR_PORT");
  serve_cmd->add_option("--host", host, "bind address");
  serve_cmd->add_option("--idle-timeout", idle_timeout, "seconds before an idle session expires");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*solve_cmd) {
      const auto net = flowtutor::parse_edgelist(read_file(file));
      const auto result = flowtutor::solve(net, flowtutor::parse_strategy(strategy_name, seed));
      std::cout << "value " << result.value << "\n";
      std::cout << "iterations " << result.iterations << "\n";
      for (std::size_t i = 0; i < result.history.size(); ++i) {
        std::cout << (i + 1) << ": " << flowtutor::format_path(result.history[i].path) << " +"
                  << result.history[i].amount << "\n";
      }
      return 0;
    }
    if (*mincut_cmd) {
      const auto cut = flowtutor::find_min_cut(flowtutor::parse_edgelist(read_file(file)));
      std::cout << "S = {" << join(cut.source_side) << "}, capacity " << cut.capacity << "\n";
      return 0;
    }
    if (*fmt_cmd) {
      std::cout << flowtutor::serialize_edgelist(flowtutor::parse_edgelist(read_file(file)));
      return 0;
    }
    if (*serve_cmd) {
      flowtutor::Gateway gateway(flowtutor::GatewayOptions{std::chrono::seconds(idle_timeout)});
      flowtutor::HttpServer server(gateway);
      const int bound = server.bind(host, port);
      if (bound < 0) {
        std::cerr << "error: cannot bind " << host << ":" << port << "\n";
        return 1;
      }
      g_server = &server;
      std::signal(SIGINT, [](int) { if (g_server) g_server->stop(); });
      std::signal(SIGTERM, [](int) { if (g_server) g_server->stop(); });
      std::cout << "listening on " << host << ":" << bound << std::endl;
      server.listen();
      return 0;
    }
  } catch (const flowtutor::EdgelistError& err) {
    for (const auto& issue : err.issues()) {
      std::cerr << file << ":" << issue.line << ": " << issue.message << "\n";
    }
    return 2;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  }
  return 0;
}
