#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <random>
#include <shared_mutex>
#include <stdexcept>
#include <string>

#include "json.hpp"

#include "flowtutor/session.hpp"

namespace flowtutor {

/// Malformed request; `field` is a JSON-pointer-like path to the offender.
class ProtocolError : public std::invalid_argument {
 public:
  ProtocolError(std::string field, const std::string& message)
      : std::invalid_argument(message), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

Action action_from_json(const nlohmann::json& body);
nlohmann::json action_to_json(const Action& a);
nlohmann::json finding_to_json(const Finding& f);
nlohmann::json feedback_to_json(const StepFeedback& fb);

/// Owns live sessions. Lookup and creation are concurrent; mutation of one
/// session is exclusive.
class SessionStore {
 public:
  using Clock = std::function<std::chrono::steady_clock::time_point()>;

  struct Entry {
    std::mutex mutex;
    SessionState state;
    std::uint64_t revision = 0;
    std::chrono::steady_clock::time_point last_used;
  };

  explicit SessionStore(std::chrono::seconds idle_timeout = std::chrono::hours(24),
                        Clock clock = std::chrono::steady_clock::now);

  /// Returns (id, entry) of a fresh session.
  std::pair<std::string, std::shared_ptr<Entry>> create(std::uint64_t seed);
  /// nullptr when the id is unknown or expired.
  std::shared_ptr<Entry> find(const std::string& id);
  /// Drops sessions idle for longer than the timeout; returns how many.
  std::size_t expire();
  std::size_t size() const;
  std::chrono::steady_clock::time_point now() const { return clock_(); }

 private:
  std::chrono::seconds idle_timeout_;
  Clock clock_;
  mutable std::shared_mutex mutex_;
  std::map<std::string, std::shared_ptr<Entry>> sessions_;
  std::mt19937_64 ids_;
  std::mutex ids_mutex_;
};

struct GatewayOptions {
  std::chrono::seconds idle_timeout = std::chrono::hours(24);
  SessionStore::Clock clock = std::chrono::steady_clock::now;
};

/// Request/response front door for sessions. Requests are JSON objects with a
/// "type" of create_session | get_snapshot | action | import_edgelist |
/// export_edgelist | health; every response carries "status" (ok |
/// not_found | bad_request | conflict).
class Gateway {
 public:
  explicit Gateway(GatewayOptions options = {});

  nlohmann::json route(const nlohmann::json& request);

  SessionStore& store() { return store_; }

 private:
  nlohmann::json apply(const std::string& id, const nlohmann::json& request, const Action& a);

  SessionStore store_;
};

}  // namespace flowtutor
