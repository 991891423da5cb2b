#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>

#include "genevis/session.hpp"

namespace httplib {
class Server;
}

namespace genevis {

struct ServiceConfig {
  EngineConfig engine;
  std::string host = "127.0.0.1";
  int port = 8080;
  std::size_t body_limit = 64ull << 20;
  std::string static_dir;  // UI bundle; not served when empty
  std::string cors_origin = "*";
  std::optional<std::uint64_t> fixed_seed;  // forces every new session's seed
};

/// Splits "host:port"; throws BadParameter.
std::pair<std::string, int> parse_listen_address(std::string_view text);

/// HTTP status for an error code.
int http_status(ErrorCode code);

/// JSON-over-HTTP facade over SessionStore.
///
///   POST /sessions                              {"seed"?: n}        -> {"session", "seed"}
///   POST /sessions/{id}/datasets/{kind}         raw table body      -> upload report
///   GET  /sessions/{id}/cluster-view            ?min_overlap&seed
///   GET  /sessions/{id}/clusters/{cid}/gene-view ?seed
///   GET  /sessions/{id}/diseases
///   GET  /sessions/{id}/overlay                 ?disease&cluster_id&min_overlap
///   GET  /sessions/{id}/highlight               ?cluster_id&gene&mode&param
///   POST /sessions/{id}/snapshot                {"path"}
///   POST /snapshots:load                        {"path"}            -> {"session"}
///
/// Errors are {"error_code", "message", "location"?} with a matching status.
class HttpService {
 public:
  explicit HttpService(ServiceConfig config);
  ~HttpService();
  HttpService(const HttpService&) = delete;
  HttpService& operator=(const HttpService&) = delete;

  /// Binds to config.host; port 0 picks a free port. Returns the bound port.
  int bind();
  /// Blocks serving requests until stop().
  void listen();
  void stop();

  SessionStore& store() { return store_; }

 private:
  void install_routes();

  ServiceConfig config_;
  SessionStore store_;
  std::unique_ptr<httplib::Server> server_;
};

}  // namespace genevis
