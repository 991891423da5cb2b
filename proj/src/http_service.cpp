#include "genevis/http_service.hpp"

#include <charconv>

#include <httplib.h>

namespace genevis {

namespace {

constexpr const char* kJson = "application/json";

void send_error(httplib::Response& res, const Error& err) {
  res.status = http_status(err.code());
  res.set_content(dump_payload(error_payload(err)), kJson);
}

template <class Fn>
void guarded(httplib::Response& res, Fn&& fn) {
  try {
    fn();
  } catch (const Error& err) {
    send_error(res, err);
  } catch (const std::exception& e) {
    res.status = 500;
    res.set_content(dump_payload(Json{{"error_code", "Internal"}, {"message", e.what()}}), kJson);
  }
}

template <class T>
T parse_integer(std::string_view text, const char* name) {
  T value{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
    throw Error(ErrorCode::BadParameter, std::string(name) + " must be a non-negative integer");
  }
  return value;
}

double parse_double(std::string_view text, const char* name) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
    throw Error(ErrorCode::BadParameter, std::string(name) + " must be a number");
  }
  return value;
}

std::optional<std::string> query(const httplib::Request& req, const char* key) {
  if (!req.has_param(key)) return std::nullopt;
  return req.get_param_value(key);
}

std::string require_query(const httplib::Request& req, const char* key) {
  auto v = query(req, key);
  if (!v) throw Error(ErrorCode::BadParameter, std::string("missing query parameter '") + key + "'");
  return *v;
}

std::optional<std::uint64_t> seed_param(const httplib::Request& req) {
  auto v = query(req, "seed");
  if (!v) return std::nullopt;
  return parse_integer<std::uint64_t>(*v, "seed");
}

std::size_t min_overlap_param(const httplib::Request& req) {
  auto v = query(req, "min_overlap");
  if (!v) return 1;
  const auto n = parse_integer<std::size_t>(*v, "min_overlap");
  if (n < 1) throw Error(ErrorCode::BadParameter, "min_overlap must be >= 1");
  return n;
}

Json json_body(const httplib::Request& req) {
  if (req.body.empty()) return Json::object();
  try {
    auto j = Json::parse(req.body);
    if (!j.is_object()) throw Error(ErrorCode::BadRequest, "request body must be a JSON object");
    return j;
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::BadRequest, std::string("invalid JSON body: ") + e.what());
  }
}

std::string path_field(const Json& body) {
  auto it = body.find("path");
  if (it == body.end() || !it->is_string() || it->get<std::string>().empty()) {
    throw Error(ErrorCode::BadRequest, "body must carry a non-empty \"path\" string");
  }
  return it->get<std::string>();
}

}  // namespace

std::pair<std::string, int> parse_listen_address(std::string_view text) {
  const auto colon = text.rfind(':');
  if (colon == std::string_view::npos || colon == 0) {
    throw Error(ErrorCode::BadParameter, "listen address must be host:port");
  }
  const int port = parse_integer<int>(text.substr(colon + 1), "port");
  if (port > 65535) throw Error(ErrorCode::BadParameter, "port out of range");
  return {std::string(text.substr(0, colon)), port};
}

int http_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::NoDelimiter:
    case ErrorCode::MissingHeader:
    case ErrorCode::BadNumber:
    case ErrorCode::MissingValue:
    case ErrorCode::MalformedField:
    case ErrorCode::FieldCount:
    case ErrorCode::DuplicateGene:
    case ErrorCode::EmptyDataset:
    case ErrorCode::CorruptSnapshot:
    case ErrorCode::VersionMismatch:
      return 422;
    case ErrorCode::BadParameter:
    case ErrorCode::BadRequest:
      return 400;
    case ErrorCode::UnknownCluster:
    case ErrorCode::UnknownDisease:
    case ErrorCode::UnknownGene:
    case ErrorCode::UnknownSession:
      return 404;
    case ErrorCode::NotLoaded:
      return 409;
    case ErrorCode::PayloadTooLarge:
      return 413;
    case ErrorCode::IoError:
      return 500;
  }
  return 500;
}

HttpService::HttpService(ServiceConfig config)
    : config_(std::move(config)),
      store_(config_.fixed_seed),
      server_(std::make_unique<httplib::Server>()) {
  config_.engine.layout.validate();
  install_routes();
}

HttpService::~HttpService() { stop(); }

int HttpService::bind() {
  if (config_.port == 0) return server_->bind_to_any_port(config_.host);
  if (!server_->bind_to_port(config_.host, config_.port)) {
    throw Error(ErrorCode::IoError, "cannot bind " + config_.host + ":" + std::to_string(config_.port));
  }
  return config_.port;
}

void HttpService::listen() { server_->listen_after_bind(); }

void HttpService::stop() {
  if (server_) server_->stop();
}

void HttpService::install_routes() {
  auto& svr = *server_;
  svr.set_payload_max_length(config_.body_limit);
  svr.set_default_headers({{"Access-Control-Allow-Origin", config_.cors_origin},
                           {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"},
                           {"Access-Control-Allow-Headers", "Content-Type"}});
  if (!config_.static_dir.empty()) svr.set_mount_point("/", config_.static_dir);

  svr.set_error_handler([this](const httplib::Request&, httplib::Response& res) {
    if (!res.body.empty()) return;
    if (res.status == 413) {
      send_error(res, Error(ErrorCode::PayloadTooLarge,
                            "request body exceeds " + std::to_string(config_.body_limit) + " bytes"));
    } else if (res.status == 404) {
      send_error(res, Error(ErrorCode::BadRequest, "no such endpoint"));
      res.status = 404;
    }
  });
  svr.Options(R"(/.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });

  const auto& cfg = config_.engine;

  svr.Post("/sessions", [this](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      const auto body = json_body(req);
      std::optional<std::uint64_t> seed;
      if (auto it = body.find("seed"); it != body.end()) {
        if (!it->is_number_unsigned()) throw Error(ErrorCode::BadParameter, "seed must be a non-negative integer");
        seed = it->get<std::uint64_t>();
      }
      auto session = store_.create(seed);
      res.status = 201;
      res.set_content(
          dump_payload(Json{{"session", session->id()}, {"seed", session->data()->seed()}}), kJson);
    });
  });

  svr.Post("/sessions/:id/datasets/:kind",
           [this](const httplib::Request& req, httplib::Response& res) {
             guarded(res, [&] {
               auto session = store_.get(req.path_params.at("id"));
               const auto kind = parse_dataset_kind(req.path_params.at("kind"));
               const auto report = session->upload(kind, req.body, config_.body_limit);
               res.set_content(dump_payload(report.to_json()), kJson);
             });
           });

  svr.Get("/sessions/:id/cluster-view", [this, &cfg](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      auto data = store_.get(req.path_params.at("id"))->data();
      res.set_content(*data->cluster_view(cfg, min_overlap_param(req), seed_param(req)), kJson);
    });
  });

  svr.Get("/sessions/:id/clusters/:cid/gene-view",
          [this, &cfg](const httplib::Request& req, httplib::Response& res) {
            guarded(res, [&] {
              auto data = store_.get(req.path_params.at("id"))->data();
              const auto cid = parse_integer<ClusterId>(req.path_params.at("cid"), "cluster id");
              res.set_content(*data->gene_view(cfg, cid, seed_param(req)), kJson);
            });
          });

  svr.Get("/sessions/:id/diseases", [this](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      res.set_content(store_.get(req.path_params.at("id"))->data()->diseases_view(), kJson);
    });
  });

  svr.Get("/sessions/:id/overlay", [this, &cfg](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      auto data = store_.get(req.path_params.at("id"))->data();
      std::optional<ClusterId> cluster;
      if (auto v = query(req, "cluster_id")) cluster = parse_integer<ClusterId>(*v, "cluster_id");
      res.set_content(
          data->overlay(cfg, require_query(req, "disease"), cluster, min_overlap_param(req)), kJson);
    });
  });

  svr.Get("/sessions/:id/highlight", [this, &cfg](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      auto data = store_.get(req.path_params.at("id"))->data();
      const auto cid = parse_integer<ClusterId>(require_query(req, "cluster_id"), "cluster_id");
      const auto gene = parse_integer<GeneId>(require_query(req, "gene"), "gene");
      const auto mode = parse_highlight_mode(require_query(req, "mode"));
      const auto param = parse_double(require_query(req, "param"), "param");
      res.set_content(data->highlight_view(cfg, cid, gene, mode, param), kJson);
    });
  });

  svr.Post("/sessions/:id/snapshot", [this](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      const auto path = path_field(json_body(req));
      const auto bytes = store_.save_snapshot(req.path_params.at("id"), path);
      res.set_content(dump_payload(Json{{"path", path}, {"bytes", bytes}}), kJson);
    });
  });

  svr.Post("/snapshots:load", [this](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      const auto id = store_.load_snapshot(path_field(json_body(req)));
      res.status = 201;
      res.set_content(
          dump_payload(Json{{"session", id}, {"seed", store_.get(id)->data()->seed()}}), kJson);
    });
  });
}

}  // namespace genevis
