#include "genevis/session.hpp"

#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <unordered_set>

namespace genevis {

namespace {

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Seeds stay below 2^53 so browser clients can hold them exactly.
constexpr std::uint64_t kSeedMask = (1ULL << 53) - 1;

std::int64_t now_ns() {
  return std::chrono::duration_cast<std::chrono::nanoseconds>(
             std::chrono::system_clock::now().time_since_epoch())
      .count();
}

[[noreturn]] void corrupt(const std::string& what) {
  throw Error(ErrorCode::CorruptSnapshot, "corrupt snapshot: " + what);
}

}  // namespace

std::string_view to_string(DatasetKind kind) {
  switch (kind) {
    case DatasetKind::Cluster: return "cluster";
    case DatasetKind::Interaction: return "interaction";
    case DatasetKind::Disease: return "disease";
  }
  return "cluster";
}

DatasetKind parse_dataset_kind(std::string_view text) {
  if (text == "cluster" || text == "clusters") return DatasetKind::Cluster;
  if (text == "interaction" || text == "interactions") return DatasetKind::Interaction;
  if (text == "disease" || text == "diseases") return DatasetKind::Disease;
  throw Error(ErrorCode::BadParameter, "unknown dataset kind '" + std::string(text) + "'");
}

Json UploadReport::to_json() const {
  Json j{{"kind", to_string(kind)}, {"rows", rows}};
  if (clustering_kind) {
    j["clustering_kind"] = to_string(*clustering_kind);
    j["clusters"] = clusters;
  }
  j["warnings"] = warnings;
  return j;
}

// SessionData -----------------------------------------------------------------

SessionData::SessionData(std::uint64_t seed, std::shared_ptr<const ClusterDataset> clusters,
                         std::shared_ptr<const InteractionDataset> interactions,
                         std::shared_ptr<const DiseaseDataset> diseases)
    : seed_(seed),
      clusters_(std::move(clusters)),
      interactions_(std::move(interactions)),
      diseases_(std::move(diseases)) {}

const ClusterDataset& SessionData::require_clusters() const {
  if (!clusters_) throw Error(ErrorCode::NotLoaded, "cluster dataset not loaded");
  return *clusters_;
}

const InteractionDataset& SessionData::require_interactions() const {
  if (!interactions_) throw Error(ErrorCode::NotLoaded, "interaction dataset not loaded");
  return *interactions_;
}

const DiseaseDataset& SessionData::require_diseases() const {
  if (!diseases_) throw Error(ErrorCode::NotLoaded, "disease dataset not loaded");
  return *diseases_;
}

std::shared_ptr<const std::string> SessionData::cluster_view(const EngineConfig& cfg,
                                                             std::size_t min_overlap,
                                                             std::optional<std::uint64_t> seed) const {
  const auto& ds = require_clusters();
  if (min_overlap < 1) throw Error(ErrorCode::BadParameter, "min_overlap must be >= 1");
  const auto layout_seed = seed.value_or(seed_);
  return cluster_views_.get({min_overlap, layout_seed}, [&] {
    return dump_payload(cluster_view_payload(ds, cfg, min_overlap, seed_, layout_seed));
  });
}

std::shared_ptr<const GeneGraph> SessionData::gene_graph(const EngineConfig& cfg,
                                                         ClusterId cluster) const {
  const auto& ds = require_clusters();
  const auto& ia = require_interactions();
  return gene_graphs_.get(cluster, [&] { return make_gene_graph(ds, ia, cluster, cfg); });
}

std::shared_ptr<const std::string> SessionData::gene_view(const EngineConfig& cfg,
                                                          ClusterId cluster,
                                                          std::optional<std::uint64_t> seed) const {
  const auto layout_seed = seed.value_or(seed_);
  auto graph = gene_graph(cfg, cluster);
  return gene_views_.get({cluster, layout_seed}, [&] {
    return dump_payload(gene_view_payload(*graph, cfg, layout_seed));
  });
}

std::string SessionData::diseases_view() const {
  return dump_payload(diseases_payload(require_diseases()));
}

std::string SessionData::overlay(const EngineConfig& cfg, std::string_view disease,
                                 std::optional<ClusterId> cluster, std::size_t min_overlap) const {
  const auto& ds = require_clusters();
  const auto dmap = build_disease_gene_map(require_diseases(), disease);
  if (!cluster) return dump_payload(cluster_overlay_payload(ds, dmap, cfg, min_overlap));
  return dump_payload(gene_overlay_payload(*gene_graph(cfg, *cluster), dmap, cfg));
}

std::string SessionData::highlight_view(const EngineConfig& cfg, ClusterId cluster, GeneId origin,
                                        HighlightMode mode, double parameter) const {
  auto graph = gene_graph(cfg, cluster);
  return dump_payload(highlight_payload(cluster, highlight(*graph, origin, mode, parameter)));
}

// Session ---------------------------------------------------------------------

Session::Session(std::string id, std::uint64_t seed)
    : id_(std::move(id)),
      created_at_(std::chrono::system_clock::now()),
      last_access_ns_(now_ns()),
      data_(std::make_shared<const SessionData>(seed, nullptr, nullptr, nullptr)) {}

std::shared_ptr<const SessionData> Session::data() const {
  std::shared_lock lock(mutex_);
  return data_;
}

void Session::touch() { last_access_ns_.store(now_ns()); }

std::chrono::system_clock::time_point Session::last_access() const {
  return std::chrono::system_clock::time_point(
      std::chrono::duration_cast<std::chrono::system_clock::duration>(
          std::chrono::nanoseconds(last_access_ns_.load())));
}

UploadReport Session::upload(DatasetKind kind, std::string_view body, std::size_t body_limit) {
  if (body.size() > body_limit) {
    throw Error(ErrorCode::PayloadTooLarge,
                "dataset body exceeds " + std::to_string(body_limit) + " bytes");
  }
  UploadReport report;
  report.kind = kind;

  std::shared_ptr<const ClusterDataset> clusters;
  std::shared_ptr<const InteractionDataset> interactions;
  std::shared_ptr<const DiseaseDataset> diseases;
  switch (kind) {
    case DatasetKind::Cluster: {
      auto ds = std::make_shared<const ClusterDataset>(parse_cluster_table(body));
      report.rows = ds->genes.size();
      report.clustering_kind = ds->kind;
      report.clusters = ds->clusters.size();
      clusters = std::move(ds);
      break;
    }
    case DatasetKind::Interaction: {
      auto ds = std::make_shared<const InteractionDataset>(parse_interaction_table(body));
      report.rows = ds->rows;
      if (auto loops = ds->self_loop_count()) {
        report.warnings.push_back(std::to_string(loops) + " self-loop interaction(s)");
      }
      if (ds->edges.size() < ds->rows) {
        report.warnings.push_back(std::to_string(ds->rows - ds->edges.size()) +
                                  " duplicate gene pair(s) collapsed to the maximum score");
      }
      interactions = std::move(ds);
      break;
    }
    case DatasetKind::Disease: {
      auto ds = std::make_shared<const DiseaseDataset>(parse_disease_table(body));
      report.rows = ds->records.size();
      diseases = std::move(ds);
      break;
    }
  }

  std::unique_lock lock(mutex_);
  if (!clusters) clusters = data_->clusters();
  if (!interactions) interactions = data_->interactions();
  if (!diseases) diseases = data_->diseases();

  if (clusters && kind != DatasetKind::Cluster) {
    std::unordered_set<GeneId> ids;
    std::unordered_set<std::string> names;
    for (const auto& g : clusters->genes) {
      ids.insert(g.id);
      names.insert(g.name);
    }
    std::size_t unknown = 0;
    if (kind == DatasetKind::Interaction) {
      for (const auto& e : interactions->edges) {
        unknown += (!ids.contains(e.source) || !ids.contains(e.target)) ? 1 : 0;
      }
      if (unknown) {
        report.warnings.push_back(std::to_string(unknown) +
                                  " interaction(s) reference genes absent from the cluster dataset");
      }
    } else {
      std::set<std::string> missing;
      for (const auto& r : diseases->records) {
        if (!names.contains(r.gene_name)) missing.insert(r.gene_name);
      }
      if (!missing.empty()) {
        report.warnings.push_back(std::to_string(missing.size()) +
                                  " gene name(s) absent from the cluster dataset");
      }
    }
  }

  data_ = std::make_shared<const SessionData>(data_->seed(), std::move(clusters),
                                              std::move(interactions), std::move(diseases));
  return report;
}

void Session::reset(std::shared_ptr<const SessionData> data) {
  std::unique_lock lock(mutex_);
  data_ = std::move(data);
}

// Snapshots -------------------------------------------------------------------

Json snapshot_json(const SessionData& data) {
  Json datasets = Json::object();
  datasets["cluster"] = data.clusters() ? Json(serialize_cluster_table(*data.clusters())) : Json();
  datasets["interaction"] =
      data.interactions() ? Json(serialize_interaction_table(*data.interactions())) : Json();
  datasets["disease"] = data.diseases() ? Json(serialize_disease_table(*data.diseases())) : Json();
  return Json{{"format", "genevis-session"},
              {"format_version", kSnapshotFormatVersion},
              {"seed", data.seed()},
              {"datasets", std::move(datasets)}};
}

std::shared_ptr<const SessionData> session_data_from_snapshot(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::exception& e) {
    corrupt(e.what());
  }
  if (!doc.is_object() || doc.value("format", "") != "genevis-session") corrupt("not a session snapshot");
  const auto version = doc.find("format_version");
  if (version == doc.end() || !version->is_number_integer()) corrupt("missing format_version");
  if (version->get<long long>() != kSnapshotFormatVersion) {
    throw Error(ErrorCode::VersionMismatch,
                "snapshot format_version " + std::to_string(version->get<long long>()) +
                    " is not supported (expected " + std::to_string(kSnapshotFormatVersion) + ")");
  }
  const auto seed = doc.find("seed");
  const auto datasets = doc.find("datasets");
  if (seed == doc.end() || !seed->is_number_unsigned() || datasets == doc.end() ||
      !datasets->is_object()) {
    corrupt("missing seed or datasets");
  }

  auto table = [&](const char* key) -> std::optional<std::string> {
    auto it = datasets->find(key);
    if (it == datasets->end() || it->is_null()) return std::nullopt;
    if (!it->is_string()) corrupt(std::string(key) + " is not a table");
    return it->get<std::string>();
  };
  try {
    std::shared_ptr<const ClusterDataset> c;
    std::shared_ptr<const InteractionDataset> i;
    std::shared_ptr<const DiseaseDataset> d;
    if (auto t = table("cluster")) c = std::make_shared<const ClusterDataset>(parse_cluster_table(*t));
    if (auto t = table("interaction")) {
      i = std::make_shared<const InteractionDataset>(parse_interaction_table(*t));
    }
    if (auto t = table("disease")) d = std::make_shared<const DiseaseDataset>(parse_disease_table(*t));
    return std::make_shared<const SessionData>(seed->get<std::uint64_t>(), c, i, d);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::CorruptSnapshot) throw;
    corrupt(std::string("embedded table: ") + e.what());
  }
}

// SessionStore ----------------------------------------------------------------

SessionStore::SessionStore(std::optional<std::uint64_t> fixed_seed)
    : rng_state_(std::random_device{}() ^ (static_cast<std::uint64_t>(std::random_device{}()) << 32) ^
                 static_cast<std::uint64_t>(now_ns())),
      fixed_seed_(fixed_seed) {}

std::string SessionStore::new_id() {
  static constexpr char kHex[] = "0123456789abcdef";
  std::string id;
  do {
    id.clear();
    for (int half = 0; half < 2; ++half) {
      std::uint64_t bits = mix64(rng_state_++);
      for (int i = 0; i < 16; ++i, bits >>= 4) id += kHex[bits & 0xF];
    }
  } while (sessions_.contains(id));
  return id;
}

std::uint64_t SessionStore::draw_seed() {
  if (fixed_seed_) return *fixed_seed_;
  return mix64(rng_state_++ ^ 0xA5A5A5A5A5A5A5A5ULL) & kSeedMask;
}

std::shared_ptr<Session> SessionStore::create(std::optional<std::uint64_t> seed) {
  std::lock_guard lock(mutex_);
  auto session = std::make_shared<Session>(new_id(), seed ? *seed : draw_seed());
  sessions_.emplace(session->id(), session);
  return session;
}

std::shared_ptr<Session> SessionStore::get(const std::string& id) const {
  std::lock_guard lock(mutex_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) throw Error(ErrorCode::UnknownSession, "no session '" + id + "'");
  it->second->touch();
  return it->second;
}

std::size_t SessionStore::save_snapshot(const std::string& id,
                                        const std::filesystem::path& path) const {
  const auto text = snapshot_json(*get(id)->data()).dump(2) + "\n";
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot open '" + path.string() + "' for writing");
  out << text;
  out.flush();
  if (!out) throw Error(ErrorCode::IoError, "failed writing '" + path.string() + "'");
  return text.size();
}

std::string SessionStore::load_snapshot(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  auto data = session_data_from_snapshot(buf.str());

  std::lock_guard lock(mutex_);
  auto session = std::make_shared<Session>(new_id(), data->seed());
  session->reset(std::move(data));
  sessions_.emplace(session->id(), session);
  return session->id();
}

}  // namespace genevis
