#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <future>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <tuple>
#include <vector>

#include "genevis/payload.hpp"

namespace genevis {

enum class DatasetKind { Cluster, Interaction, Disease };

std::string_view to_string(DatasetKind kind);
/// "cluster", "interaction"/"interactions", "disease"/"diseases"; throws BadParameter.
DatasetKind parse_dataset_kind(std::string_view text);

struct UploadReport {
  DatasetKind kind = DatasetKind::Cluster;
  std::size_t rows = 0;
  std::optional<ClusteringKind> clustering_kind;
  std::size_t clusters = 0;
  std::vector<std::string> warnings;

  Json to_json() const;
};

/// Memoizes values by key; concurrent requests for one key share a single computation.
template <class Key, class Value>
class SingleFlight {
 public:
  std::shared_ptr<const Value> get(const Key& key, const std::function<Value()>& compute) {
    std::shared_future<std::shared_ptr<const Value>> future;
    std::promise<std::shared_ptr<const Value>> promise;
    bool owner = false;
    {
      std::lock_guard lock(mutex_);
      auto it = entries_.find(key);
      if (it == entries_.end()) {
        future = promise.get_future().share();
        entries_.emplace(key, future);
        owner = true;
      } else {
        future = it->second;
      }
    }
    if (owner) {
      try {
        promise.set_value(std::make_shared<const Value>(compute()));
      } catch (...) {
        promise.set_exception(std::current_exception());
      }
    }
    return future.get();
  }

 private:
  std::mutex mutex_;
  std::map<Key, std::shared_future<std::shared_ptr<const Value>>> entries_;
};

/// Immutable datasets of one session plus the views derived from them. Replacing
/// a dataset creates a new SessionData, which discards every cached view.
class SessionData {
 public:
  SessionData(std::uint64_t seed, std::shared_ptr<const ClusterDataset> clusters,
              std::shared_ptr<const InteractionDataset> interactions,
              std::shared_ptr<const DiseaseDataset> diseases);

  std::uint64_t seed() const { return seed_; }
  const std::shared_ptr<const ClusterDataset>& clusters() const { return clusters_; }
  const std::shared_ptr<const InteractionDataset>& interactions() const { return interactions_; }
  const std::shared_ptr<const DiseaseDataset>& diseases() const { return diseases_; }

  /// Serialized payloads (dump_payload form). Seeds default to the session seed.
  std::shared_ptr<const std::string> cluster_view(const EngineConfig& cfg, std::size_t min_overlap,
                                                  std::optional<std::uint64_t> seed) const;
  std::shared_ptr<const std::string> gene_view(const EngineConfig& cfg, ClusterId cluster,
                                               std::optional<std::uint64_t> seed) const;
  std::string diseases_view() const;
  std::string overlay(const EngineConfig& cfg, std::string_view disease,
                      std::optional<ClusterId> cluster, std::size_t min_overlap) const;
  std::string highlight_view(const EngineConfig& cfg, ClusterId cluster, GeneId origin,
                             HighlightMode mode, double parameter) const;

  std::shared_ptr<const GeneGraph> gene_graph(const EngineConfig& cfg, ClusterId cluster) const;

 private:
  const ClusterDataset& require_clusters() const;
  const InteractionDataset& require_interactions() const;
  const DiseaseDataset& require_diseases() const;

  std::uint64_t seed_;
  std::shared_ptr<const ClusterDataset> clusters_;
  std::shared_ptr<const InteractionDataset> interactions_;
  std::shared_ptr<const DiseaseDataset> diseases_;

  mutable SingleFlight<std::pair<std::size_t, std::uint64_t>, std::string> cluster_views_;
  mutable SingleFlight<std::pair<ClusterId, std::uint64_t>, std::string> gene_views_;
  mutable SingleFlight<ClusterId, GeneGraph> gene_graphs_;
};

class Session {
 public:
  Session(std::string id, std::uint64_t seed);

  const std::string& id() const { return id_; }

  /// The current immutable snapshot; reads never observe a half-applied upload.
  std::shared_ptr<const SessionData> data() const;

  /// Parses `body` and swaps in a new snapshot. Throws the parser's error unchanged.
  UploadReport upload(DatasetKind kind, std::string_view body, std::size_t body_limit);

  /// Replaces everything at once (snapshot load).
  void reset(std::shared_ptr<const SessionData> data);

  std::chrono::system_clock::time_point created_at() const { return created_at_; }
  std::chrono::system_clock::time_point last_access() const;
  void touch();

 private:
  std::string id_;
  std::chrono::system_clock::time_point created_at_;
  std::atomic<std::int64_t> last_access_ns_;
  mutable std::shared_mutex mutex_;
  std::shared_ptr<const SessionData> data_;
};

inline constexpr int kSnapshotFormatVersion = 1;

/// Snapshot document: format version, seed, and canonical dataset tables.
Json snapshot_json(const SessionData& data);
/// Throws CorruptSnapshot or VersionMismatch.
std::shared_ptr<const SessionData> session_data_from_snapshot(std::string_view text);

class SessionStore {
 public:
  explicit SessionStore(std::optional<std::uint64_t> fixed_seed = std::nullopt);

  std::shared_ptr<Session> create(std::optional<std::uint64_t> seed = std::nullopt);
  /// Throws UnknownSession.
  std::shared_ptr<Session> get(const std::string& id) const;

  /// Writes the session snapshot to `path`; returns bytes written. Throws IoError.
  std::size_t save_snapshot(const std::string& id, const std::filesystem::path& path) const;
  /// Creates a new session from a snapshot file; returns its id.
  std::string load_snapshot(const std::filesystem::path& path);

 private:
  std::string new_id();
  std::uint64_t draw_seed();

  mutable std::mutex mutex_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  std::uint64_t rng_state_;
  std::optional<std::uint64_t> fixed_seed_;
};

}  // namespace genevis
