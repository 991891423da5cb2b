#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "genevis/error.hpp"

namespace genevis {

using GeneId = std::uint64_t;
/// Index of a cluster column in the cluster table, in header order.
using ClusterId = std::size_t;

enum class Delimiter : char { Tab = '\t', Comma = ',' };
enum class ClusteringKind { Hard, Soft };

std::string_view to_string(ClusteringKind kind);

struct Gene {
  GeneId id = 0;
  std::string name;

  friend bool operator==(const Gene&, const Gene&) = default;
};

struct ClusterMembership {
  std::size_t gene = 0;  // index into ClusterDataset::genes
  ClusterId cluster = 0;
  double association = 0.0;

  friend bool operator==(const ClusterMembership&, const ClusterMembership&) = default;
};

/// Genes x clusters association matrix. Memberships are sorted by (gene, cluster)
/// and only hold strictly positive associations.
struct ClusterDataset {
  std::vector<Gene> genes;
  std::vector<std::string> clusters;
  std::vector<ClusterMembership> memberships;
  ClusteringKind kind = ClusteringKind::Soft;

  friend bool operator==(const ClusterDataset&, const ClusterDataset&) = default;
};

struct InteractionEdge {
  GeneId source = 0;
  GeneId target = 0;
  double score = 0.0;

  bool self_loop() const noexcept { return source == target; }
  friend bool operator==(const InteractionEdge&, const InteractionEdge&) = default;
};

struct InteractionDataset {
  std::vector<InteractionEdge> edges;
  /// Data rows read, before duplicate collapse.
  std::size_t rows = 0;

  std::size_t self_loop_count() const;
  friend bool operator==(const InteractionDataset& a, const InteractionDataset& b) {
    return a.edges == b.edges;
  }
};

struct DiseaseRecord {
  std::string disease;
  std::string gene_name;
  double p_value = 1.0;

  friend bool operator==(const DiseaseRecord&, const DiseaseRecord&) = default;
};

struct DiseaseDataset {
  std::vector<DiseaseRecord> records;

  friend bool operator==(const DiseaseDataset&, const DiseaseDataset&) = default;
};

/// Tab if the line has a tab, comma if it has a comma; throws NoDelimiter otherwise.
Delimiter detect_delimiter(std::string_view first_line);

/// Splits one line into trimmed fields. Comma mode honours double-quoted fields
/// ("" escapes a quote). `row` is only used for error locations.
std::vector<std::string> split_fields(std::string_view line, Delimiter delim, std::size_t row = 0);

ClusterDataset parse_cluster_table(std::string_view content);
InteractionDataset parse_interaction_table(std::string_view content);
DiseaseDataset parse_disease_table(std::string_view content);

/// Canonical comma-separated forms; parsing the output yields an equal dataset.
std::string serialize_cluster_table(const ClusterDataset& ds);
std::string serialize_interaction_table(const InteractionDataset& ds);
std::string serialize_disease_table(const DiseaseDataset& ds);

/// Lower-cased, whitespace-trimmed disease key used for label comparison.
std::string normalize_label(std::string_view label);

}  // namespace genevis
