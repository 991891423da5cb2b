#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "genevis/ingest.hpp"

namespace genevis {

struct Rgb {
  std::uint8_t r = 0, g = 0, b = 0;

  /// "#rrggbb"
  std::string hex() const;
  friend bool operator==(const Rgb&, const Rgb&) = default;
};

/// Deterministic "random" node color for a cluster index under a session seed.
Rgb palette_color(std::uint64_t seed, ClusterId cluster);

struct GeometryParams {
  double r0 = 4.0;             // minor radius of a one-gene cluster
  double exponent = 0.5;       // minor = r0 * gene_count^exponent; 0.5 keeps area ~ gene count
  double max_elongation = 4.0; // major radius never exceeds this multiple of the minor radius
};

/// Edge styling range shared by both graph levels.
struct EdgeStyle {
  double width_min = 1.0;
  double width_max = 8.0;
};

struct EllipseGeometry {
  double minor_radius = 0.0;
  double major_radius = 0.0;
  Rgb base_color;
};

/// Ellipse for a cluster node: the minor radius encodes size, the major radius
/// stretches as the mean association drops (major = minor / mean, clamped).
EllipseGeometry node_geometry(std::size_t gene_count, double mean_association,
                              const GeometryParams& params = {}, Rgb color = {});

struct ClusterNode {
  ClusterId cluster = 0;
  std::string name;
  std::size_t gene_count = 0;
  double mean_association = 0.0;
  EllipseGeometry geometry;
};

struct ClusterEdge {
  ClusterId a = 0;  // a < b
  ClusterId b = 0;
  std::size_t overlap = 0;
  double width = 0.0;
  double intensity = 0.0;  // overlap / max overlap, in (0,1]
};

struct ClusterGraph {
  std::vector<ClusterNode> nodes;
  std::vector<ClusterEdge> edges;
};

struct ClusterGraphParams {
  std::size_t min_overlap = 1;
  /// A gene belongs to a cluster when its association exceeds this.
  double membership_threshold = 0.0;
  std::uint64_t color_seed = 0;
  GeometryParams geometry;
  EdgeStyle style;
};

/// Gene indices (into ds.genes) whose association with `cluster` exceeds `threshold`,
/// in gene order.
std::vector<std::size_t> cluster_members(const ClusterDataset& ds, ClusterId cluster,
                                         double threshold = 0.0);

/// Arithmetic mean of the stored associations of a cluster. Throws UnknownCluster
/// for an out-of-range id or a cluster without members.
double mean_association(const ClusterDataset& ds, ClusterId cluster);

ClusterGraph build_cluster_graph(const ClusterDataset& ds, const ClusterGraphParams& params = {});

struct PieSlice {
  ClusterId cluster = 0;
  double fraction = 0.0;
};

struct GeneNode {
  GeneId id = 0;
  std::string name;
  double association = 0.0;  // with the selected cluster
  double radius = 0.0;
  std::vector<PieSlice> pie;
};

struct GeneEdge {
  GeneId a = 0;
  GeneId b = 0;
  double score = 0.0;
  double width = 0.0;
  double intensity = 0.0;
};

struct GeneGraph {
  ClusterId cluster = 0;
  std::vector<GeneNode> nodes;
  std::vector<GeneEdge> edges;

  /// Position of a gene in `nodes`, or nodes.size() if absent.
  std::size_t index_of(GeneId id) const;
};

struct GeneGraphParams {
  double node_scale = 12.0;  // radius = node_scale * sqrt(association)
  double membership_threshold = 0.0;
  EdgeStyle style;
};

GeneGraph build_gene_graph(const ClusterDataset& ds, const InteractionDataset& ia,
                           ClusterId cluster, const GeneGraphParams& params = {});

}  // namespace genevis
