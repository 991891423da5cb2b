#include "genevis/genemodel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <unordered_map>

namespace genevis {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

double unit(std::uint64_t bits) { return static_cast<double>(bits >> 11) * 0x1.0p-53; }

std::uint8_t channel(double v) {
  return static_cast<std::uint8_t>(std::lround(std::clamp(v, 0.0, 1.0) * 255.0));
}

std::size_t overlap_size(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  std::size_t n = 0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++n;
      ++i;
      ++j;
    }
  }
  return n;
}

void check_cluster(const ClusterDataset& ds, ClusterId cluster) {
  if (cluster >= ds.clusters.size()) {
    throw Error(ErrorCode::UnknownCluster, "no cluster with id " + std::to_string(cluster));
  }
}

}  // namespace

std::string Rgb::hex() const {
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", r, g, b);
  return buf;
}

Rgb palette_color(std::uint64_t seed, ClusterId cluster) {
  const std::uint64_t h = splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(cluster)));
  const double hue = unit(h) * 6.0;
  const double sat = 0.45 + 0.3 * unit(splitmix64(h));
  const double val = 0.75 + 0.2 * unit(splitmix64(h + 1));

  // HSV -> RGB
  const double c = val * sat;
  const double x = c * (1.0 - std::abs(std::fmod(hue, 2.0) - 1.0));
  const double m = val - c;
  double r = 0, g = 0, b = 0;
  switch (static_cast<int>(hue) % 6) {
    case 0: r = c; g = x; break;
    case 1: r = x; g = c; break;
    case 2: g = c; b = x; break;
    case 3: g = x; b = c; break;
    case 4: r = x; b = c; break;
    default: r = c; b = x; break;
  }
  return {channel(r + m), channel(g + m), channel(b + m)};
}

EllipseGeometry node_geometry(std::size_t gene_count, double mean_association,
                              const GeometryParams& params, Rgb color) {
  if (gene_count == 0 || !(mean_association > 0.0) || mean_association > 1.0) {
    throw Error(ErrorCode::BadParameter,
                "node geometry needs gene_count >= 1 and mean association in (0,1]");
  }
  if (!(params.r0 > 0.0) || !(params.max_elongation >= 1.0)) {
    throw Error(ErrorCode::BadParameter, "r0 must be > 0 and max_elongation >= 1");
  }
  EllipseGeometry geo;
  geo.minor_radius = params.r0 * std::pow(static_cast<double>(gene_count), params.exponent);
  geo.major_radius = std::clamp(geo.minor_radius / mean_association, geo.minor_radius,
                                params.max_elongation * geo.minor_radius);
  geo.base_color = color;
  return geo;
}

std::vector<std::size_t> cluster_members(const ClusterDataset& ds, ClusterId cluster,
                                         double threshold) {
  std::vector<std::size_t> out;
  for (const auto& m : ds.memberships) {
    if (m.cluster == cluster && m.association > threshold) out.push_back(m.gene);
  }
  std::sort(out.begin(), out.end());
  return out;
}

double mean_association(const ClusterDataset& ds, ClusterId cluster) {
  check_cluster(ds, cluster);
  double sum = 0.0;
  std::size_t n = 0;
  for (const auto& m : ds.memberships) {
    if (m.cluster != cluster) continue;
    sum += m.association;
    ++n;
  }
  if (n == 0) {
    throw Error(ErrorCode::UnknownCluster, "cluster '" + ds.clusters[cluster] + "' has no members");
  }
  return sum / static_cast<double>(n);
}

ClusterGraph build_cluster_graph(const ClusterDataset& ds, const ClusterGraphParams& params) {
  if (ds.genes.empty() || ds.memberships.empty()) {
    throw Error(ErrorCode::EmptyDataset, "cluster dataset has no memberships");
  }
  if (params.min_overlap < 1) throw Error(ErrorCode::BadParameter, "min_overlap must be >= 1");

  const std::size_t k = ds.clusters.size();
  std::vector<std::vector<std::size_t>> members(k);
  std::vector<double> assoc_sum(k, 0.0);
  for (const auto& m : ds.memberships) {
    if (m.association > params.membership_threshold) {
      members[m.cluster].push_back(m.gene);
      assoc_sum[m.cluster] += m.association;
    }
  }

  ClusterGraph graph;
  for (ClusterId c = 0; c < k; ++c) {
    auto& genes = members[c];
    if (genes.empty()) continue;
    std::sort(genes.begin(), genes.end());
    ClusterNode node;
    node.cluster = c;
    node.name = ds.clusters[c];
    node.gene_count = genes.size();
    node.mean_association = assoc_sum[c] / static_cast<double>(genes.size());
    node.geometry = node_geometry(node.gene_count, node.mean_association, params.geometry,
                                  palette_color(params.color_seed, c));
    graph.nodes.push_back(std::move(node));
  }

  std::size_t max_overlap = 0;
  for (std::size_t i = 0; i < graph.nodes.size(); ++i) {
    for (std::size_t j = i + 1; j < graph.nodes.size(); ++j) {
      const ClusterId a = graph.nodes[i].cluster;
      const ClusterId b = graph.nodes[j].cluster;
      const std::size_t n = overlap_size(members[a], members[b]);
      if (n < params.min_overlap) continue;
      graph.edges.push_back({a, b, n, 0.0, 0.0});
      max_overlap = std::max(max_overlap, n);
    }
  }
  const auto& st = params.style;
  for (auto& e : graph.edges) {
    e.intensity = static_cast<double>(e.overlap) / static_cast<double>(max_overlap);
    e.width = st.width_min + (st.width_max - st.width_min) * e.intensity;
  }
  return graph;
}

std::size_t GeneGraph::index_of(GeneId id) const {
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].id == id) return i;
  }
  return nodes.size();
}

GeneGraph build_gene_graph(const ClusterDataset& ds, const InteractionDataset& ia,
                           ClusterId cluster, const GeneGraphParams& params) {
  check_cluster(ds, cluster);
  if (!(params.node_scale > 0.0)) throw Error(ErrorCode::BadParameter, "node_scale must be > 0");

  std::vector<std::vector<const ClusterMembership*>> by_gene(ds.genes.size());
  for (const auto& m : ds.memberships) by_gene[m.gene].push_back(&m);

  GeneGraph graph;
  graph.cluster = cluster;
  std::unordered_map<GeneId, std::size_t> node_of;
  for (std::size_t g = 0; g < ds.genes.size(); ++g) {
    const auto& ms = by_gene[g];
    auto self = std::find_if(ms.begin(), ms.end(), [&](const ClusterMembership* m) {
      return m->cluster == cluster && m->association > params.membership_threshold;
    });
    if (self == ms.end()) continue;

    GeneNode node;
    node.id = ds.genes[g].id;
    node.name = ds.genes[g].name;
    node.association = (*self)->association;
    node.radius = params.node_scale * std::sqrt(node.association);
    double total = 0.0;
    for (const auto* m : ms) total += m->association;
    for (const auto* m : ms) node.pie.push_back({m->cluster, m->association / total});
    node_of.emplace(node.id, graph.nodes.size());
    graph.nodes.push_back(std::move(node));
  }
  if (graph.nodes.empty()) {
    throw Error(ErrorCode::UnknownCluster, "cluster '" + ds.clusters[cluster] + "' has no members");
  }

  const auto& st = params.style;
  for (const auto& e : ia.edges) {
    if (e.self_loop() || !node_of.contains(e.source) || !node_of.contains(e.target)) continue;
    graph.edges.push_back({e.source, e.target, e.score,
                           st.width_min + (st.width_max - st.width_min) * e.score, e.score});
  }
  return graph;
}

}  // namespace genevis
