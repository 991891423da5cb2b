#include "genevis/payload.hpp"

#include <cstdio>
#include <cstdlib>
#include <unordered_map>

namespace genevis {

namespace {

Json layout_meta(const LayoutState& state, std::uint64_t seed) {
  return Json{{"seed", seed}, {"iterations", state.iteration}, {"converged", state.converged}};
}

LayoutParams seeded(const LayoutParams& base, std::uint64_t seed) {
  LayoutParams p = base;
  p.seed = seed;
  return p;
}

}  // namespace

double wire_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return std::strtod(buf, nullptr);
}

std::string dump_payload(const Json& payload) { return payload.dump() + "\n"; }

Json error_payload(const Error& err) {
  Json j{{"error_code", error_code_name(err.code())}, {"message", err.detail()}};
  if (err.location()) {
    j["location"] = Json{{"row", err.location()->row}, {"column", err.location()->column}};
  }
  return j;
}

ClusterGraph make_cluster_graph(const ClusterDataset& ds, const EngineConfig& cfg,
                                std::size_t min_overlap, std::uint64_t color_seed) {
  ClusterGraphParams params;
  params.min_overlap = min_overlap;
  params.membership_threshold = cfg.membership_threshold;
  params.color_seed = color_seed;
  params.geometry = cfg.geometry;
  params.style = cfg.style;
  return build_cluster_graph(ds, params);
}

GeneGraph make_gene_graph(const ClusterDataset& ds, const InteractionDataset& ia, ClusterId cluster,
                          const EngineConfig& cfg) {
  GeneGraphParams params;
  params.node_scale = cfg.node_scale;
  params.membership_threshold = cfg.membership_threshold;
  params.style = cfg.style;
  return build_gene_graph(ds, ia, cluster, params);
}

Json cluster_view_payload(const ClusterDataset& ds, const EngineConfig& cfg, std::size_t min_overlap,
                          std::uint64_t color_seed, std::uint64_t layout_seed) {
  const auto graph = make_cluster_graph(ds, cfg, min_overlap, color_seed);

  std::unordered_map<ClusterId, std::size_t> slot;
  for (std::size_t i = 0; i < graph.nodes.size(); ++i) slot.emplace(graph.nodes[i].cluster, i);
  std::vector<LayoutEdge> springs;
  for (const auto& e : graph.edges) springs.push_back({slot.at(e.a), slot.at(e.b), e.intensity});

  const auto params = seeded(cfg.layout, layout_seed);
  const auto state = run_until_converged(init_layout(graph.nodes.size(), params), springs, params);

  Json nodes = Json::array();
  for (std::size_t i = 0; i < graph.nodes.size(); ++i) {
    const auto& n = graph.nodes[i];
    nodes.push_back({{"id", n.cluster},
                     {"name", n.name},
                     {"gene_count", n.gene_count},
                     {"mean_association", wire_number(n.mean_association)},
                     {"x", wire_number(state.positions[i].x)},
                     {"y", wire_number(state.positions[i].y)},
                     {"minor_radius", wire_number(n.geometry.minor_radius)},
                     {"major_radius", wire_number(n.geometry.major_radius)},
                     {"color", n.geometry.base_color.hex()}});
  }
  Json edges = Json::array();
  for (const auto& e : graph.edges) {
    edges.push_back({{"a", e.a},
                     {"b", e.b},
                     {"overlap", e.overlap},
                     {"width", wire_number(e.width)},
                     {"intensity", wire_number(e.intensity)}});
  }
  return Json{{"view", "cluster"},
              {"nodes", std::move(nodes)},
              {"edges", std::move(edges)},
              {"layout", layout_meta(state, layout_seed)}};
}

Json gene_view_payload(const GeneGraph& gg, const EngineConfig& cfg, std::uint64_t layout_seed) {
  std::unordered_map<GeneId, std::size_t> slot;
  for (std::size_t i = 0; i < gg.nodes.size(); ++i) slot.emplace(gg.nodes[i].id, i);
  std::vector<LayoutEdge> springs;
  for (const auto& e : gg.edges) springs.push_back({slot.at(e.a), slot.at(e.b), e.score});

  const auto params = seeded(cfg.layout, layout_seed);
  const auto state = run_until_converged(init_layout(gg.nodes.size(), params), springs, params);

  Json nodes = Json::array();
  for (std::size_t i = 0; i < gg.nodes.size(); ++i) {
    const auto& n = gg.nodes[i];
    Json pie = Json::array();
    for (const auto& s : n.pie) {
      pie.push_back({{"cluster", s.cluster}, {"fraction", wire_number(s.fraction)}});
    }
    nodes.push_back({{"id", n.id},
                     {"name", n.name},
                     {"x", wire_number(state.positions[i].x)},
                     {"y", wire_number(state.positions[i].y)},
                     {"radius", wire_number(n.radius)},
                     {"association", wire_number(n.association)},
                     {"pie", std::move(pie)}});
  }
  Json edges = Json::array();
  for (const auto& e : gg.edges) {
    edges.push_back({{"a", e.a},
                     {"b", e.b},
                     {"score", wire_number(e.score)},
                     {"width", wire_number(e.width)},
                     {"intensity", wire_number(e.intensity)}});
  }
  return Json{{"view", "gene"},
              {"cluster", gg.cluster},
              {"nodes", std::move(nodes)},
              {"edges", std::move(edges)},
              {"layout", layout_meta(state, layout_seed)}};
}

Json cluster_overlay_payload(const ClusterDataset& ds, const DiseaseGeneMap& dmap,
                             const EngineConfig& cfg, std::size_t min_overlap) {
  auto params = cfg.enrichment;
  params.membership_threshold = cfg.membership_threshold;
  const auto results = cluster_overlay(ds, dmap, params);

  Json clusters = Json::array();
  std::size_t pop = 0, hits = 0;
  for (const auto& r : results) {
    pop = r.population;
    hits = r.pop_hits;
    clusters.push_back({{"id", r.cluster},
                        {"name", ds.clusters[r.cluster]},
                        {"n", r.cluster_size},
                        {"k", r.cluster_hits},
                        {"ease_p", wire_number(r.ease_p)},
                        {"color_class", to_string(r.color_class)},
                        {"color", class_color(r.color_class).hex()},
                        {"opacity", wire_number(r.opacity)}});
  }

  // Edges touching only dimmed clusters are dimmed with them.
  const auto graph = make_cluster_graph(ds, cfg, min_overlap, 0);
  Json edges = Json::array();
  for (const auto& e : graph.edges) {
    const bool dimmed = results[e.a].cluster_hits == 0 && results[e.b].cluster_hits == 0;
    edges.push_back(
        {{"a", e.a}, {"b", e.b}, {"opacity", wire_number(dimmed ? params.dim_opacity : 1.0)}});
  }
  return Json{{"disease", dmap.disease},
              {"population", pop},
              {"pop_hits", hits},
              {"clusters", std::move(clusters)},
              {"edges", std::move(edges)}};
}

Json gene_overlay_payload(const GeneGraph& gg, const DiseaseGeneMap& dmap, const EngineConfig& cfg) {
  Json genes = Json::array();
  const auto entries = gene_overlay(gg, dmap, cfg.enrichment);
  for (std::size_t i = 0; i < entries.size(); ++i) {
    Json g{{"id", entries[i].gene}, {"name", gg.nodes[i].name}};
    if (entries[i].p) g["p"] = wire_number(*entries[i].p);
    g["color"] = entries[i].color.hex();
    genes.push_back(std::move(g));
  }
  return Json{{"disease", dmap.disease}, {"cluster", gg.cluster}, {"genes", std::move(genes)}};
}

Json highlight_payload(ClusterId cluster, const HighlightResult& result) {
  Json nodes = Json::array();
  for (const auto& n : result.nodes) nodes.push_back({{"id", n.id}, {"level", n.level}});
  Json edges = Json::array();
  for (const auto& e : result.edges) {
    edges.push_back({{"a", e.a}, {"b", e.b}, {"score", wire_number(e.score)}});
  }
  return Json{{"cluster", cluster},
              {"origin", result.origin},
              {"mode", to_string(result.mode)},
              {"parameter", wire_number(result.parameter)},
              {"nodes", std::move(nodes)},
              {"edges", std::move(edges)}};
}

Json diseases_payload(const DiseaseDataset& ds) {
  Json list = Json::array();
  for (const auto& d : list_diseases(ds)) {
    list.push_back({{"disease", d.disease}, {"record_count", d.records}});
  }
  return Json{{"diseases", std::move(list)}};
}

}  // namespace genevis
