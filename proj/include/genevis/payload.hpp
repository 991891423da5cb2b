#pragma once

// JSON view payloads. The CLI and the HTTP service both serialize through these
// functions, so identical inputs and seeds give byte-identical documents.

#include <cstdint>
#include <string>

#include <json.hpp>

#include "genevis/enrichment.hpp"
#include "genevis/genemodel.hpp"
#include "genevis/highlight.hpp"
#include "genevis/ingest.hpp"
#include "genevis/layout.hpp"

namespace genevis {

using Json = nlohmann::ordered_json;

/// Tunables shared by every view; the seeds are supplied per call.
struct EngineConfig {
  LayoutParams layout;
  GeometryParams geometry;
  EdgeStyle style;
  double node_scale = 12.0;
  double membership_threshold = 0.0;
  EnrichmentParams enrichment;
};

/// Rounds to 12 significant digits, the precision used on the wire.
double wire_number(double v);

/// Compact JSON text plus a trailing newline.
std::string dump_payload(const Json& payload);

Json error_payload(const Error& err);

ClusterGraph make_cluster_graph(const ClusterDataset& ds, const EngineConfig& cfg,
                                std::size_t min_overlap, std::uint64_t color_seed);
GeneGraph make_gene_graph(const ClusterDataset& ds, const InteractionDataset& ia, ClusterId cluster,
                          const EngineConfig& cfg);

Json cluster_view_payload(const ClusterDataset& ds, const EngineConfig& cfg, std::size_t min_overlap,
                          std::uint64_t color_seed, std::uint64_t layout_seed);

Json gene_view_payload(const GeneGraph& gg, const EngineConfig& cfg, std::uint64_t layout_seed);

Json cluster_overlay_payload(const ClusterDataset& ds, const DiseaseGeneMap& dmap,
                             const EngineConfig& cfg, std::size_t min_overlap);

Json gene_overlay_payload(const GeneGraph& gg, const DiseaseGeneMap& dmap, const EngineConfig& cfg);

Json highlight_payload(ClusterId cluster, const HighlightResult& result);

Json diseases_payload(const DiseaseDataset& ds);

}  // namespace genevis
