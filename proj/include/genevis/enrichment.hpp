#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "genevis/genemodel.hpp"
#include "genevis/ingest.hpp"

namespace genevis {

/// Best (minimum) p-value per gene name for one disease.
struct DiseaseGeneMap {
  std::string disease;  // label as first seen in the dataset, trimmed
  std::map<std::string, double> gene_p;
};

/// Throws UnknownDisease when no record matches `disease` (trimmed, case-insensitive).
DiseaseGeneMap build_disease_gene_map(const DiseaseDataset& ds, std::string_view disease);

struct DiseaseCount {
  std::string disease;
  std::size_t records = 0;
};

/// Distinct labels with record counts, by count descending then label ascending.
std::vector<DiseaseCount> list_diseases(const DiseaseDataset& ds);

/// P(X >= k) for X ~ Hypergeometric(population, successes, draws).
double hypergeom_upper_tail(long population, long successes, long draws, long k);

/// P(X <= k), summed independently of the upper tail.
double hypergeom_lower_tail(long population, long successes, long draws, long k);

/// EASE score: the one-tailed Fisher p-value after discounting one overlapping gene.
double ease_score(long population, long successes, long draws, long k);

enum class ColorClass { Red, Orange, White };

std::string_view to_string(ColorClass c);
Rgb class_color(ColorClass c);

/// red below 0.05, orange below 0.1, white otherwise.
ColorClass classify_color(double p);

struct EnrichmentParams {
  double dim_opacity = 0.25;
  double membership_threshold = 0.0;
  /// -log10(p) at which the gene color saturates to red.
  double log10_saturation = 8.0;
};

struct EnrichmentResult {
  ClusterId cluster = 0;
  std::size_t population = 0;  // N
  std::size_t pop_hits = 0;    // K
  std::size_t cluster_size = 0;  // n
  std::size_t cluster_hits = 0;  // k
  double ease_p = 1.0;
  ColorClass color_class = ColorClass::White;
  double opacity = 1.0;
};

/// One result per cluster of the dataset, in cluster order.
std::vector<EnrichmentResult> cluster_overlay(const ClusterDataset& ds, const DiseaseGeneMap& dmap,
                                              const EnrichmentParams& params = {});

struct GeneOverlayEntry {
  GeneId gene = 0;
  std::optional<double> p;
  Rgb color;
};

inline constexpr Rgb kNeutralGrey{191, 191, 191};

/// White -> orange -> red ramp over t = clamp(-log10(p) / saturation, 0, 1).
Rgb gene_p_color(double p, double log10_saturation = 8.0);

std::vector<GeneOverlayEntry> gene_overlay(const GeneGraph& gg, const DiseaseGeneMap& dmap,
                                           const EnrichmentParams& params = {});

}  // namespace genevis
