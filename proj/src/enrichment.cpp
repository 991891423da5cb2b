#include "genevis/enrichment.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

namespace genevis {

namespace {

constexpr long kTableSize = 1 << 16;

double log_factorial(long n) {
  static const std::vector<double> table = [] {
    std::vector<double> t(kTableSize);
    for (long i = 0; i < kTableSize; ++i) t[i] = std::lgamma(static_cast<double>(i) + 1.0);
    return t;
  }();
  return n < kTableSize ? table[n] : std::lgamma(static_cast<double>(n) + 1.0);
}

double log_choose(long n, long r) {
  return log_factorial(n) - log_factorial(r) - log_factorial(n - r);
}

struct Support {
  long lo;
  long hi;
};

Support check_hypergeom(long population, long successes, long draws) {
  if (population < 0 || successes < 0 || successes > population || draws < 0 ||
      draws > population) {
    throw Error(ErrorCode::BadParameter, "hypergeometric parameters out of range");
  }
  return {std::max(0L, draws - (population - successes)), std::min(draws, successes)};
}

double log_pmf(long population, long successes, long draws, long i) {
  return log_choose(successes, i) + log_choose(population - successes, draws - i) -
         log_choose(population, draws);
}

double sum_pmf(long population, long successes, long draws, long from, long to) {
  double total = 0.0;
  for (long i = from; i <= to; ++i) total += std::exp(log_pmf(population, successes, draws, i));
  return std::clamp(total, 0.0, 1.0);
}

Rgb lerp(Rgb a, Rgb b, double t) {
  auto mix = [t](std::uint8_t x, std::uint8_t y) {
    return static_cast<std::uint8_t>(std::lround(x + (static_cast<double>(y) - x) * t));
  };
  return {mix(a.r, b.r), mix(a.g, b.g), mix(a.b, b.b)};
}

constexpr Rgb kWhite{255, 255, 255};
constexpr Rgb kOrange{255, 165, 0};
constexpr Rgb kRed{255, 0, 0};

}  // namespace

DiseaseGeneMap build_disease_gene_map(const DiseaseDataset& ds, std::string_view disease) {
  const auto key = normalize_label(disease);
  DiseaseGeneMap map;
  bool found = false;
  for (const auto& r : ds.records) {
    if (normalize_label(r.disease) != key) continue;
    if (!found) {
      const auto first = r.disease.find_first_not_of(" \t");
      const auto last = r.disease.find_last_not_of(" \t");
      map.disease = r.disease.substr(first, last - first + 1);
      found = true;
    }
    auto [it, inserted] = map.gene_p.try_emplace(r.gene_name, r.p_value);
    if (!inserted) it->second = std::min(it->second, r.p_value);
  }
  if (!found) throw Error(ErrorCode::UnknownDisease, "no records for disease '" + std::string(disease) + "'");
  return map;
}

std::vector<DiseaseCount> list_diseases(const DiseaseDataset& ds) {
  std::vector<DiseaseCount> out;
  std::unordered_map<std::string, std::size_t> index;
  for (const auto& r : ds.records) {
    auto [it, inserted] = index.try_emplace(normalize_label(r.disease), out.size());
    if (inserted) out.push_back({r.disease, 0});
    ++out[it->second].records;
  }
  std::sort(out.begin(), out.end(), [](const DiseaseCount& a, const DiseaseCount& b) {
    if (a.records != b.records) return a.records > b.records;
    return a.disease < b.disease;
  });
  return out;
}

double hypergeom_upper_tail(long population, long successes, long draws, long k) {
  const auto [lo, hi] = check_hypergeom(population, successes, draws);
  if (k < 0 || k > std::min(draws, successes)) {
    throw Error(ErrorCode::BadParameter, "k must lie in [0, min(draws, successes)]");
  }
  if (k <= lo) return 1.0;
  return sum_pmf(population, successes, draws, k, hi);
}

double hypergeom_lower_tail(long population, long successes, long draws, long k) {
  const auto [lo, hi] = check_hypergeom(population, successes, draws);
  if (k < lo) return 0.0;
  if (k >= hi) return 1.0;
  return sum_pmf(population, successes, draws, lo, k);
}

double ease_score(long population, long successes, long draws, long k) {
  if (k < 0 || k > std::min(draws, successes)) {
    throw Error(ErrorCode::BadParameter, "k must lie in [0, min(draws, successes)]");
  }
  return hypergeom_upper_tail(population, successes, draws, std::max(k - 1, 0L));
}

std::string_view to_string(ColorClass c) {
  switch (c) {
    case ColorClass::Red: return "red";
    case ColorClass::Orange: return "orange";
    case ColorClass::White: return "white";
  }
  return "white";
}

Rgb class_color(ColorClass c) {
  switch (c) {
    case ColorClass::Red: return kRed;
    case ColorClass::Orange: return kOrange;
    case ColorClass::White: return kWhite;
  }
  return kWhite;
}

ColorClass classify_color(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorCode::BadParameter, "p must lie in [0,1]");
  if (p < 0.05) return ColorClass::Red;
  if (p < 0.1) return ColorClass::Orange;
  return ColorClass::White;
}

std::vector<EnrichmentResult> cluster_overlay(const ClusterDataset& ds, const DiseaseGeneMap& dmap,
                                              const EnrichmentParams& params) {
  std::vector<bool> hit(ds.genes.size());
  std::size_t pop_hits = 0;
  for (std::size_t g = 0; g < ds.genes.size(); ++g) {
    hit[g] = dmap.gene_p.contains(ds.genes[g].name);
    pop_hits += hit[g] ? 1 : 0;
  }

  std::vector<EnrichmentResult> out(ds.clusters.size());
  for (ClusterId c = 0; c < out.size(); ++c) {
    out[c].cluster = c;
    out[c].population = ds.genes.size();
    out[c].pop_hits = pop_hits;
  }
  for (const auto& m : ds.memberships) {
    if (m.association <= params.membership_threshold) continue;
    ++out[m.cluster].cluster_size;
    if (hit[m.gene]) ++out[m.cluster].cluster_hits;
  }
  for (auto& r : out) {
    r.ease_p = ease_score(static_cast<long>(r.population), static_cast<long>(r.pop_hits),
                          static_cast<long>(r.cluster_size), static_cast<long>(r.cluster_hits));
    r.color_class = classify_color(r.ease_p);
    r.opacity = r.cluster_hits == 0 ? params.dim_opacity : 1.0;
  }
  return out;
}

Rgb gene_p_color(double p, double log10_saturation) {
  const double t = std::clamp(-std::log10(p) / log10_saturation, 0.0, 1.0);
  return t <= 0.5 ? lerp(kWhite, kOrange, t / 0.5) : lerp(kOrange, kRed, (t - 0.5) / 0.5);
}

std::vector<GeneOverlayEntry> gene_overlay(const GeneGraph& gg, const DiseaseGeneMap& dmap,
                                           const EnrichmentParams& params) {
  std::vector<GeneOverlayEntry> out;
  out.reserve(gg.nodes.size());
  for (const auto& node : gg.nodes) {
    GeneOverlayEntry entry{node.id, std::nullopt, kNeutralGrey};
    if (auto it = dmap.gene_p.find(node.name); it != dmap.gene_p.end()) {
      entry.p = it->second;
      entry.color = gene_p_color(it->second, params.log10_saturation);
    }
    out.push_back(entry);
  }
  return out;
}

}  // namespace genevis
