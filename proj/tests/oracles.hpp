#pragma once

// Test-only reference implementations. These are written independently of the
// library code paths they check: exact integer arithmetic, brute force, and
// plain numeric root finding.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "genevis/genemodel.hpp"
#include "genevis/ingest.hpp"

namespace oracle {

using u128 = unsigned __int128;

inline u128 choose(long n, long r) {
  if (r < 0 || r > n) return 0;
  r = std::min(r, n - r);
  u128 c = 1;
  for (long i = 1; i <= r; ++i) c = c * static_cast<u128>(n - r + i) / static_cast<u128>(i);
  return c;
}

/// Exact P(X >= k) as numerator / denominator, reduced to one long double division.
inline long double hypergeom_upper_exact(long N, long K, long n, long k) {
  u128 num = 0;
  for (long i = std::max(k, 0L); i <= std::min(n, K); ++i) num += choose(K, i) * choose(N - K, n - i);
  const u128 den = choose(N, n);
  // Both fit comfortably in 64 bits for N <= 60, so the conversion is exact.
  return static_cast<long double>(static_cast<std::uint64_t>(num)) /
         static_cast<long double>(static_cast<std::uint64_t>(den));
}

inline bool relative_close(double got, long double want, double rel) {
  if (want == 0.0L) return got == 0.0;
  return std::fabs(static_cast<long double>(got) - want) / std::fabs(want) <= rel;
}

/// Root of k_a (d - L0) + g d / 2 = k_r / d^2 by bisection (g = 0 gives the pure spring balance).
inline double spring_equilibrium(double kr, double ka, double L0, double g = 0.0) {
  auto f = [&](double d) { return ka * (d - L0) + g * d / 2.0 - kr / (d * d); };
  double lo = 1e-3, hi = 1e6;
  for (int i = 0; i < 400; ++i) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) < 0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

/// Naive double loop over all cluster pairs: (a, b) -> intersection size.
inline std::map<std::pair<std::size_t, std::size_t>, std::size_t> pairwise_overlaps(
    const genevis::ClusterDataset& ds) {
  std::vector<std::set<std::size_t>> members(ds.clusters.size());
  for (const auto& m : ds.memberships) members[m.cluster].insert(m.gene);
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> out;
  for (std::size_t a = 0; a < members.size(); ++a) {
    for (std::size_t b = a + 1; b < members.size(); ++b) {
      std::size_t n = 0;
      for (auto g : members[a]) n += members[b].count(g);
      if (n > 0 && !members[a].empty() && !members[b].empty()) out[{a, b}] = n;
    }
  }
  return out;
}

/// All-pairs hop distances (Floyd-Warshall); unreachable = INT_MAX / 4.
inline std::vector<std::vector<int>> hop_distances(const genevis::GeneGraph& gg) {
  const std::size_t n = gg.nodes.size();
  const int inf = std::numeric_limits<int>::max() / 4;
  std::vector<std::vector<int>> d(n, std::vector<int>(n, inf));
  for (std::size_t i = 0; i < n; ++i) d[i][i] = 0;
  for (const auto& e : gg.edges) {
    const auto a = gg.index_of(e.a), b = gg.index_of(e.b);
    if (a == b) continue;
    d[a][b] = d[b][a] = 1;
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (d[i][k] + d[k][j] < d[i][j]) d[i][j] = d[i][k] + d[k][j];
  return d;
}

/// Node set reachable from `origin` using only edges with score >= theta
/// (repeated relaxation until no change).
inline std::set<genevis::GeneId> threshold_component(const genevis::GeneGraph& gg,
                                                     genevis::GeneId origin, double theta) {
  std::set<genevis::GeneId> reached{origin};
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& e : gg.edges) {
      if (e.score < theta) continue;
      const bool ha = reached.count(e.a), hb = reached.count(e.b);
      if (ha != hb) {
        reached.insert(ha ? e.b : e.a);
        changed = true;
      }
    }
  }
  return reached;
}

struct GreedyStep {
  genevis::GeneId a, b;
  double score;
};

/// Greedy trace: each round sorts every frontier edge by (-score, min id, max id) and takes the first.
inline std::vector<GreedyStep> greedy_trace(const genevis::GeneGraph& gg, genevis::GeneId origin, int n) {
  std::set<genevis::GeneId> in{origin};
  std::vector<GreedyStep> steps;
  for (int round = 0; round < n; ++round) {
    std::vector<std::tuple<double, genevis::GeneId, genevis::GeneId, const genevis::GeneEdge*>> frontier;
    for (const auto& e : gg.edges) {
      if (e.a == e.b || (in.count(e.a) > 0) == (in.count(e.b) > 0)) continue;
      frontier.emplace_back(-e.score, std::min(e.a, e.b), std::max(e.a, e.b), &e);
    }
    if (frontier.empty()) break;
    std::sort(frontier.begin(), frontier.end());
    const auto* e = std::get<3>(frontier.front());
    in.insert(e->a);
    in.insert(e->b);
    steps.push_back({e->a, e->b, e->score});
  }
  return steps;
}

/// Random gene graph with distinct ids and collapsed, loop-free edges.
inline genevis::GeneGraph random_gene_graph(std::mt19937_64& rng, std::size_t max_nodes = 50) {
  genevis::GeneGraph gg;
  std::uniform_int_distribution<std::size_t> count(1, max_nodes);
  const std::size_t n = count(rng);
  for (std::size_t i = 0; i < n; ++i) {
    genevis::GeneNode node;
    node.id = 100 + i * 3;
    node.radius = 1.0;
    node.pie = {{0, 1.0}};
    gg.nodes.push_back(node);
  }
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double density = u(rng) * 0.25;
  // Scores on a coarse grid so ties are common and the tie-break is exercised.
  std::uniform_int_distribution<int> grid(0, 20);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (u(rng) >= density) continue;
      const double s = grid(rng) / 20.0;
      const bool flip = u(rng) < 0.5;
      gg.edges.push_back({flip ? gg.nodes[j].id : gg.nodes[i].id, flip ? gg.nodes[i].id : gg.nodes[j].id,
                          s, 1.0, s});
    }
  }
  std::shuffle(gg.edges.begin(), gg.edges.end(), rng);
  return gg;
}

/// Random cluster table text; hard tables use 0/1 cells only.
inline std::string random_cluster_table(std::mt19937_64& rng, bool hard, std::size_t max_genes = 50,
                                        std::size_t max_clusters = 8) {
  std::uniform_int_distribution<std::size_t> gcount(1, max_genes), ccount(1, max_clusters);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const auto genes = gcount(rng), clusters = ccount(rng);
  std::string text = "geneEntrezId,geneName";
  for (std::size_t c = 0; c < clusters; ++c) text += ",C" + std::to_string(c);
  text += "\n";
  for (std::size_t g = 0; g < genes; ++g) {
    text += std::to_string(g + 1) + ",G" + std::to_string(g + 1);
    for (std::size_t c = 0; c < clusters; ++c) {
      if (hard) {
        text += u(rng) < 0.4 ? ",1" : ",0";
      } else {
        const double v = u(rng) < 0.5 ? 0.0 : std::round(u(rng) * 1000) / 1000;
        text += "," + std::to_string(v);
      }
    }
    text += "\n";
  }
  return text;
}

}  // namespace oracle
