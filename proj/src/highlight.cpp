#include "genevis/highlight.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <unordered_map>

namespace genevis {

namespace {

struct Adjacency {
  std::unordered_map<GeneId, std::size_t> index;  // gene -> node position
  // Per node: (neighbor node, edge position), sorted by neighbor gene id.
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> out;
};

Adjacency build_adjacency(const GeneGraph& gg) {
  Adjacency adj;
  adj.out.resize(gg.nodes.size());
  for (std::size_t i = 0; i < gg.nodes.size(); ++i) adj.index.emplace(gg.nodes[i].id, i);
  for (std::size_t e = 0; e < gg.edges.size(); ++e) {
    const auto a = adj.index.at(gg.edges[e].a);
    const auto b = adj.index.at(gg.edges[e].b);
    if (a == b) continue;
    adj.out[a].emplace_back(b, e);
    adj.out[b].emplace_back(a, e);
  }
  for (auto& list : adj.out) {
    std::sort(list.begin(), list.end(), [&](const auto& x, const auto& y) {
      return gg.nodes[x.first].id < gg.nodes[y.first].id;
    });
  }
  return adj;
}

std::size_t require_origin(const Adjacency& adj, GeneId origin) {
  auto it = adj.index.find(origin);
  if (it == adj.index.end()) {
    throw Error(ErrorCode::UnknownGene, "gene " + std::to_string(origin) + " is not in this view");
  }
  return it->second;
}

/// BFS from the origin over edges accepted by `use_edge`, up to `max_level` hops.
template <class EdgeFilter>
std::vector<int> bfs(const Adjacency& adj, std::size_t start, int max_level, EdgeFilter use_edge,
                     std::vector<std::size_t>& order) {
  std::vector<int> level(adj.out.size(), -1);
  std::deque<std::size_t> queue{start};
  level[start] = 0;
  order.push_back(start);
  while (!queue.empty()) {
    const auto u = queue.front();
    queue.pop_front();
    if (level[u] == max_level) continue;
    for (const auto& [v, e] : adj.out[u]) {
      if (level[v] >= 0 || !use_edge(e)) continue;
      level[v] = level[u] + 1;
      order.push_back(v);
      queue.push_back(v);
    }
  }
  return level;
}

template <class EdgeFilter>
HighlightResult collect(const GeneGraph& gg, const std::vector<int>& level,
                        const std::vector<std::size_t>& order, EdgeFilter use_edge,
                        const Adjacency& adj) {
  HighlightResult r;
  for (auto i : order) r.nodes.push_back({gg.nodes[i].id, level[i]});
  for (std::size_t e = 0; e < gg.edges.size(); ++e) {
    const auto& edge = gg.edges[e];
    if (edge.a == edge.b || !use_edge(e)) continue;
    if (level[adj.index.at(edge.a)] >= 0 && level[adj.index.at(edge.b)] >= 0) {
      r.edges.push_back({edge.a, edge.b, edge.score});
    }
  }
  return r;
}

}  // namespace

std::string_view to_string(HighlightMode mode) {
  switch (mode) {
    case HighlightMode::Levels: return "levels";
    case HighlightMode::Threshold: return "threshold";
    case HighlightMode::TopN: return "top_n";
  }
  return "levels";
}

HighlightMode parse_highlight_mode(std::string_view text) {
  if (text == "levels") return HighlightMode::Levels;
  if (text == "threshold") return HighlightMode::Threshold;
  if (text == "top_n" || text == "top-n") return HighlightMode::TopN;
  throw Error(ErrorCode::BadParameter, "unknown highlight mode '" + std::string(text) + "'");
}

HighlightResult highlight_levels(const GeneGraph& gg, GeneId origin, int levels) {
  if (levels < 1) throw Error(ErrorCode::BadParameter, "level count must be >= 1");
  const auto adj = build_adjacency(gg);
  const auto start = require_origin(adj, origin);
  std::vector<std::size_t> order;
  auto all = [](std::size_t) { return true; };
  const auto level = bfs(adj, start, levels, all, order);
  auto r = collect(gg, level, order, all, adj);
  r.origin = origin;
  r.mode = HighlightMode::Levels;
  r.parameter = levels;
  return r;
}

HighlightResult highlight_threshold(const GeneGraph& gg, GeneId origin, double theta) {
  if (!(theta >= 0.0 && theta <= 1.0)) {
    throw Error(ErrorCode::BadParameter, "threshold must lie in [0,1]");
  }
  const auto adj = build_adjacency(gg);
  const auto start = require_origin(adj, origin);
  std::vector<std::size_t> order;
  auto strong = [&](std::size_t e) { return gg.edges[e].score >= theta; };
  const auto level = bfs(adj, start, static_cast<int>(gg.nodes.size()), strong, order);
  auto r = collect(gg, level, order, strong, adj);
  r.origin = origin;
  r.mode = HighlightMode::Threshold;
  r.parameter = theta;
  return r;
}

HighlightResult highlight_top_n(const GeneGraph& gg, GeneId origin, int n) {
  if (n < 1) throw Error(ErrorCode::BadParameter, "n must be >= 1");
  const auto adj = build_adjacency(gg);
  const auto start = require_origin(adj, origin);

  std::vector<int> level(gg.nodes.size(), -1);
  level[start] = 0;
  HighlightResult r;
  r.origin = origin;
  r.mode = HighlightMode::TopN;
  r.parameter = n;
  r.nodes.push_back({origin, 0});

  auto pair_key = [&](std::size_t e) {
    return std::minmax(gg.edges[e].a, gg.edges[e].b);
  };
  for (int round = 0; round < n; ++round) {
    std::size_t best = gg.edges.size();
    for (std::size_t e = 0; e < gg.edges.size(); ++e) {
      const auto a = adj.index.at(gg.edges[e].a);
      const auto b = adj.index.at(gg.edges[e].b);
      if ((level[a] >= 0) == (level[b] >= 0)) continue;
      if (best == gg.edges.size() || gg.edges[e].score > gg.edges[best].score ||
          (gg.edges[e].score == gg.edges[best].score && pair_key(e) < pair_key(best))) {
        best = e;
      }
    }
    if (best == gg.edges.size()) break;
    const auto& edge = gg.edges[best];
    const auto a = adj.index.at(edge.a);
    const auto b = adj.index.at(edge.b);
    const auto [inside, outside] = level[a] >= 0 ? std::pair{a, b} : std::pair{b, a};
    level[outside] = level[inside] + 1;
    r.nodes.push_back({gg.nodes[outside].id, level[outside]});
    r.edges.push_back({edge.a, edge.b, edge.score});
  }
  return r;
}

HighlightResult highlight(const GeneGraph& gg, GeneId origin, HighlightMode mode, double parameter) {
  auto as_count = [&](const char* what) {
    if (!std::isfinite(parameter) || parameter != std::floor(parameter) || parameter < 1 ||
        parameter > 1e9) {
      throw Error(ErrorCode::BadParameter, std::string(what) + " must be a positive integer");
    }
    return static_cast<int>(parameter);
  };
  switch (mode) {
    case HighlightMode::Levels: return highlight_levels(gg, origin, as_count("levels"));
    case HighlightMode::Threshold: return highlight_threshold(gg, origin, parameter);
    case HighlightMode::TopN: return highlight_top_n(gg, origin, as_count("n"));
  }
  throw Error(ErrorCode::BadParameter, "unknown highlight mode");
}

}  // namespace genevis
