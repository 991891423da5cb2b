#include <gtest/gtest.h>

#include <random>
#include <set>

#include "genevis/highlight.hpp"
#include "oracles.hpp"

using namespace genevis;

namespace {

GeneGraph graph_of(std::vector<GeneId> ids, std::vector<GeneEdge> edges) {
  GeneGraph gg;
  for (auto id : ids) {
    GeneNode n;
    n.id = id;
    gg.nodes.push_back(n);
  }
  gg.edges = std::move(edges);
  return gg;
}

std::set<GeneId> node_ids(const HighlightResult& r) {
  std::set<GeneId> out;
  for (const auto& n : r.nodes) out.insert(n.id);
  return out;
}

}  // namespace

TEST(Highlight, PathLevels) {
  // 1 - 2 - 3 - 4
  const auto gg = graph_of({1, 2, 3, 4}, {{1, 2, 0.9}, {2, 3, 0.8}, {3, 4, 0.7}});
  const auto r1 = highlight_levels(gg, 1, 1);
  EXPECT_EQ(r1.nodes, (std::vector<HighlightNode>{{1, 0}, {2, 1}}));
  ASSERT_EQ(r1.edges.size(), 1u);
  const auto r2 = highlight_levels(gg, 1, 2);
  EXPECT_EQ(r2.nodes, (std::vector<HighlightNode>{{1, 0}, {2, 1}, {3, 2}}));
  EXPECT_EQ(r2.edges.size(), 2u);
}

TEST(Highlight, TriangleIncludesClosingEdge) {
  const auto gg = graph_of({1, 2, 3}, {{1, 2, 0.5}, {2, 3, 0.5}, {3, 1, 0.5}});
  const auto r = highlight_levels(gg, 1, 1);
  EXPECT_EQ(r.nodes.size(), 3u);
  EXPECT_EQ(r.edges.size(), 3u);
}

TEST(Highlight, StarThreshold) {
  const auto gg = graph_of({10, 11, 12, 13}, {{10, 11, 0.9}, {10, 12, 0.4}, {13, 10, 0.6}});
  const auto r = highlight_threshold(gg, 10, 0.6);
  EXPECT_EQ(node_ids(r), (std::set<GeneId>{10, 11, 13}));
  EXPECT_EQ(r.edges.size(), 2u);
  EXPECT_EQ(node_ids(highlight_threshold(gg, 12, 0.5)), (std::set<GeneId>{12}));
  EXPECT_EQ(node_ids(highlight_threshold(gg, 12, 0.0)).size(), 4u);
}

TEST(Highlight, TopNTieBreak) {
  // Both frontier edges score 0.5: (1,3) beats (1,4).
  const auto gg = graph_of({1, 3, 4, 5}, {{4, 1, 0.5}, {1, 3, 0.5}, {3, 5, 0.2}});
  const auto r = highlight_top_n(gg, 1, 1);
  EXPECT_EQ(r.nodes, (std::vector<HighlightNode>{{1, 0}, {3, 1}}));
  const auto r3 = highlight_top_n(gg, 1, 3);
  EXPECT_EQ(r3.nodes, (std::vector<HighlightNode>{{1, 0}, {3, 1}, {4, 1}, {5, 2}}));
  EXPECT_EQ(r3.edges.size(), 3u);
  // n beyond the component size stops early.
  EXPECT_EQ(highlight_top_n(gg, 1, 10).nodes.size(), 4u);
}

TEST(Highlight, Errors) {
  const auto gg = graph_of({1, 2}, {{1, 2, 0.5}});
  auto code_of = [](auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::BadRequest;
  };
  EXPECT_EQ(code_of([&] { highlight_levels(gg, 9, 1); }), ErrorCode::UnknownGene);
  EXPECT_EQ(code_of([&] { highlight_levels(gg, 1, 0); }), ErrorCode::BadParameter);
  EXPECT_EQ(code_of([&] { highlight_threshold(gg, 1, 1.5); }), ErrorCode::BadParameter);
  EXPECT_EQ(code_of([&] { highlight_top_n(gg, 1, 0); }), ErrorCode::BadParameter);
  EXPECT_EQ(code_of([&] { highlight(gg, 1, HighlightMode::Levels, 1.5); }), ErrorCode::BadParameter);
  EXPECT_EQ(code_of([&] { parse_highlight_mode("nearest"); }), ErrorCode::BadParameter);
  EXPECT_EQ(parse_highlight_mode("top-n"), HighlightMode::TopN);
}

TEST(HighlightProperty, LevelsMatchHopDistances) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 200; ++trial) {
    const auto gg = oracle::random_gene_graph(rng);
    const auto dist = oracle::hop_distances(gg);
    const std::size_t o = rng() % gg.nodes.size();
    const int L = 1 + static_cast<int>(rng() % 4);
    const auto r = highlight_levels(gg, gg.nodes[o].id, L);
    std::set<GeneId> want;
    for (std::size_t i = 0; i < gg.nodes.size(); ++i)
      if (dist[o][i] <= L) want.insert(gg.nodes[i].id);
    ASSERT_EQ(node_ids(r), want);
    for (const auto& n : r.nodes) EXPECT_EQ(n.level, dist[o][gg.index_of(n.id)]);
    std::size_t induced = 0;
    for (const auto& e : gg.edges) induced += want.count(e.a) && want.count(e.b);
    EXPECT_EQ(r.edges.size(), induced);
  }
}

TEST(HighlightProperty, ThresholdMatchesRelaxation) {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 200; ++trial) {
    const auto gg = oracle::random_gene_graph(rng);
    const auto origin = gg.nodes[rng() % gg.nodes.size()].id;
    const double theta = (rng() % 21) / 20.0;
    const auto r = highlight_threshold(gg, origin, theta);
    const auto want = oracle::threshold_component(gg, origin, theta);
    ASSERT_EQ(node_ids(r), want);
    for (const auto& e : r.edges) EXPECT_GE(e.score, theta);
  }
}

TEST(HighlightProperty, TopNMatchesGreedyTrace) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 200; ++trial) {
    const auto gg = oracle::random_gene_graph(rng);
    const auto origin = gg.nodes[rng() % gg.nodes.size()].id;
    const int n = 1 + static_cast<int>(rng() % 8);
    const auto r = highlight_top_n(gg, origin, n);
    const auto trace = oracle::greedy_trace(gg, origin, n);
    ASSERT_EQ(r.edges.size(), trace.size());
    for (std::size_t i = 0; i < trace.size(); ++i) {
      EXPECT_EQ(r.edges[i].a, trace[i].a);
      EXPECT_EQ(r.edges[i].b, trace[i].b);
    }
    EXPECT_EQ(r.nodes.size(), trace.size() + 1);
  }
}
