#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "genevis/genemodel.hpp"
#include "oracles.hpp"

using namespace genevis;

namespace {

ClusterDataset abc_dataset() {
  // A = {1..6}, B = {1..4}, C = {5,6,7}
  return parse_cluster_table(
      "geneEntrezId,geneName,A,B,C\n"
      "1,g1,1,1,0\n2,g2,1,1,0\n3,g3,1,1,0\n4,g4,1,1,0\n"
      "5,g5,1,0,1\n6,g6,1,0,1\n7,g7,0,0,1\n");
}

}  // namespace

TEST(NodeGeometry, WorkedExample) {
  GeometryParams p;
  p.r0 = 10.0;
  const auto g = node_geometry(4, 0.5, p);
  EXPECT_DOUBLE_EQ(g.minor_radius, 20.0);
  EXPECT_DOUBLE_EQ(g.major_radius, 40.0);
}

TEST(NodeGeometry, FullAssociationIsCircleAndElongationIsClamped) {
  const auto circle = node_geometry(9, 1.0);
  EXPECT_DOUBLE_EQ(circle.minor_radius, 12.0);
  EXPECT_DOUBLE_EQ(circle.major_radius, 12.0);
  const auto thin = node_geometry(9, 0.01);
  EXPECT_DOUBLE_EQ(thin.major_radius, 48.0);
}

TEST(NodeGeometry, RejectsBadInput) {
  EXPECT_THROW(node_geometry(0, 0.5), Error);
  EXPECT_THROW(node_geometry(3, 0.0), Error);
  EXPECT_THROW(node_geometry(3, 1.5), Error);
  EXPECT_THROW(node_geometry(3, std::nan("")), Error);
}

TEST(NodeGeometry, EccentricityMonotoneInAssociation) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<std::size_t> n(1, 500);
  std::uniform_real_distribution<double> a(1e-3, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const auto count = n(rng);
    double a1 = a(rng), a2 = a(rng);
    if (a1 > a2) std::swap(a1, a2);
    const auto g1 = node_geometry(count, a1), g2 = node_geometry(count, a2);
    EXPECT_EQ(g1.minor_radius, g2.minor_radius);
    EXPECT_GE(g1.major_radius / g1.minor_radius, g2.major_radius / g2.minor_radius);
    EXPECT_GE(g1.major_radius, g1.minor_radius);
  }
}

TEST(NodeGeometry, MinorRadiusGrowsWithGeneCount) {
  for (std::size_t n = 1; n < 200; ++n) {
    EXPECT_LT(node_geometry(n, 0.7).minor_radius, node_geometry(n + 1, 0.7).minor_radius);
  }
}

TEST(MeanAssociation, SoftClusterMeans) {
  const auto ds = parse_cluster_table(
      "geneEntrezId\tgeneName\tA\tB\n873\tCBR1\t0.2\t0.4\n2026\tENO2\t0.6\t0\n2665\tGDI2\t0.1\t0.2\n");
  EXPECT_NEAR(mean_association(ds, 0), 0.3, 1e-15);
  EXPECT_NEAR(mean_association(ds, 1), 0.3, 1e-15);
  EXPECT_THROW(mean_association(ds, 2), Error);
}

TEST(ClusterGraph, OverlapIntensityAndWidth) {
  const auto g = build_cluster_graph(abc_dataset());
  ASSERT_EQ(g.nodes.size(), 3u);
  ASSERT_EQ(g.edges.size(), 2u);
  EXPECT_EQ(g.edges[0].a, 0u);
  EXPECT_EQ(g.edges[0].b, 1u);
  EXPECT_EQ(g.edges[0].overlap, 4u);
  EXPECT_DOUBLE_EQ(g.edges[0].intensity, 1.0);
  EXPECT_DOUBLE_EQ(g.edges[0].width, 8.0);
  EXPECT_EQ(g.edges[1].a, 0u);
  EXPECT_EQ(g.edges[1].b, 2u);
  EXPECT_EQ(g.edges[1].overlap, 2u);
  EXPECT_DOUBLE_EQ(g.edges[1].intensity, 0.5);
  EXPECT_DOUBLE_EQ(g.edges[1].width, 4.5);
}

TEST(ClusterGraph, MinOverlapFilters) {
  ClusterGraphParams p;
  p.min_overlap = 3;
  const auto g = build_cluster_graph(abc_dataset(), p);
  ASSERT_EQ(g.edges.size(), 1u);
  EXPECT_EQ(g.edges[0].overlap, 4u);
  p.min_overlap = 0;
  EXPECT_THROW(build_cluster_graph(abc_dataset(), p), Error);
}

TEST(ClusterGraph, ColorsDependOnlyOnSeedAndCluster) {
  ClusterGraphParams p;
  p.color_seed = 42;
  const auto g1 = build_cluster_graph(abc_dataset(), p);
  const auto g2 = build_cluster_graph(abc_dataset(), p);
  for (std::size_t i = 0; i < g1.nodes.size(); ++i) {
    EXPECT_EQ(g1.nodes[i].geometry.base_color, g2.nodes[i].geometry.base_color);
    EXPECT_EQ(g1.nodes[i].geometry.base_color, palette_color(42, g1.nodes[i].cluster));
  }
  EXPECT_EQ(palette_color(42, 0).hex().size(), 7u);
  EXPECT_NE(palette_color(42, 0), palette_color(43, 0));
}

TEST(ClusterGraph, MatchesBruteForceOverlaps) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 300; ++trial) {
    const auto ds = parse_cluster_table(oracle::random_cluster_table(rng, trial % 3 == 0, 30, 6));
    if (ds.memberships.empty()) continue;
    const auto want = oracle::pairwise_overlaps(ds);
    const auto g = build_cluster_graph(ds);
    ASSERT_EQ(g.edges.size(), want.size());
    std::size_t max_overlap = 0;
    for (const auto& [k, v] : want) max_overlap = std::max(max_overlap, v);
    for (const auto& e : g.edges) {
      auto it = want.find({e.a, e.b});
      ASSERT_NE(it, want.end());
      EXPECT_EQ(e.overlap, it->second);
      EXPECT_DOUBLE_EQ(e.intensity, static_cast<double>(it->second) / max_overlap);
      EXPECT_GT(e.intensity, 0.0);
      EXPECT_LE(e.intensity, 1.0);
    }
  }
}

TEST(ClusterGraph, EmptyDatasetThrows) {
  const auto ds = parse_cluster_table("geneEntrezId,geneName,A\n1,X,0\n");
  try {
    build_cluster_graph(ds);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::EmptyDataset);
  }
}

TEST(GeneGraph, PieSlicesAndRadius) {
  const auto ds = parse_cluster_table("geneEntrezId,geneName,A,B,C\n873,CBR1,0.2,0.4,0.9\n2026,ENO2,0.6,0,0\n");
  const auto ia = parse_interaction_table("SourceGeneId,TargetGeneId,score\n873,2026,0.5\n873,873,0.9\n");
  const auto gg = build_gene_graph(ds, ia, 0);
  ASSERT_EQ(gg.nodes.size(), 2u);
  const auto& n = gg.nodes[0];
  EXPECT_EQ(n.id, 873u);
  ASSERT_EQ(n.pie.size(), 3u);
  EXPECT_NEAR(n.pie[0].fraction, 0.13333333333333333, 1e-15);
  EXPECT_NEAR(n.pie[1].fraction, 0.26666666666666666, 1e-15);
  EXPECT_NEAR(n.pie[2].fraction, 0.6, 1e-15);
  EXPECT_DOUBLE_EQ(n.radius, 12.0 * std::sqrt(0.2));
  ASSERT_EQ(gg.nodes[1].pie.size(), 1u);
  EXPECT_DOUBLE_EQ(gg.nodes[1].pie[0].fraction, 1.0);
  // The self-loop is dropped.
  ASSERT_EQ(gg.edges.size(), 1u);
  EXPECT_DOUBLE_EQ(gg.edges[0].width, 4.5);
  EXPECT_DOUBLE_EQ(gg.edges[0].intensity, 0.5);
}

TEST(GeneGraph, PieFractionsSumToOne) {
  std::mt19937_64 rng(3);
  const auto ia = parse_interaction_table("SourceGeneId,TargetGeneId,score\n1,2,1\n");
  for (int trial = 0; trial < 100; ++trial) {
    const auto ds = parse_cluster_table(oracle::random_cluster_table(rng, false, 20, 6));
    for (ClusterId c = 0; c < ds.clusters.size(); ++c) {
      if (cluster_members(ds, c).empty()) continue;
      for (const auto& node : build_gene_graph(ds, ia, c).nodes) {
        double sum = 0.0;
        for (const auto& s : node.pie) sum += s.fraction;
        EXPECT_NEAR(sum, 1.0, 1e-12);
      }
    }
  }
}

TEST(GeneGraph, UnknownOrEmptyCluster) {
  const auto ds = parse_cluster_table("geneEntrezId,geneName,A,B\n1,X,1,0\n");
  const auto ia = parse_interaction_table("SourceGeneId,TargetGeneId,score\n1,2,1\n");
  for (ClusterId c : {ClusterId{1}, ClusterId{7}}) {
    try {
      build_gene_graph(ds, ia, c);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::UnknownCluster);
    }
  }
}
