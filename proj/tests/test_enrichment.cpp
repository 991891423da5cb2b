#include <gtest/gtest.h>

#include "genevis/enrichment.hpp"
#include "oracles.hpp"

using namespace genevis;

namespace {

// 20 genes; A = genes 1..6, B = genes 7..14; disease hits genes 1..4 and 7.
ClusterDataset twenty_genes() {
  std::string text = "geneEntrezId,geneName,A,B\n";
  for (int g = 1; g <= 20; ++g) {
    const bool a = g <= 6, b = g >= 7 && g <= 14;
    text += std::to_string(g) + ",G" + std::to_string(g) + (a ? ",1" : ",0") + (b ? ",1" : ",0") + "\n";
  }
  return parse_cluster_table(text);
}

DiseaseDataset twenty_genes_disease() {
  return parse_disease_table(
      "Disease/Trait,Genes,p-Value\n"
      "Trait,G1,1e-3\nTrait,G2,2e-3\nTrait,G3,1e-5\nTrait,G4,0.2\nTrait,G7,0.04\n"
      "Trait,G3,1e-9\nOther,G20,0.5\nTrait,NOT_A_GENE,1e-4\n");
}

}  // namespace

TEST(Hypergeom, WorkedValues) {
  EXPECT_TRUE(oracle::relative_close(hypergeom_upper_tail(20, 5, 6, 3), 509.0L / 3876.0L, 1e-12));
  EXPECT_TRUE(oracle::relative_close(hypergeom_upper_tail(20, 5, 8, 1), 1.0L - 6435.0L / 125970.0L, 1e-12));
  EXPECT_EQ(hypergeom_upper_tail(20, 5, 6, 0), 1.0);
  // k above min(n, K) is outside the support.
  EXPECT_THROW(hypergeom_upper_tail(20, 5, 6, 6), Error);
}

TEST(Hypergeom, ExactGridSmallPopulations) {
  for (long N = 1; N <= 60; N += (N < 30 ? 1 : 3)) {
    for (long K = 0; K <= N; ++K) {
      for (long n = 0; n <= N; ++n) {
        for (long k = 0; k <= std::min(n, K); ++k) {
          const auto want = oracle::hypergeom_upper_exact(N, K, n, k);
          if (want < 1e-300L) continue;
          ASSERT_TRUE(oracle::relative_close(hypergeom_upper_tail(N, K, n, k), want, 1e-12))
              << N << " " << K << " " << n << " " << k;
        }
      }
    }
  }
}

TEST(Hypergeom, TailsComplement) {
  for (long N = 2; N <= 80; N += 7) {
    for (long K = 0; K <= N; K += 3) {
      for (long n = 0; n <= N; n += 2) {
        for (long k = 1; k <= std::min(n, K); ++k) {
          EXPECT_NEAR(hypergeom_upper_tail(N, K, n, k) + hypergeom_lower_tail(N, K, n, k - 1), 1.0, 1e-12);
        }
      }
    }
  }
}

TEST(Hypergeom, OutOfBoundsThrows) {
  EXPECT_THROW(hypergeom_upper_tail(10, 11, 3, 1), Error);
  EXPECT_THROW(hypergeom_upper_tail(10, 3, 11, 1), Error);
  EXPECT_THROW(hypergeom_upper_tail(-1, 0, 0, 0), Error);
}

TEST(Ease, IsShiftedFisherAndNeverSmaller) {
  for (long N = 5; N <= 60; N += 5) {
    for (long K = 1; K <= N; K += 2) {
      for (long n = 1; n <= N; n += 3) {
        for (long k = 0; k <= std::min(n, K); ++k) {
          const double ease = ease_score(N, K, n, k);
          EXPECT_EQ(ease, hypergeom_upper_tail(N, K, n, std::max(k - 1, 0L)));
          EXPECT_GE(ease, hypergeom_upper_tail(N, K, n, k));
          if (k + 1 <= std::min(n, K)) {
            EXPECT_GE(ease, ease_score(N, K, n, k + 1));
          }
        }
      }
    }
  }
}

TEST(ColorClasses, Boundaries) {
  EXPECT_EQ(classify_color(0.03), ColorClass::Red);
  EXPECT_EQ(classify_color(0.049999), ColorClass::Red);
  EXPECT_EQ(classify_color(0.05), ColorClass::Orange);
  EXPECT_EQ(classify_color(0.07), ColorClass::Orange);
  EXPECT_EQ(classify_color(0.1), ColorClass::White);
  EXPECT_EQ(classify_color(0.5), ColorClass::White);
  EXPECT_EQ(class_color(ColorClass::Red).hex(), "#ff0000");
  EXPECT_EQ(class_color(ColorClass::White).hex(), "#ffffff");
}

TEST(DiseaseMap, MinimumPerGeneCaseInsensitive) {
  const auto dmap = build_disease_gene_map(twenty_genes_disease(), "  trait ");
  EXPECT_EQ(dmap.disease, "Trait");
  EXPECT_EQ(dmap.gene_p.at("G3"), 1e-9);
  EXPECT_EQ(dmap.gene_p.size(), 6u);
  EXPECT_THROW(build_disease_gene_map(twenty_genes_disease(), "nope"), Error);
}

TEST(DiseaseMap, ListOrdersByCount) {
  const auto list = list_diseases(twenty_genes_disease());
  ASSERT_EQ(list.size(), 2u);
  EXPECT_EQ(list[0].disease, "Trait");
  EXPECT_EQ(list[0].records, 7u);
  EXPECT_EQ(list[1].records, 1u);
}

TEST(ClusterOverlay, TwentyGeneFixture) {
  const auto ds = twenty_genes();
  const auto dmap = build_disease_gene_map(twenty_genes_disease(), "Trait");
  const auto res = cluster_overlay(ds, dmap);
  ASSERT_EQ(res.size(), 2u);
  EXPECT_EQ(res[0].population, 20u);
  EXPECT_EQ(res[0].pop_hits, 5u);
  EXPECT_EQ(res[0].cluster_size, 6u);
  EXPECT_EQ(res[0].cluster_hits, 4u);
  EXPECT_TRUE(oracle::relative_close(res[0].ease_p, 509.0L / 3876.0L, 1e-12));
  EXPECT_EQ(res[0].color_class, ColorClass::White);
  EXPECT_EQ(res[0].opacity, 1.0);
  EXPECT_EQ(res[1].cluster_size, 8u);
  EXPECT_EQ(res[1].cluster_hits, 1u);
  EXPECT_EQ(res[1].ease_p, 1.0);
}

TEST(ClusterOverlay, ZeroHitClustersAreDimmed) {
  const auto ds = twenty_genes();
  const auto dmap = build_disease_gene_map(twenty_genes_disease(), "Other");
  const auto res = cluster_overlay(ds, dmap);
  for (const auto& r : res) {
    EXPECT_EQ(r.cluster_hits, 0u);
    EXPECT_EQ(r.opacity, 0.25);
    EXPECT_EQ(r.color_class, ColorClass::White);
  }
  EnrichmentParams p;
  p.dim_opacity = 0.1;
  EXPECT_EQ(cluster_overlay(ds, dmap, p)[0].opacity, 0.1);
}

TEST(GeneColors, Ramp) {
  EXPECT_EQ(gene_p_color(1.0).hex(), "#ffffff");
  EXPECT_EQ(gene_p_color(1e-4).hex(), "#ffa500");
  EXPECT_EQ(gene_p_color(1e-8).hex(), "#ff0000");
  EXPECT_EQ(gene_p_color(1e-20).hex(), "#ff0000");
  EXPECT_EQ(kNeutralGrey.hex(), "#bfbfbf");
}

TEST(GeneColors, OverlayUsesNeutralForMissing) {
  const auto ds = twenty_genes();
  const auto ia = parse_interaction_table("SourceGeneId,TargetGeneId,score\n1,2,0.5\n");
  const auto gg = build_gene_graph(ds, ia, 0);
  const auto dmap = build_disease_gene_map(twenty_genes_disease(), "Trait");
  const auto entries = gene_overlay(gg, dmap);
  ASSERT_EQ(entries.size(), 6u);
  EXPECT_EQ(*entries[2].p, 1e-9);
  EXPECT_EQ(entries[2].color.hex(), "#ff0000");
  EXPECT_FALSE(entries[4].p.has_value());
  EXPECT_EQ(entries[4].color, kNeutralGrey);
}
