#pragma once

#include <string_view>
#include <vector>

#include "genevis/genemodel.hpp"

namespace genevis {

enum class HighlightMode { Levels, Threshold, TopN };

std::string_view to_string(HighlightMode mode);
/// Accepts "levels", "threshold", "top_n" (also "top-n"); throws BadParameter otherwise.
HighlightMode parse_highlight_mode(std::string_view text);

struct HighlightNode {
  GeneId id = 0;
  int level = 0;  // hops from the origin along the selected edges

  friend bool operator==(const HighlightNode&, const HighlightNode&) = default;
};

struct HighlightEdge {
  GeneId a = 0;
  GeneId b = 0;
  double score = 0.0;

  friend bool operator==(const HighlightEdge&, const HighlightEdge&) = default;
};

struct HighlightResult {
  GeneId origin = 0;
  HighlightMode mode = HighlightMode::Levels;
  double parameter = 0.0;
  std::vector<HighlightNode> nodes;  // origin first, then by discovery order
  std::vector<HighlightEdge> edges;
};

/// Every gene within `levels` hops of the origin, with all edges among them.
HighlightResult highlight_levels(const GeneGraph& gg, GeneId origin, int levels);

/// Component of the origin using only edges with score >= theta.
HighlightResult highlight_threshold(const GeneGraph& gg, GeneId origin, double theta);

/// Greedy expansion: n times, take the strongest edge leaving the selected set.
/// Equal scores go to the lexicographically smaller (min id, max id) pair.
HighlightResult highlight_top_n(const GeneGraph& gg, GeneId origin, int n);

/// Dispatch by mode; integer modes require an integral parameter.
HighlightResult highlight(const GeneGraph& gg, GeneId origin, HighlightMode mode, double parameter);

}  // namespace genevis
