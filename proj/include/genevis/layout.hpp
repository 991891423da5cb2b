#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "genevis/error.hpp"

namespace genevis {

/// Spring-electrical simulation parameters. All defaults are tuning constants.
struct LayoutParams {
  double repulsion = 5000.0;   // k_r, force k_r / d^2 between every node pair
  double stiffness = 0.05;     // k_a, spring force k_a * w * (d - rest_length)
  double rest_length = 60.0;
  double damping = 0.85;       // velocity retained per step, in (0,1)
  double gravity = 0.02;       // pull toward the canvas center, per unit distance
  double max_step = 20.0;      // per-node displacement clamp
  double epsilon = 0.5;        // converged once the summed displacement of a step drops below this
  std::size_t max_iters = 2000;
  std::uint64_t seed = 0;
  double canvas_width = 1000.0;
  double canvas_height = 1000.0;

  /// Throws BadParameter if any field is out of range.
  void validate() const;
};

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Vec2&, const Vec2&) = default;
};

struct LayoutEdge {
  std::size_t a = 0;  // node indices
  std::size_t b = 0;
  double weight = 1.0;  // in (0,1]
};

struct LayoutState {
  std::vector<Vec2> positions;
  std::vector<Vec2> velocities;
  std::size_t iteration = 0;
  bool converged = false;
  double last_displacement = 0.0;  // summed node displacement of the latest step
};

/// Seeded positions uniform in the unit box around the canvas center, zero velocities.
LayoutState init_layout(std::size_t node_count, const LayoutParams& params);

/// One simulation step. Node pairs and edges are visited in a fixed order so
/// results are bitwise reproducible.
LayoutState step(LayoutState state, std::span<const LayoutEdge> edges, const LayoutParams& params);

/// Steps until converged or iteration == max_iters. Non-convergence is reported
/// through LayoutState::converged, never thrown.
LayoutState run_until_converged(LayoutState state, std::span<const LayoutEdge> edges,
                                const LayoutParams& params);

/// Potential whose negative gradient is the step force: pairwise k_r/d,
/// springs k_a*w*(d-L0)^2/2 and gravity g*|p-center|^2/2.
double layout_energy(std::span<const Vec2> positions, std::span<const LayoutEdge> edges,
                     const LayoutParams& params);

}  // namespace genevis
