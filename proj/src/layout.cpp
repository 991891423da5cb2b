#include "genevis/layout.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace genevis {

namespace {

constexpr double kMinDistance = 1e-6;

double to_unit(std::uint64_t bits) { return static_cast<double>(bits >> 11) * 0x1.0p-53; }

}  // namespace

void LayoutParams::validate() const {
  const bool ok = repulsion > 0.0 && stiffness > 0.0 && rest_length > 0.0 && damping > 0.0 &&
                  damping < 1.0 && gravity >= 0.0 && max_step > 0.0 && epsilon >= 0.0 &&
                  max_iters >= 1 && canvas_width > 0.0 && canvas_height > 0.0 &&
                  std::isfinite(repulsion) && std::isfinite(stiffness) &&
                  std::isfinite(rest_length) && std::isfinite(gravity) && std::isfinite(max_step);
  if (!ok) throw Error(ErrorCode::BadParameter, "layout parameters out of range");
}

LayoutState init_layout(std::size_t node_count, const LayoutParams& params) {
  params.validate();
  if (node_count == 0) throw Error(ErrorCode::BadParameter, "layout needs at least one node");
  // mt19937_64 output is specified by the standard; the distribution is not, so map bits by hand.
  std::mt19937_64 rng(params.seed);
  const double cx = params.canvas_width / 2.0;
  const double cy = params.canvas_height / 2.0;
  LayoutState state;
  state.positions.reserve(node_count);
  for (std::size_t i = 0; i < node_count; ++i) {
    const double x = cx + to_unit(rng()) - 0.5;
    const double y = cy + to_unit(rng()) - 0.5;
    state.positions.push_back({x, y});
  }
  state.velocities.assign(node_count, Vec2{});
  return state;
}

LayoutState step(LayoutState state, std::span<const LayoutEdge> edges, const LayoutParams& params) {
  auto& pos = state.positions;
  auto& vel = state.velocities;
  const std::size_t n = pos.size();
  std::vector<Vec2> force(n);

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double dx = pos[i].x - pos[j].x;
      double dy = pos[i].y - pos[j].y;
      double d = std::hypot(dx, dy);
      if (d < kMinDistance) {
        // Coincident nodes: push apart along a fixed, index-dependent direction.
        const double angle = static_cast<double>(i * 7919 + j) * 2.399963229728653;
        dx = std::cos(angle);
        dy = std::sin(angle);
        d = kMinDistance;
      } else {
        dx /= d;
        dy /= d;
      }
      const double f = params.repulsion / (d * d);
      force[i].x += f * dx;
      force[i].y += f * dy;
      force[j].x -= f * dx;
      force[j].y -= f * dy;
    }
  }

  for (const auto& e : edges) {
    if (e.a == e.b) continue;
    const double dx = pos[e.b].x - pos[e.a].x;
    const double dy = pos[e.b].y - pos[e.a].y;
    const double d = std::max(std::hypot(dx, dy), kMinDistance);
    const double f = params.stiffness * e.weight * (d - params.rest_length);
    force[e.a].x += f * dx / d;
    force[e.a].y += f * dy / d;
    force[e.b].x -= f * dx / d;
    force[e.b].y -= f * dy / d;
  }

  const double cx = params.canvas_width / 2.0;
  const double cy = params.canvas_height / 2.0;
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    force[i].x += params.gravity * (cx - pos[i].x);
    force[i].y += params.gravity * (cy - pos[i].y);

    vel[i].x = params.damping * (vel[i].x + force[i].x);
    vel[i].y = params.damping * (vel[i].y + force[i].y);
    double len = std::hypot(vel[i].x, vel[i].y);
    if (len > params.max_step) {
      vel[i].x *= params.max_step / len;
      vel[i].y *= params.max_step / len;
      len = params.max_step;
    }
    pos[i].x += vel[i].x;
    pos[i].y += vel[i].y;
    total += len;
  }

  ++state.iteration;
  state.last_displacement = total;
  state.converged = total < params.epsilon;
  return state;
}

LayoutState run_until_converged(LayoutState state, std::span<const LayoutEdge> edges,
                                const LayoutParams& params) {
  params.validate();
  state.converged = false;
  while (state.iteration < params.max_iters) {
    state = step(std::move(state), edges, params);
    if (state.converged) break;
  }
  return state;
}

double layout_energy(std::span<const Vec2> positions, std::span<const LayoutEdge> edges,
                     const LayoutParams& params) {
  double energy = 0.0;
  const std::size_t n = positions.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = std::max(
          std::hypot(positions[i].x - positions[j].x, positions[i].y - positions[j].y),
          kMinDistance);
      energy += params.repulsion / d;
    }
  }
  for (const auto& e : edges) {
    if (e.a == e.b) continue;
    const double d =
        std::hypot(positions[e.a].x - positions[e.b].x, positions[e.a].y - positions[e.b].y);
    energy += 0.5 * params.stiffness * e.weight * (d - params.rest_length) * (d - params.rest_length);
  }
  const double cx = params.canvas_width / 2.0;
  const double cy = params.canvas_height / 2.0;
  for (const auto& p : positions) {
    energy += 0.5 * params.gravity * ((p.x - cx) * (p.x - cx) + (p.y - cy) * (p.y - cy));
  }
  return energy;
}

}  // namespace genevis
