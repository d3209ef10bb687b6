#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "tc/core/config.hpp"
#include "tc/mapping/maps.hpp"
#include "tc/planners/grid_search.hpp"
#include "tc/sim/observation.hpp"
#include "tc/world/world.hpp"

namespace tc::testing {

// Path cost as a count of straight and diagonal moves; two costs are equal
// iff both counts match, since sqrt(2) is irrational.
struct MoveCount {
  int straight = 0;
  int diagonal = 0;
  double value() const;
  bool operator==(const MoveCount&) const = default;
};

// Uniform-cost search from `start` over the same 8-connected move set as the
// planner (no squeezing between two blocked orthogonal cells). Entry i is the
// cost of reaching cell index i, or nullopt when unreachable.
std::vector<std::optional<MoveCount>> ucs_all(const PlanningGrid& grid, Cell start);

// Closed segment against closed square [x0, x1] x [y0, y1], by clipping.
bool segment_hits_box(Vec2 a, Vec2 b, double x0, double y0, double x1, double y1);

// Visible cells by brute force: every cell whose center is in range and
// inside the cone, tested against every opaque cell near the sight line.
std::vector<Cell> brute_visible(const World& world, const SensorParams& params);

// 4-connected flood fill over traversable cells.
std::vector<std::uint8_t> flood_fill(const World& world, Cell start);

// Occupancy map with every cell known: ground truth inside the scene,
// occupied outside it.
OccupancyMap ground_truth_map(const World& world, int size, Cell origin);

struct OracleResult {
  int transported = 0;
  int required = 0;
  int steps = 0;
  double rate() const { return required > 0 ? static_cast<double>(transported) / required : 0.0; }
};

// Reference solver with full knowledge of the scene: fetches the nearest
// outstanding target (or a basket holding targets) by true path cost, two at
// a time, walks into the goal zone and drops. Navigation uses the regular
// path follower over a fully known map; grasping goes through the simulator.
OracleResult run_oracle(World world, TaskSpec spec, const Config& config, std::uint64_t seed);

}  // namespace tc::testing
