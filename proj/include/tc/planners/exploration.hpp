#pragma once

#include <optional>
#include <set>
#include <vector>

#include "tc/core/rng.hpp"
#include "tc/mapping/maps.hpp"
#include "tc/planners/high_level.hpp"
#include "tc/sim/action.hpp"
#include "tc/sim/observation.hpp"

namespace tc {

// Uniform sample from the frontier minus `exclude`. nullopt signals that
// exploration is complete.
std::optional<Cell> explore_frontier(const OccupancyMap& map, Rng& rng, const std::set<Cell>& exclude = {});

struct ObjectChoice {
  int id = -1;
  Cell cell;
  double cost = 0.0;  // path cost in cells, or Euclidean distance in cells
};

// Candidate objects of `kind` the agent could grasp: not transported, not
// inside a resting container, not excluded.
std::vector<const KnownObject*> graspable_objects(const SemanticMap& sem, ObjectKind kind, const std::set<int>& exclude);

// Nearest candidate by A* cost over the occupancy map; ties go to the lower
// id. Unreachable candidates are skipped.
std::optional<ObjectChoice> nearest_by_path(const AgentMaps& maps, Cell from, ObjectKind kind,
                                            const std::set<int>& exclude = {});
// Nearest candidate by straight-line distance; ties go to the lower id.
std::optional<ObjectChoice> nearest_by_distance(const AgentMaps& maps, Cell from, ObjectKind kind,
                                                const std::set<int>& exclude = {});

// Free map cells 8-adjacent to the known goal furniture, from which a drop
// lands in the goal zone. Sorted.
std::vector<Cell> placement_cells(const AgentMaps& maps);

// Waypoint for the greedy semantic explorer: the nearest (by A* cost) cell
// flagged for the current need; falls back to frontier sampling.
std::optional<Cell> explore_greedy_semantic(const AgentMaps& maps, SubGoalTag need, Cell from, Rng& rng,
                                            const std::set<int>& exclude_objects = {},
                                            const std::set<Cell>& exclude_cells = {});

// Lower-bound baseline: drop when holding items inside the known goal area,
// grasp a visible object with probability 0.5 when an arm is free, otherwise a
// uniformly random motion primitive.
Action random_agent_step(const Observation& obs, const AgentMaps& maps, Rng& rng, double goal_radius_m);

}  // namespace tc
