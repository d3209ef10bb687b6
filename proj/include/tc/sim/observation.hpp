#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "tc/sim/action.hpp"
#include "tc/world/world.hpp"

namespace tc {

struct SensorParams {
  double fov_deg = 90.0;
  double range_m = 3.0;
};

struct VisibleCell {
  Cell cell;
  bool occupied = false;

  bool operator==(const VisibleCell&) const = default;
};

struct Detection {
  int id = 0;
  std::string category;
  ObjectKind kind = ObjectKind::Target;
  Vec2 pose;
  std::optional<CellRect> footprint;
  std::optional<int> contained_in;
  // The object rests inside the goal zone (it counts as transported).
  bool in_goal_zone = false;
};

// What the agent perceives after an action. Oracle perception: poses are
// exact and occupancy flags are ground truth for every visible cell.
struct Observation {
  std::vector<VisibleCell> visible_cells;  // sorted by cell
  std::vector<Detection> detections;       // sorted by id
  Vec2 pose;
  double heading_deg = 0.0;
  ActionStatus last_status = ActionStatus::Success;
  int steps_charged = 0;
  std::array<std::optional<int>, 2> arm_slots;
  // Objects inside a held container.
  std::vector<int> container_contents;

  const Detection* find(int id) const;
  bool sees(int id) const { return find(id) != nullptr; }
};

// True iff the sight line from `from` to the center of `target` crosses no
// opaque cell other than `target` itself.
bool line_of_sight(const World& world, Vec2 from, Cell target);

// Ray-casts from the agent pose over cells whose centers lie within the field
// of view and range. The agent's own cell is always visible. Objects are
// detected when the cell they rest on (or any footprint cell) is visible.
// Does not charge a step; status and step count are left for the caller.
Observation observe(const World& world, const SensorParams& params);

}  // namespace tc
