#include "tc/taskgen/task.hpp"

#include <algorithm>

#include "tc/core/rng.hpp"

namespace tc {
namespace {

bool occupied_by_object(const World& world, Cell c) {
  return std::any_of(world.objects().begin(), world.objects().end(), [&](const ObjectInstance& o) {
    if (o.footprint) return o.footprint->contains(c);
    return to_cell(o.pose) == c;
  });
}

bool next_to_blocker(const World& world, Cell c) {
  for (int dy = -1; dy <= 1; ++dy)
    for (int dx = -1; dx <= 1; ++dx) {
      if (dx == 0 && dy == 0) continue;
      const Cell n{c.x + dx, c.y + dy};
      if (!world.grid().in_bounds(n) || !world.is_traversable(n)) return true;
    }
  return false;
}

ObjectInstance make_light(std::string category, ObjectKind kind, Cell c) {
  ObjectInstance o;
  o.category = std::move(category);
  o.kind = kind;
  o.mass = MassClass::Light;
  o.pose = cell_center(c);
  return o;
}

}  // namespace

GeneratedTask populate_task(const World& house, std::uint64_t seed, const TaskParams& p) {
  Rng rng(seed);
  World world = house;
  const auto& rooms = world.grid().rooms();
  if (rooms.empty()) throw GenerationError("populate_task: house has no rooms");

  // Goal: a goal-category furniture that is unique in the house.
  std::vector<int> goal_candidates;
  for (auto category : kGoalCategories) {
    std::vector<int> ids;
    for (const auto& o : world.objects())
      if (o.kind == ObjectKind::Furniture && o.category == category) ids.push_back(o.id);
    if (ids.size() == 1) goal_candidates.push_back(ids.front());
  }
  if (goal_candidates.empty()) throw GenerationError("populate_task: no unique goal furniture in house");
  const int goal_id = goal_candidates[static_cast<std::size_t>(rng.uniform_int(0, static_cast<int>(goal_candidates.size()) - 1))];
  world.set_goal(make_goal_zone(world, goal_id, p.goal_radius_m));
  const bool zone_has_free = std::any_of(world.goal().zone_cells.begin(), world.goal().zone_cells.end(),
                                         [&](Cell c) { return world.is_traversable(c); });
  if (!zone_has_free) throw GenerationError("populate_task: goal zone has no free cell");

  TaskSpec spec;
  spec.goal_category = world.object(goal_id).category;
  spec.budget = p.budget;
  spec.seed = seed;

  // Houses are generated fully connected; reachability is still checked
  // against the component of the first free zone cell.
  Cell anchor{};
  for (Cell c : world.goal().zone_cells)
    if (world.is_traversable(c)) {
      anchor = c;
      break;
    }
  const auto reach = reachable_mask(world, anchor);
  auto usable = [&](Cell c) {
    return world.is_traversable(c) && reach[world.grid().index(c)] && !occupied_by_object(world, c) &&
           !world.in_goal_zone(c);
  };
  auto random_room_cell = [&](const RoomRegion& room) {
    return room.cells[static_cast<std::size_t>(rng.uniform_int(0, static_cast<int>(room.cells.size()) - 1))];
  };

  const int target_count = rng.uniform_int(p.min_targets, p.max_targets);
  for (int t = 0; t < target_count; ++t) {
    const auto& category = kTargetCategories[static_cast<std::size_t>(rng.uniform_int(0, static_cast<int>(kTargetCategories.size()) - 1))];
    bool placed = false;
    for (int attempt = 0; attempt < p.max_retries && !placed; ++attempt) {
      const auto& room = rooms[static_cast<std::size_t>(rng.uniform_int(0, static_cast<int>(rooms.size()) - 1))];
      const Cell c = random_room_cell(room);
      if (!usable(c) || !next_to_blocker(world, c)) continue;
      world.add_object(make_light(category, ObjectKind::Target, c));
      ++spec.required[category];
      placed = true;
    }
    if (!placed) throw GenerationError("populate_task: no reachable placement for a target object");
  }

  int containers = 0;
  for (const auto& room : rooms) {
    if (!rng.bernoulli(p.container_probability)) continue;
    bool placed = false;
    for (int attempt = 0; attempt < p.max_retries && !placed; ++attempt) {
      const Cell c = random_room_cell(room);
      if (!usable(c)) continue;
      world.add_object(make_light(kContainerCategory, ObjectKind::Container, c));
      placed = true;
    }
    if (!placed) {
      // Small goal rooms can lie entirely inside the zone; a basket there is
      // harmless, so fall back to any reachable free cell of the room.
      std::vector<Cell> spots;
      for (Cell c : room.cells)
        if (world.is_traversable(c) && reach[world.grid().index(c)] && !occupied_by_object(world, c))
          spots.push_back(c);
      if (!spots.empty()) {
        const Cell c = spots[static_cast<std::size_t>(rng.uniform_int(0, static_cast<int>(spots.size()) - 1))];
        world.add_object(make_light(kContainerCategory, ObjectKind::Container, c));
        placed = true;
      }
    }
    if (!placed) throw GenerationError("populate_task: no reachable placement for a container");
    ++containers;
  }

  bool spawned = false;
  for (int attempt = 0; attempt < p.max_retries && !spawned; ++attempt) {
    const auto& room = rooms[static_cast<std::size_t>(rng.uniform_int(0, static_cast<int>(rooms.size()) - 1))];
    const Cell c = random_room_cell(room);
    if (!usable(c)) continue;
    AgentState agent;
    agent.pose = cell_center(c);
    agent.heading_deg = 15.0 * rng.uniform_int(0, 23);
    world.agent() = agent;
    spawned = true;
  }
  if (!spawned) throw GenerationError("populate_task: no free spawn location");

  return {std::move(world), std::move(spec), containers};
}

std::optional<std::string> check_task(const World& world, const TaskSpec& spec) {
  const int total = spec.total_required();
  if (total < 6 || total > 8) return "required total " + std::to_string(total) + " outside [6, 8]";
  for (const auto& [category, count] : spec.required) {
    if (count <= 0) return "non-positive count for " + category;
    if (std::find(kTargetCategories.begin(), kTargetCategories.end(), category) == kTargetCategories.end())
      return "unknown target category " + category;
  }
  if (!is_goal_category(spec.goal_category)) return "goal category " + spec.goal_category + " is not a goal furniture";
  int goal_matches = 0;
  for (const auto& o : world.objects())
    if (o.kind == ObjectKind::Furniture && o.category == spec.goal_category) ++goal_matches;
  if (goal_matches != 1) return "goal furniture category is not unique in the scene";
  if (world.goal().furniture_id < 0 || world.object(world.goal().furniture_id).category != spec.goal_category)
    return std::string("goal furniture does not match the task");
  if (world.goal().zone_cells.empty()) return std::string("empty goal zone");

  std::map<std::string, int> present;
  for (const auto& o : world.objects())
    if (o.kind == ObjectKind::Target) ++present[o.category];
  if (present != spec.required) return std::string("scene targets do not match the required counts");

  const Cell spawn = world.grid().footprint_cell(world.agent().pose);
  if (!world.is_traversable(spawn)) return std::string("agent spawned on a blocked cell");
  const auto reach = reachable_mask(world, spawn);
  for (const auto& o : world.objects()) {
    if (o.kind != ObjectKind::Target && o.kind != ObjectKind::Container) continue;
    if (!reach[world.grid().index(to_cell(o.pose))]) return "object " + std::to_string(o.id) + " unreachable from spawn";
  }
  const bool zone_reachable = std::any_of(world.goal().zone_cells.begin(), world.goal().zone_cells.end(),
                                          [&](Cell c) { return reach[world.grid().index(c)] != 0; });
  if (!zone_reachable) return std::string("goal zone unreachable from spawn");
  return std::nullopt;
}

}  // namespace tc
