#include "tc/planners/exploration.hpp"

#include <algorithm>
#include <limits>

#include "tc/planners/grid_search.hpp"

namespace tc {

std::optional<Cell> explore_frontier(const OccupancyMap& map, Rng& rng, const std::set<Cell>& exclude) {
  std::vector<Cell> cells = frontier_cells(map);
  if (!exclude.empty()) {
    std::erase_if(cells, [&](Cell c) { return exclude.count(c) > 0; });
  }
  if (cells.empty()) return std::nullopt;
  return cells[static_cast<std::size_t>(rng.uniform_int(0, static_cast<int>(cells.size()) - 1))];
}

std::vector<const KnownObject*> graspable_objects(const SemanticMap& sem, ObjectKind kind, const std::set<int>& exclude) {
  std::vector<const KnownObject*> out;
  for (const auto& [id, k] : sem.known()) {
    if (k.kind != kind || k.transported || k.contained || exclude.count(id)) continue;
    out.push_back(&k);
  }
  return out;
}

std::optional<ObjectChoice> nearest_by_path(const AgentMaps& maps, Cell from, ObjectKind kind,
                                            const std::set<int>& exclude) {
  const auto candidates = graspable_objects(maps.semantic(), kind, exclude);
  if (candidates.empty()) return std::nullopt;
  const auto& occ = maps.occupancy();
  const auto grid = planning_grid(occ);
  const auto costs = cost_field(grid, from);
  std::optional<ObjectChoice> best;
  for (const auto* k : candidates) {
    if (!grid.in_bounds(k->cell)) continue;
    const double c = costs[grid.index(k->cell)];
    if (c < 0) continue;
    // Known objects are visited in id order, so strict comparison keeps the
    // lower id on ties.
    if (!best || c < best->cost - 1e-9) best = ObjectChoice{k->id, k->cell, c};
  }
  return best;
}

std::optional<ObjectChoice> nearest_by_distance(const AgentMaps& maps, Cell from, ObjectKind kind,
                                                const std::set<int>& exclude) {
  std::optional<ObjectChoice> best;
  for (const auto* k : graspable_objects(maps.semantic(), kind, exclude)) {
    const double dx = k->cell.x - from.x;
    const double dy = k->cell.y - from.y;
    const double d = std::sqrt(dx * dx + dy * dy);
    if (!best || d < best->cost - 1e-9) best = ObjectChoice{k->id, k->cell, d};
  }
  return best;
}

std::vector<Cell> placement_cells(const AgentMaps& maps) {
  const auto& occ = maps.occupancy();
  const auto& sem = maps.semantic();
  std::set<Cell> out;
  for (Cell g : sem.goal_cells()) {
    for (int dy = -1; dy <= 1; ++dy)
      for (int dx = -1; dx <= 1; ++dx) {
        const Cell c{g.x + dx, g.y + dy};
        if (!occ.in_bounds(c) || occ.is_occupied(c) || sem.at(SemanticChannel::Goal, c)) continue;
        out.insert(c);
      }
  }
  return {out.begin(), out.end()};
}

std::optional<Cell> explore_greedy_semantic(const AgentMaps& maps, SubGoalTag need, Cell from, Rng& rng,
                                            const std::set<int>& exclude_objects, const std::set<Cell>& exclude_cells) {
  switch (need) {
    case SubGoalTag::PickUpContainer:
    case SubGoalTag::PickUpObject: {
      const auto kind = need == SubGoalTag::PickUpContainer ? ObjectKind::Container : ObjectKind::Target;
      if (auto c = nearest_by_path(maps, from, kind, exclude_objects)) return c->cell;
      break;
    }
    case SubGoalTag::Place: {
      const auto cells = placement_cells(maps);
      if (cells.empty()) break;
      const auto grid = planning_grid(maps.occupancy());
      const auto costs = cost_field(grid, from);
      std::optional<Cell> best;
      double best_cost = std::numeric_limits<double>::infinity();
      for (Cell c : cells) {
        if (exclude_cells.count(c)) continue;
        const double v = costs[grid.index(c)];
        if (v >= 0 && v < best_cost - 1e-9) {
          best_cost = v;
          best = c;
        }
      }
      if (best) return best;
      break;
    }
    case SubGoalTag::Exploration: break;
  }
  return explore_frontier(maps.occupancy(), rng, exclude_cells);
}

Action random_agent_step(const Observation& obs, const AgentMaps& maps, Rng& rng, double goal_radius_m) {
  const bool holding = obs.arm_slots[0] || obs.arm_slots[1];
  if (holding) {
    const auto& occ = maps.occupancy();
    for (Cell g : maps.semantic().goal_cells()) {
      if (distance(obs.pose, occ.world_center(g)) <= goal_radius_m) return Action::drop();
    }
  }
  const bool free_arm = !obs.arm_slots[0] || !obs.arm_slots[1];
  if (free_arm) {
    std::vector<int> visible;
    for (const auto& d : obs.detections) {
      if (d.kind != ObjectKind::Target && d.kind != ObjectKind::Container) continue;
      if (d.contained_in || d.in_goal_zone) continue;
      visible.push_back(d.id);
    }
    if (!visible.empty() && rng.bernoulli(0.5)) {
      return Action::go_to_grasp(visible[static_cast<std::size_t>(rng.uniform_int(0, static_cast<int>(visible.size()) - 1))]);
    }
  }
  switch (rng.uniform_int(0, 2)) {
    case 0: return Action::move_forward();
    case 1: return Action::rotate_left();
    default: return Action::rotate_right();
  }
}

}  // namespace tc
