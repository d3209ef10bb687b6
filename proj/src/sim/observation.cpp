#include "tc/sim/observation.hpp"

#include <algorithm>
#include <cmath>

namespace tc {

const Detection* Observation::find(int id) const {
  auto it = std::lower_bound(detections.begin(), detections.end(), id,
                             [](const Detection& d, int v) { return d.id < v; });
  return it != detections.end() && it->id == id ? &*it : nullptr;
}

bool line_of_sight(const World& world, Vec2 from, Cell target) {
  return for_each_supercover_cell(from, cell_center(target), [&](Cell c) {
    return c == target || !world.is_opaque(c);
  });
}

Observation observe(const World& world, const SensorParams& params) {
  const auto& grid = world.grid();
  const auto& agent = world.agent();
  Observation obs;
  obs.pose = agent.pose;
  obs.heading_deg = agent.heading_deg;
  obs.steps_charged = agent.steps_charged;
  obs.arm_slots = agent.arm_slots;

  const Cell here = grid.footprint_cell(agent.pose);
  const int radius = static_cast<int>(std::ceil(params.range_m / kCellSize)) + 1;
  const double half_fov = 0.5 * params.fov_deg;
  std::vector<std::uint8_t> visible(grid.cell_count(), 0);

  for (int y = std::max(0, here.y - radius); y <= std::min(grid.height() - 1, here.y + radius); ++y) {
    for (int x = std::max(0, here.x - radius); x <= std::min(grid.width() - 1, here.x + radius); ++x) {
      const Cell c{x, y};
      bool seen = c == here;
      if (!seen) {
        const Vec2 center = cell_center(c);
        if (distance(agent.pose, center) > params.range_m) continue;
        const double off = std::abs(signed_angle_diff(agent.heading_deg, bearing_degrees(agent.pose, center)));
        if (off > half_fov + 1e-9) continue;
        seen = line_of_sight(world, agent.pose, c);
      }
      if (!seen) continue;
      visible[grid.index(c)] = 1;
      obs.visible_cells.push_back({c, !world.is_traversable(c)});
    }
  }

  auto held_directly = [&](int id) { return agent.holds(id); };
  for (const auto& o : world.objects()) {
    if (held_directly(o.id)) continue;
    if (o.contained_in && held_directly(*o.contained_in)) continue;
    bool seen = false;
    if (o.footprint) {
      for (int y = o.footprint->y0; y < o.footprint->y1 && !seen; ++y)
        for (int x = o.footprint->x0; x < o.footprint->x1 && !seen; ++x)
          seen = grid.in_bounds({x, y}) && visible[grid.index({x, y})];
    } else {
      const Cell c = to_cell(o.pose);
      seen = grid.in_bounds(c) && visible[grid.index(c)];
    }
    if (!seen) continue;
    Detection d;
    d.id = o.id;
    d.category = o.category;
    d.kind = o.kind;
    d.pose = o.pose;
    d.footprint = o.footprint;
    d.contained_in = o.contained_in;
    d.in_goal_zone = world.is_transported(o.id);
    obs.detections.push_back(std::move(d));
  }

  for (const auto& slot : agent.arm_slots)
    if (slot)
      for (int id : world.container_contents(*slot)) obs.container_contents.push_back(id);
  std::sort(obs.container_contents.begin(), obs.container_contents.end());
  return obs;
}

}  // namespace tc
