#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <tuple>

#include "tc/planners/path_follower.hpp"
#include "tc/sim/simulator.hpp"

namespace tc::testing {

double MoveCount::value() const { return straight + diagonal * std::sqrt(2.0); }

std::vector<std::optional<MoveCount>> ucs_all(const PlanningGrid& grid, Cell start) {
  const std::size_t n = static_cast<std::size_t>(grid.width) * grid.height;
  std::vector<std::optional<MoveCount>> best(n);
  std::vector<char> closed(n, 0);
  using Item = std::tuple<double, int, int, int, int>;  // value, straight, diag, x, y
  std::priority_queue<Item, std::vector<Item>, std::greater<>> open;
  best[grid.index(start)] = MoveCount{};
  open.emplace(0.0, 0, 0, start.x, start.y);
  while (!open.empty()) {
    auto [v, s, d, x, y] = open.top();
    open.pop();
    const Cell c{x, y};
    if (closed[grid.index(c)]) continue;
    closed[grid.index(c)] = 1;
    for (int dy = -1; dy <= 1; ++dy) {
      for (int dx = -1; dx <= 1; ++dx) {
        if (dx == 0 && dy == 0) continue;
        const Cell nb{x + dx, y + dy};
        if (!grid.passable(nb)) continue;
        const bool diag = dx != 0 && dy != 0;
        if (diag && (!grid.passable({x + dx, y}) || !grid.passable({x, y + dy}))) continue;
        MoveCount m{s + (diag ? 0 : 1), d + (diag ? 1 : 0)};
        auto& slot = best[grid.index(nb)];
        if (!slot || m.value() < slot->value() - 1e-9) {
          slot = m;
          open.emplace(m.value(), m.straight, m.diagonal, nb.x, nb.y);
        }
      }
    }
  }
  return best;
}

bool segment_hits_box(Vec2 a, Vec2 b, double x0, double y0, double x1, double y1) {
  constexpr double eps = 1e-9;
  double t0 = 0.0;
  double t1 = 1.0;
  const double d[2] = {b.x - a.x, b.y - a.y};
  const double p[2] = {a.x, a.y};
  const double lo[2] = {x0 - eps, y0 - eps};
  const double hi[2] = {x1 + eps, y1 + eps};
  for (int k = 0; k < 2; ++k) {
    if (d[k] == 0.0) {
      if (p[k] < lo[k] || p[k] > hi[k]) return false;
      continue;
    }
    double ta = (lo[k] - p[k]) / d[k];
    double tb = (hi[k] - p[k]) / d[k];
    if (ta > tb) std::swap(ta, tb);
    t0 = std::max(t0, ta);
    t1 = std::min(t1, tb);
    if (t0 > t1) return false;
  }
  return true;
}

std::vector<Cell> brute_visible(const World& world, const SensorParams& params) {
  const auto& g = world.grid();
  const Vec2 pose = world.agent().pose;
  const double heading = world.agent().heading_deg;
  const Cell here = to_cell(pose);
  std::vector<Cell> out;
  for (int y = 0; y < g.height(); ++y) {
    for (int x = 0; x < g.width(); ++x) {
      const Cell c{x, y};
      if (c == here) {
        out.push_back(c);
        continue;
      }
      const Vec2 center = cell_center(c);
      const double dx = center.x - pose.x;
      const double dy = center.y - pose.y;
      if (std::hypot(dx, dy) > params.range_m) continue;
      double off = std::fmod(std::atan2(dy, dx) * 180.0 / M_PI - heading + 720.0, 360.0);
      if (off > 180.0) off = 360.0 - off;
      if (off > params.fov_deg / 2 + 1e-9) continue;
      bool blocked = false;
      const int bx0 = static_cast<int>(std::floor(std::min(pose.x, center.x) / kCellSize)) - 1;
      const int bx1 = static_cast<int>(std::floor(std::max(pose.x, center.x) / kCellSize)) + 1;
      const int by0 = static_cast<int>(std::floor(std::min(pose.y, center.y) / kCellSize)) - 1;
      const int by1 = static_cast<int>(std::floor(std::max(pose.y, center.y) / kCellSize)) + 1;
      for (int oy = by0; oy <= by1 && !blocked; ++oy)
        for (int ox = bx0; ox <= bx1 && !blocked; ++ox) {
          const Cell o{ox, oy};
          if (o == c || !world.is_opaque(o)) continue;
          blocked = segment_hits_box(pose, center, ox * kCellSize, oy * kCellSize, (ox + 1) * kCellSize,
                                     (oy + 1) * kCellSize);
        }
      if (!blocked) out.push_back(c);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::uint8_t> flood_fill(const World& world, Cell start) {
  const auto& g = world.grid();
  std::vector<std::uint8_t> seen(g.cell_count(), 0);
  if (!g.in_bounds(start) || !world.is_traversable(start)) return seen;
  std::vector<Cell> stack{start};
  seen[g.index(start)] = 1;
  while (!stack.empty()) {
    const Cell c = stack.back();
    stack.pop_back();
    for (Cell d : {Cell{1, 0}, Cell{-1, 0}, Cell{0, 1}, Cell{0, -1}}) {
      const Cell n = c + d;
      if (!g.in_bounds(n) || seen[g.index(n)] || !world.is_traversable(n)) continue;
      seen[g.index(n)] = 1;
      stack.push_back(n);
    }
  }
  return seen;
}

OccupancyMap ground_truth_map(const World& world, int size, Cell origin) {
  OccupancyMap map(size, origin);
  for (int y = 0; y < size; ++y)
    for (int x = 0; x < size; ++x) {
      const Cell w = map.to_world({x, y});
      const bool occ = !world.grid().in_bounds(w) || !world.is_traversable(w);
      map.record({x, y}, occ);
    }
  return map;
}

namespace {

// Drives the follower to completion on the known map. True on arrival.
bool drive(Simulator& sim, const OccupancyMap& map, Cell goal, PathFollower::ArrivalTest arrived) {
  if (arrived(sim.observation().pose)) return true;
  PathFollower f(goal, arrived, follow_params(sim.config()));
  while (!sim.done()) {
    const auto a = f.next(sim.observation(), map);
    if (!a) break;
    f.report(sim.execute(*a));
  }
  return arrived(sim.observation().pose);
}

}  // namespace

OracleResult run_oracle(World world, TaskSpec spec, const Config& config, std::uint64_t seed) {
  spec.budget = config.budget;
  const Cell origin = to_cell(world.agent().pose);
  Simulator sim(std::move(world), spec, config, seed);
  const World& gt = sim.scene_state();
  const OccupancyMap map = ground_truth_map(gt, config.map_size, origin);
  const PlanningGrid plan = planning_grid(map);
  const double reach = config.reach_radius_m - 0.05;

  std::map<int, int> tries;
  auto wanted = [&](const ObjectInstance& o) {
    if (!o.resting || o.contained_in || tries[o.id] >= 3) return false;
    if (o.kind == ObjectKind::Target) return !gt.is_transported(o.id);
    if (o.kind != ObjectKind::Container) return false;
    for (int id : gt.container_contents(o.id))
      if (!gt.is_transported(id)) return true;
    return false;
  };

  for (int round = 0; round < 400 && !sim.done(); ++round) {
    const Cell here = map.map_cell(sim.observation().pose);
    const auto field = cost_field(plan, here);
    std::optional<int> pick;
    double best = 0.0;
    if (gt.agent().free_slot()) {
      for (const auto& o : gt.objects()) {
        if (!wanted(o)) continue;
        const Cell m = map.map_cell(o.pose);
        const double c = field[map.index(m)];
        if (c < 0) continue;
        if (!pick || c < best) {
          pick = o.id;
          best = c;
        }
      }
    }
    if (pick) {
      const int id = *pick;
      ++tries[id];
      const Vec2 at = gt.object(id).pose;
      const Cell at_cell = to_cell(at);
      const auto near = [&gt, at, at_cell, reach](Vec2 p) {
        return distance(p, at) <= reach && line_of_sight(gt, p, at_cell);
      };
      if (!drive(sim, map, map.map_cell(at), near)) continue;
      if (sim.done()) break;
      if (!sim.observation().sees(id)) sim.rotate_to(at);
      if (sim.done()) break;
      sim.go_to_grasp(id);
      continue;
    }
    if (gt.carried_objects().empty()) break;

    // Nearest reachable free zone cell.
    std::optional<Cell> spot;
    for (Cell z : gt.goal().zone_cells) {
      if (!gt.is_traversable(z)) continue;
      const Cell m = map.to_map(z);
      const double c = field[map.index(m)];
      if (c < 0) continue;
      if (!spot || c < best) {
        spot = m;
        best = c;
      }
    }
    if (!spot) break;
    const auto in_zone = [&gt](Vec2 p) { return gt.in_goal_zone(to_cell(p)) && gt.is_traversable(to_cell(p)); };
    if (drive(sim, map, *spot, in_zone) && !sim.done()) sim.drop();
  }
  return {sim.transported(), spec.total_required(), sim.steps()};
}

}  // namespace tc::testing
