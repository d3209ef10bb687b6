#include "tc/world/world.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tc {

std::string_view to_string(ObjectKind k) {
  switch (k) {
    case ObjectKind::Target: return "target";
    case ObjectKind::Container: return "container";
    case ObjectKind::Furniture: return "furniture";
    case ObjectKind::Clutter: return "clutter";
  }
  return "?";
}

std::string_view to_string(MassClass m) { return m == MassClass::Light ? "light" : "heavy"; }

std::optional<ObjectKind> object_kind_from_string(std::string_view s) {
  if (s == "target") return ObjectKind::Target;
  if (s == "container") return ObjectKind::Container;
  if (s == "furniture") return ObjectKind::Furniture;
  if (s == "clutter") return ObjectKind::Clutter;
  return std::nullopt;
}

std::optional<MassClass> mass_class_from_string(std::string_view s) {
  if (s == "light") return MassClass::Light;
  if (s == "heavy") return MassClass::Heavy;
  return std::nullopt;
}

bool is_goal_category(std::string_view category) {
  return std::find(kGoalCategories.begin(), kGoalCategories.end(), category) != kGoalCategories.end();
}

bool GoalZone::contains(Cell c) const { return std::binary_search(zone_cells.begin(), zone_cells.end(), c); }

int AgentState::held_count() const {
  return static_cast<int>(std::count_if(arm_slots.begin(), arm_slots.end(), [](const auto& s) { return s.has_value(); }));
}

bool AgentState::holds(int id) const {
  return std::any_of(arm_slots.begin(), arm_slots.end(), [id](const auto& s) { return s && *s == id; });
}

std::optional<std::size_t> AgentState::free_slot() const {
  for (std::size_t i = 0; i < arm_slots.size(); ++i)
    if (!arm_slots[i]) return i;
  return std::nullopt;
}

int TaskSpec::total_required() const {
  int n = 0;
  for (const auto& [category, count] : required) n += count;
  return n;
}

World::World(std::string scene_id, SceneGrid grid, std::vector<ObjectInstance> objects, AgentState agent)
    : scene_id_(std::move(scene_id)), grid_(std::move(grid)), objects_(std::move(objects)), agent_(agent) {
  for (std::size_t i = 0; i < objects_.size(); ++i) {
    if (objects_[i].id != static_cast<int>(i)) throw std::invalid_argument("World: object ids must be dense 0..n-1");
  }
  rebuild_obstacle_cache();
}

const ObjectInstance& World::object(int id) const {
  if (!has_object(id)) throw std::invalid_argument("unknown object id " + std::to_string(id));
  return objects_[static_cast<std::size_t>(id)];
}

ObjectInstance& World::object(int id) {
  if (!has_object(id)) throw std::invalid_argument("unknown object id " + std::to_string(id));
  return objects_[static_cast<std::size_t>(id)];
}

int World::add_object(ObjectInstance obj) {
  obj.id = static_cast<int>(objects_.size());
  objects_.push_back(std::move(obj));
  if (objects_.back().mass == MassClass::Heavy) rebuild_obstacle_cache();
  return objects_.back().id;
}

void World::rebuild_obstacle_cache() {
  heavy_object_mask_.assign(grid_.cell_count(), 0);
  for (const auto& o : objects_) {
    if (o.mass != MassClass::Heavy || !o.resting) continue;
    if (o.footprint) {
      for (int y = o.footprint->y0; y < o.footprint->y1; ++y)
        for (int x = o.footprint->x0; x < o.footprint->x1; ++x)
          if (grid_.in_bounds({x, y})) heavy_object_mask_[grid_.index({x, y})] = 1;
    } else {
      const Cell c = to_cell(o.pose);
      if (grid_.in_bounds(c)) heavy_object_mask_[grid_.index(c)] = 1;
    }
  }
}

bool World::is_traversable(Cell c) const {
  if (grid_.terrain(c) != Terrain::Free) return false;
  return heavy_object_mask_[grid_.index(c)] == 0;
}

bool World::is_opaque(Cell c) const {
  if (!grid_.in_bounds(c)) return false;
  const Terrain t = grid_.terrain_unchecked(c);
  if (t == Terrain::OccupiedHeavy || t == Terrain::Furniture) return true;
  return heavy_object_mask_[grid_.index(c)] != 0;
}

bool World::is_heavy_obstacle(Cell c) const { return is_opaque(c); }

bool World::is_transported(int id) const {
  const auto& o = object(id);
  if (o.kind != ObjectKind::Target || !o.resting) return false;
  const Cell c = to_cell(o.pose);
  return grid_.in_bounds(c) && goal_.contains(c);
}

int World::transported_count() const {
  int n = 0;
  for (const auto& o : objects_)
    if (o.kind == ObjectKind::Target && is_transported(o.id)) ++n;
  return n;
}

std::vector<int> World::container_contents(int container_id) const {
  std::vector<int> out;
  for (const auto& o : objects_)
    if (o.contained_in && *o.contained_in == container_id) out.push_back(o.id);
  return out;
}

std::vector<int> World::carried_objects() const {
  std::vector<int> out;
  for (const auto& slot : agent_.arm_slots) {
    if (!slot) continue;
    out.push_back(*slot);
    for (int id : container_contents(*slot)) out.push_back(id);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::uint8_t> ground_truth_occupancy(const World& world) {
  const auto& g = world.grid();
  std::vector<std::uint8_t> occ(g.cell_count(), 0);
  for (std::size_t i = 0; i < occ.size(); ++i) occ[i] = world.is_traversable(g.cell_at(i)) ? 0 : 1;
  return occ;
}

GoalZone make_goal_zone(const World& world, int furniture_id, double radius_m) {
  const auto& furniture = world.object(furniture_id);
  if (furniture.kind != ObjectKind::Furniture || !furniture.footprint) {
    throw std::invalid_argument("goal object must be furniture with a footprint");
  }
  const CellRect fp = *furniture.footprint;
  const auto& g = world.grid();
  // Furniture rooms are identified through any adjacent room cell.
  int room = -1;
  for (int y = fp.y0 - 1; y <= fp.y1 && room < 0; ++y)
    for (int x = fp.x0 - 1; x <= fp.x1 && room < 0; ++x) room = g.room_of({x, y});

  GoalZone zone;
  zone.furniture_id = furniture_id;
  zone.furniture_category = furniture.category;
  zone.radius_m = radius_m;
  const int reach = static_cast<int>(std::ceil(radius_m / kCellSize));
  for (int y = fp.y0 - reach; y < fp.y1 + reach; ++y) {
    for (int x = fp.x0 - reach; x < fp.x1 + reach; ++x) {
      const Cell c{x, y};
      if (!g.in_bounds(c)) continue;
      const bool on_footprint = fp.contains(c);
      if (!on_footprint && room >= 0 && g.room_of(c) != room) continue;
      const int nx = std::clamp(x, fp.x0, fp.x1 - 1);
      const int ny = std::clamp(y, fp.y0, fp.y1 - 1);
      if (cell_distance(c, {nx, ny}) <= radius_m + 1e-9) zone.zone_cells.push_back(c);
    }
  }
  std::sort(zone.zone_cells.begin(), zone.zone_cells.end());
  return zone;
}

std::optional<std::string> check_world_invariants(const World& world, int container_capacity) {
  const auto& objs = world.objects();
  const auto& agent = world.agent();
  auto fail = [](std::string msg) { return std::optional<std::string>(std::move(msg)); };

  if (agent.arm_slots[0] && agent.arm_slots[1] && *agent.arm_slots[0] == *agent.arm_slots[1])
    return fail("same object in both arm slots");
  for (const auto& slot : agent.arm_slots) {
    if (!slot) continue;
    if (!world.has_object(*slot)) return fail("arm slot holds unknown id");
    const auto& o = world.object(*slot);
    if (o.contained_in) return fail("held object " + std::to_string(o.id) + " is also contained");
    if (o.resting) return fail("held object " + std::to_string(o.id) + " marked resting");
    if (!o.is_grabbable()) return fail("held object " + std::to_string(o.id) + " is heavy");
  }

  for (const auto& o : objs) {
    const std::string tag = "object " + std::to_string(o.id) + ": ";
    if (o.kind == ObjectKind::Furniture && o.mass != MassClass::Heavy) return fail(tag + "furniture must be heavy");
    if ((o.kind == ObjectKind::Target || o.kind == ObjectKind::Container) && o.mass != MassClass::Light)
      return fail(tag + "targets and containers must be light");
    if (o.contained_in) {
      if (o.kind != ObjectKind::Target) return fail(tag + "only targets can be contained");
      if (!world.has_object(*o.contained_in)) return fail(tag + "contained in unknown id");
      const auto& c = world.object(*o.contained_in);
      if (c.kind != ObjectKind::Container) return fail(tag + "contained in a non-container");
      if (c.contained_in) return fail(tag + "nested containment");
      if (o.pose != c.pose) return fail(tag + "pose differs from its container");
      if (o.resting) return fail(tag + "contained object marked resting");
    }
    const bool held = agent.holds(o.id);
    if (!held && !o.contained_in && !o.resting) return fail(tag + "neither resting, held nor contained");
    if (held && o.pose != agent.pose) return fail(tag + "held object does not follow the agent");
    if (o.resting && !world.grid().contains(o.pose)) return fail(tag + "resting outside the scene");
  }

  for (const auto& o : objs) {
    if (o.kind != ObjectKind::Container) continue;
    if (static_cast<int>(world.container_contents(o.id).size()) > container_capacity)
      return fail("container " + std::to_string(o.id) + " over capacity");
  }
  return std::nullopt;
}

}  // namespace tc
