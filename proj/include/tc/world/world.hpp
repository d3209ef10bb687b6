#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tc/world/geometry.hpp"
#include "tc/world/scene.hpp"

namespace tc {

enum class ObjectKind : std::uint8_t { Target, Container, Furniture, Clutter };
enum class MassClass : std::uint8_t { Light, Heavy };

std::string_view to_string(ObjectKind k);
std::string_view to_string(MassClass m);
std::optional<ObjectKind> object_kind_from_string(std::string_view s);
std::optional<MassClass> mass_class_from_string(std::string_view s);

// Furniture categories that may serve as the goal position.
inline constexpr std::array<std::string_view, 5> kGoalCategories = {"sofa", "bench", "table", "coffee_table",
                                                                    "bed"};
bool is_goal_category(std::string_view category);

struct ObjectInstance {
  int id = 0;
  std::string category;
  ObjectKind kind = ObjectKind::Target;
  Vec2 pose;
  MassClass mass = MassClass::Light;
  std::optional<int> contained_in;
  // True iff the object lies on the floor: not held and not inside a container.
  bool resting = true;
  // Cells covered by multi-cell objects (furniture); point objects have none.
  std::optional<CellRect> footprint;

  bool is_grabbable() const { return mass == MassClass::Light; }
};

struct GoalZone {
  int furniture_id = -1;
  std::string furniture_category;
  double radius_m = 1.0;
  std::vector<Cell> zone_cells;  // sorted

  bool contains(Cell c) const;
};

struct AgentState {
  Vec2 pose;
  double heading_deg = 0.0;
  std::array<std::optional<int>, 2> arm_slots;
  int steps_charged = 0;
  bool collided_last_action = false;

  int held_count() const;
  bool holds(int id) const;
  std::optional<std::size_t> free_slot() const;
};

struct TaskSpec {
  std::map<std::string, int> required;
  std::string goal_category;
  int budget = 1000;
  std::uint64_t seed = 0;

  int total_required() const;
};

// Ground truth of one episode: geometry, objects, goal zone and agent.
// Object ids are dense: objects[i].id == i.
class World {
 public:
  World() = default;
  World(std::string scene_id, SceneGrid grid, std::vector<ObjectInstance> objects, AgentState agent);

  const std::string& scene_id() const { return scene_id_; }
  const SceneGrid& grid() const { return grid_; }
  const std::vector<ObjectInstance>& objects() const { return objects_; }
  const GoalZone& goal() const { return goal_; }
  const AgentState& agent() const { return agent_; }
  AgentState& agent() { return agent_; }

  // Throws std::invalid_argument for unknown ids.
  const ObjectInstance& object(int id) const;
  ObjectInstance& object(int id);
  bool has_object(int id) const { return id >= 0 && id < static_cast<int>(objects_.size()); }

  // Adds an object, assigning the next dense id. Returns the id.
  int add_object(ObjectInstance obj);
  void set_goal(GoalZone goal) { goal_ = std::move(goal); }

  Cell footprint_cell(Vec2 pose) const { return grid_.footprint_cell(pose); }

  // True iff the terrain is Free and no resting heavy object or furniture
  // covers the cell. Throws std::out_of_range outside the scene.
  bool is_traversable(Cell c) const;
  // Blocks sight lines: walls, furniture and heavy objects. Low light clutter
  // (OccupiedLight) obstructs motion but not vision. False outside the scene.
  bool is_opaque(Cell c) const;
  // Obstacles that cause a heavy collision when bumped.
  bool is_heavy_obstacle(Cell c) const;

  bool in_goal_zone(Cell c) const { return goal_.contains(c); }
  bool is_transported(int id) const;
  int transported_count() const;
  std::vector<int> container_contents(int container_id) const;
  // Objects held directly or through a held container.
  std::vector<int> carried_objects() const;

  // Must be called after heavy objects are added or moved.
  void rebuild_obstacle_cache();

 private:
  std::string scene_id_;
  SceneGrid grid_;
  std::vector<ObjectInstance> objects_;
  GoalZone goal_;
  AgentState agent_;
  std::vector<std::uint8_t> heavy_object_mask_;
};

// 1 where a cell is not traversable, 0 elsewhere; row-major over the grid.
std::vector<std::uint8_t> ground_truth_occupancy(const World& world);

// Cells of the furniture's room (plus its footprint) whose centers lie within
// `radius_m` of a footprint cell center.
GoalZone make_goal_zone(const World& world, int furniture_id, double radius_m);

// Checks every world-model invariant; returns a description of the first
// violation, or nullopt when consistent.
std::optional<std::string> check_world_invariants(const World& world, int container_capacity);

}  // namespace tc
