#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tc/sim/observation.hpp"
#include "tc/world/geometry.hpp"

namespace tc {

// Agent-side 2 x N x N occupancy estimate. Channel 0 holds the probability a
// cell is occupied, channel 1 the probability it has been explored. The agent
// start cell maps to (N/2, N/2). With oracle perception updates are binary.
class OccupancyMap {
 public:
  OccupancyMap(int size, Cell world_origin, double occupied_threshold = 0.5);

  int size() const { return size_; }
  double occupied_threshold() const { return threshold_; }
  Cell world_origin() const { return origin_; }

  bool in_bounds(Cell m) const { return m.x >= 0 && m.y >= 0 && m.x < size_ && m.y < size_; }
  std::size_t index(Cell m) const { return static_cast<std::size_t>(m.y) * size_ + m.x; }
  Cell to_map(Cell world) const { return {world.x - origin_.x + size_ / 2, world.y - origin_.y + size_ / 2}; }
  Cell to_world(Cell map) const { return {map.x + origin_.x - size_ / 2, map.y + origin_.y - size_ / 2}; }
  Cell map_cell(Vec2 world_pose) const { return to_map(to_cell(world_pose)); }
  Vec2 world_center(Cell map) const { return cell_center(to_world(map)); }

  float occupied(Cell m) const { return occupied_[index(m)]; }
  float explored(Cell m) const { return explored_[index(m)]; }
  bool is_explored(Cell m) const { return explored_[index(m)] >= 0.5f; }
  bool is_occupied(Cell m) const { return occupied_[index(m)] >= threshold_; }
  bool is_known_free(Cell m) const { return is_explored(m) && !is_occupied(m); }

  // Records one perceived cell; ignored outside the map.
  void record(Cell m, bool occupied);

  std::span<const float> occupied_channel() const { return occupied_; }
  std::span<const float> explored_channel() const { return explored_; }
  int explored_count() const { return explored_count_; }

 private:
  int size_;
  Cell origin_;
  double threshold_;
  std::vector<float> occupied_;
  std::vector<float> explored_;
  int explored_count_ = 0;
};

enum class SemanticChannel : int { Target = 0, Container = 1, Goal = 2 };

struct KnownObject {
  int id = 0;
  std::string category;
  ObjectKind kind = ObjectKind::Target;
  Vec2 pose;
  Cell cell;  // map frame
  bool transported = false;
  bool contained = false;  // inside a container resting on the floor
};

// Agent-side 3 x N x N semantic flags plus the registry of detected objects
// backing them, so planners can address objects by id.
class SemanticMap {
 public:
  explicit SemanticMap(int size);

  int size() const { return size_; }
  std::uint8_t at(SemanticChannel ch, Cell m) const;
  std::span<const std::uint8_t> channel(SemanticChannel ch) const;

  const std::map<int, KnownObject>& known() const { return known_; }
  const KnownObject* find(int id) const;
  const std::vector<Cell>& goal_cells() const { return goal_cells_; }
  bool goal_known() const { return !goal_cells_.empty(); }

 private:
  friend class AgentMaps;
  void stamp(SemanticChannel ch, Cell m, std::uint8_t v);

  int size_;
  std::vector<std::uint8_t> data_;
  std::map<int, KnownObject> known_;
  std::vector<Cell> goal_cells_;
};

// The pair of maps an agent accumulates over an episode.
class AgentMaps {
 public:
  AgentMaps(int size, Vec2 start_pose, std::string goal_category, double occupied_threshold = 0.5);

  // Every visible cell becomes explored with its occupancy flag; detections
  // stamp the semantic channels; held objects and objects missing from a
  // visible cell are dropped from the registry; objects resting in the goal
  // zone are kept but cleared from the target channel.
  void integrate(const Observation& obs);

  const OccupancyMap& occupancy() const { return occupancy_; }
  const SemanticMap& semantic() const { return semantic_; }
  const std::string& goal_category() const { return goal_category_; }

 private:
  OccupancyMap occupancy_;
  SemanticMap semantic_;
  std::string goal_category_;
};

// Explored free cells 4-adjacent to at least one unexplored in-map cell.
// Returned in scan order.
std::vector<Cell> frontier_cells(const OccupancyMap& map);
bool is_frontier(const OccupancyMap& map, Cell m);

}  // namespace tc
