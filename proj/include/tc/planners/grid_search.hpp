#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "tc/world/geometry.hpp"

namespace tc {

class OccupancyMap;
class World;

// Binary traversability grid the low-level planner searches over.
struct PlanningGrid {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> blocked;  // row-major, 1 = impassable

  PlanningGrid() = default;
  PlanningGrid(int w, int h) : width(w), height(h), blocked(static_cast<std::size_t>(w) * h, 0) {}

  bool in_bounds(Cell c) const { return c.x >= 0 && c.y >= 0 && c.x < width && c.y < height; }
  std::size_t index(Cell c) const { return static_cast<std::size_t>(c.y) * width + c.x; }
  bool passable(Cell c) const { return in_bounds(c) && blocked[index(c)] == 0; }
  void set_blocked(Cell c, bool b) { blocked[index(c)] = b ? 1 : 0; }
};

// Cells marked occupied are blocked; unexplored cells are passable.
PlanningGrid planning_grid(const OccupancyMap& map);
// Ground-truth traversability in world coordinates.
PlanningGrid planning_grid(const World& world);

struct GridPath {
  std::vector<Cell> cells;  // start first, goal last
  int straight_moves = 0;
  int diagonal_moves = 0;

  double cost() const;
};

// Cost of a straight move is 1, of a diagonal move sqrt(2).
double octile_distance(Cell a, Cell b);

// 8-connected A* with the octile heuristic. A diagonal move is allowed only
// when both orthogonal cells it passes between are passable. Ties on f are
// broken by smaller h, then by smaller cell index. The start cell itself is
// not required to be passable. Returns nullopt if the goal is blocked or
// unreachable.
std::optional<GridPath> astar(const PlanningGrid& grid, Cell start, Cell goal);

// Shortest-path costs from `source` to every cell under the same move rules
// (negative for unreachable cells).
std::vector<double> cost_field(const PlanningGrid& grid, Cell source);

}  // namespace tc
