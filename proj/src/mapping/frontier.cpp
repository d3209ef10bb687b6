#include <array>

#include "tc/mapping/maps.hpp"

namespace tc {

bool is_frontier(const OccupancyMap& map, Cell m) {
  if (!map.in_bounds(m) || !map.is_known_free(m)) return false;
  constexpr std::array<Cell, 4> kSteps{{{1, 0}, {-1, 0}, {0, 1}, {0, -1}}};
  for (Cell d : kSteps) {
    const Cell n = m + d;
    if (map.in_bounds(n) && !map.is_explored(n)) return true;
  }
  return false;
}

std::vector<Cell> frontier_cells(const OccupancyMap& map) {
  std::vector<Cell> out;
  for (int y = 0; y < map.size(); ++y)
    for (int x = 0; x < map.size(); ++x)
      if (is_frontier(map, {x, y})) out.push_back({x, y});
  return out;
}

}  // namespace tc
