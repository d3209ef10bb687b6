#include "tc/planners/grid_search.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <tuple>

#include "tc/mapping/maps.hpp"
#include "tc/world/world.hpp"

namespace tc {
namespace {

struct Move {
  Cell delta;
  bool diagonal;
};

constexpr std::array<Move, 8> kMoves{{
    {{1, 0}, false},
    {{-1, 0}, false},
    {{0, 1}, false},
    {{0, -1}, false},
    {{1, 1}, true},
    {{1, -1}, true},
    {{-1, 1}, true},
    {{-1, -1}, true},
}};

bool can_step(const PlanningGrid& g, Cell from, const Move& m) {
  const Cell to = from + m.delta;
  if (!g.passable(to)) return false;
  if (!m.diagonal) return true;
  return g.passable({from.x + m.delta.x, from.y}) && g.passable({from.x, from.y + m.delta.y});
}

}  // namespace

PlanningGrid planning_grid(const OccupancyMap& map) {
  PlanningGrid g(map.size(), map.size());
  for (int y = 0; y < map.size(); ++y)
    for (int x = 0; x < map.size(); ++x) g.set_blocked({x, y}, map.is_occupied({x, y}));
  return g;
}

PlanningGrid planning_grid(const World& world) {
  const auto& s = world.grid();
  PlanningGrid g(s.width(), s.height());
  for (std::size_t i = 0; i < s.cell_count(); ++i) g.blocked[i] = world.is_traversable(s.cell_at(i)) ? 0 : 1;
  return g;
}

double GridPath::cost() const { return straight_moves + std::numbers::sqrt2 * diagonal_moves; }

double octile_distance(Cell a, Cell b) {
  const int dx = std::abs(a.x - b.x);
  const int dy = std::abs(a.y - b.y);
  const int diag = std::min(dx, dy);
  return (dx + dy - 2 * diag) + std::numbers::sqrt2 * diag;
}

std::optional<GridPath> astar(const PlanningGrid& grid, Cell start, Cell goal) {
  if (!grid.in_bounds(start) || !grid.passable(goal)) return std::nullopt;
  if (start == goal) return GridPath{{start}, 0, 0};

  const std::size_t n = grid.blocked.size();
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> g_cost(n, kInf);
  std::vector<std::int32_t> parent(n, -1);
  std::vector<std::uint8_t> closed(n, 0);

  // (f, h, index): lexicographic ordering makes expansion order deterministic.
  using Entry = std::tuple<double, double, std::size_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;
  const std::size_t s = grid.index(start);
  const std::size_t t = grid.index(goal);
  g_cost[s] = 0.0;
  const double h0 = octile_distance(start, goal);
  open.emplace(h0, h0, s);

  while (!open.empty()) {
    const auto [f, h, i] = open.top();
    open.pop();
    if (closed[i]) continue;
    closed[i] = 1;
    if (i == t) break;
    const Cell c{static_cast<int>(i % grid.width), static_cast<int>(i / grid.width)};
    for (const auto& m : kMoves) {
      if (!can_step(grid, c, m)) continue;
      const Cell nc = c + m.delta;
      const std::size_t ni = grid.index(nc);
      if (closed[ni]) continue;
      const double ng = g_cost[i] + (m.diagonal ? std::numbers::sqrt2 : 1.0);
      if (ng < g_cost[ni]) {
        g_cost[ni] = ng;
        parent[ni] = static_cast<std::int32_t>(i);
        const double nh = octile_distance(nc, goal);
        open.emplace(ng + nh, nh, ni);
      }
    }
  }
  if (!closed[t]) return std::nullopt;

  GridPath path;
  for (std::int64_t i = static_cast<std::int64_t>(t); i >= 0; i = parent[static_cast<std::size_t>(i)]) {
    path.cells.push_back({static_cast<int>(i % grid.width), static_cast<int>(i / grid.width)});
    if (static_cast<std::size_t>(i) == s) break;
  }
  std::reverse(path.cells.begin(), path.cells.end());
  for (std::size_t k = 1; k < path.cells.size(); ++k) {
    const Cell d = path.cells[k] - path.cells[k - 1];
    if (d.x != 0 && d.y != 0) ++path.diagonal_moves;
    else ++path.straight_moves;
  }
  return path;
}

std::vector<double> cost_field(const PlanningGrid& grid, Cell source) {
  std::vector<double> dist(grid.blocked.size(), -1.0);
  if (!grid.in_bounds(source)) return dist;
  using Entry = std::pair<double, std::size_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;
  std::vector<double> best(grid.blocked.size(), std::numeric_limits<double>::infinity());
  best[grid.index(source)] = 0.0;
  open.emplace(0.0, grid.index(source));
  while (!open.empty()) {
    const auto [d, i] = open.top();
    open.pop();
    if (dist[i] >= 0.0) continue;
    dist[i] = d;
    const Cell c{static_cast<int>(i % grid.width), static_cast<int>(i / grid.width)};
    for (const auto& m : kMoves) {
      if (!can_step(grid, c, m)) continue;
      const std::size_t ni = grid.index(c + m.delta);
      const double nd = d + (m.diagonal ? std::numbers::sqrt2 : 1.0);
      if (dist[ni] < 0.0 && nd < best[ni]) {
        best[ni] = nd;
        open.emplace(nd, ni);
      }
    }
  }
  return dist;
}

}  // namespace tc
