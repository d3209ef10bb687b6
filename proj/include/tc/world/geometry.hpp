#pragma once

#include <cmath>
#include <compare>
#include <cstddef>
#include <functional>
#include <limits>
#include <vector>

namespace tc {

// Side length of one grid cell in meters.
inline constexpr double kCellSize = 0.25;

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  bool operator==(const Vec2&) const = default;
};

double norm(Vec2 v);
double distance(Vec2 a, Vec2 b);

// Integer grid coordinate. Ordered row-major (y, then x) so that sorted cell
// lists come out in scan order.
struct Cell {
  int x = 0;
  int y = 0;

  bool operator==(const Cell&) const = default;
  std::strong_ordering operator<=>(const Cell& o) const {
    if (auto c = y <=> o.y; c != 0) return c;
    return x <=> o.x;
  }
  Cell operator+(Cell o) const { return {x + o.x, y + o.y}; }
  Cell operator-(Cell o) const { return {x - o.x, y - o.y}; }
};

// Half-open rectangle of cells [x0, x1) x [y0, y1).
struct CellRect {
  int x0 = 0;
  int y0 = 0;
  int x1 = 0;
  int y1 = 0;

  bool operator==(const CellRect&) const = default;
  int width() const { return x1 - x0; }
  int height() const { return y1 - y0; }
  int area() const { return width() * height(); }
  bool contains(Cell c) const { return c.x >= x0 && c.x < x1 && c.y >= y0 && c.y < y1; }
  Vec2 center() const;
};

// Cell containing `p` with half-open intervals [k * 0.25, (k + 1) * 0.25).
// No bounds checking; see SceneGrid::footprint_cell for the checked form.
Cell to_cell(Vec2 p);
Vec2 cell_center(Cell c);

// Chebyshev/octile helpers.
double cell_distance(Cell a, Cell b);

// Headings are degrees counter-clockwise from +x, normalized to [0, 360).
double normalize_degrees(double deg);
double bearing_degrees(Vec2 from, Vec2 to);
// Smallest signed rotation taking `from` onto `to`, in (-180, 180].
double signed_angle_diff(double from_deg, double to_deg);
Vec2 heading_vector(double deg);

// Every cell whose closed square intersects the closed segment [a, b]. When
// the segment passes exactly through a cell corner both side cells are
// included, so the result is a conservative swept set.
std::vector<Cell> supercover(Vec2 a, Vec2 b);

// Visits supercover cells in order; stops early when `visit` returns false.
// Returns false iff stopped early. Corner crossings visit both side cells,
// so a cell may be followed by a diagonal neighbor's two side cells.
template <typename Visit>
bool for_each_supercover_cell(Vec2 a, Vec2 b, Visit&& visit) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  constexpr double kTie = 1e-12;

  Cell c = to_cell(a);
  const Cell end = to_cell(b);
  const double dx = b.x - a.x;
  const double dy = b.y - a.y;
  const int step_x = dx > 0 ? 1 : (dx < 0 ? -1 : 0);
  const int step_y = dy > 0 ? 1 : (dy < 0 ? -1 : 0);
  const double delta_x = step_x != 0 ? kCellSize / std::abs(dx) : kInf;
  const double delta_y = step_y != 0 ? kCellSize / std::abs(dy) : kInf;
  double t_max_x = kInf;
  double t_max_y = kInf;
  if (step_x > 0) t_max_x = ((c.x + 1) * kCellSize - a.x) / dx;
  if (step_x < 0) t_max_x = (c.x * kCellSize - a.x) / dx;
  if (step_y > 0) t_max_y = ((c.y + 1) * kCellSize - a.y) / dy;
  if (step_y < 0) t_max_y = (c.y * kCellSize - a.y) / dy;

  const int max_iter = std::abs(end.x - c.x) + std::abs(end.y - c.y) + 4;
  if (!visit(c)) return false;
  for (int i = 0; i < max_iter && c != end; ++i) {
    if (std::abs(t_max_x - t_max_y) <= kTie) {
      if (t_max_x > 1.0) break;
      if (!visit(Cell{c.x + step_x, c.y})) return false;
      if (!visit(Cell{c.x, c.y + step_y})) return false;
      c.x += step_x;
      c.y += step_y;
      t_max_x += delta_x;
      t_max_y += delta_y;
    } else if (t_max_x < t_max_y) {
      if (t_max_x > 1.0) break;
      c.x += step_x;
      t_max_x += delta_x;
    } else {
      if (t_max_y > 1.0) break;
      c.y += step_y;
      t_max_y += delta_y;
    }
    if (!visit(c)) return false;
  }
  return true;
}

}  // namespace tc

template <>
struct std::hash<tc::Cell> {
  std::size_t operator()(const tc::Cell& c) const noexcept {
    return std::hash<long long>()((static_cast<long long>(c.x) << 32) ^ static_cast<unsigned>(c.y));
  }
};
