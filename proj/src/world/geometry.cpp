#include "tc/world/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace tc {

double norm(Vec2 v) { return std::hypot(v.x, v.y); }
double distance(Vec2 a, Vec2 b) { return norm(a - b); }

Vec2 CellRect::center() const {
  return {0.5 * (x0 + x1) * kCellSize, 0.5 * (y0 + y1) * kCellSize};
}

Cell to_cell(Vec2 p) {
  return {static_cast<int>(std::floor(p.x / kCellSize)), static_cast<int>(std::floor(p.y / kCellSize))};
}

Vec2 cell_center(Cell c) { return {(c.x + 0.5) * kCellSize, (c.y + 0.5) * kCellSize}; }

double cell_distance(Cell a, Cell b) { return distance(cell_center(a), cell_center(b)); }

double normalize_degrees(double deg) {
  double d = std::fmod(deg, 360.0);
  if (d < 0.0) d += 360.0;
  if (d >= 360.0) d -= 360.0;
  return d;
}

double bearing_degrees(Vec2 from, Vec2 to) {
  const Vec2 d = to - from;
  return normalize_degrees(std::atan2(d.y, d.x) * 180.0 / std::numbers::pi);
}

double signed_angle_diff(double from_deg, double to_deg) {
  double d = normalize_degrees(to_deg - from_deg);
  if (d > 180.0) d -= 360.0;
  return d;
}

Vec2 heading_vector(double deg) {
  const double r = deg * std::numbers::pi / 180.0;
  return {std::cos(r), std::sin(r)};
}

std::vector<Cell> supercover(Vec2 a, Vec2 b) {
  std::vector<Cell> out;
  for_each_supercover_cell(a, b, [&](Cell c) {
    if (out.empty() || out.back() != c) out.push_back(c);
    return true;
  });
  return out;
}

}  // namespace tc
