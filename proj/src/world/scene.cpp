#include "tc/world/scene.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace tc {

std::string_view to_string(Terrain t) {
  switch (t) {
    case Terrain::Free: return "free";
    case Terrain::OccupiedHeavy: return "occupied_heavy";
    case Terrain::OccupiedLight: return "occupied_light";
    case Terrain::Furniture: return "furniture";
  }
  return "?";
}

SceneGrid::SceneGrid(int width, int height, Terrain fill)
    : width_(width), height_(height) {
  if (width <= 0 || height <= 0) throw std::invalid_argument("SceneGrid: dimensions must be positive");
  terrain_.assign(static_cast<std::size_t>(width) * height, fill);
  room_index_.assign(terrain_.size(), -1);
}

bool SceneGrid::contains(Vec2 p) const {
  return p.x >= 0.0 && p.y >= 0.0 && p.x < width_ * kCellSize && p.y < height_ * kCellSize;
}

Cell SceneGrid::cell_at(std::size_t i) const {
  return {static_cast<int>(i % static_cast<std::size_t>(width_)),
          static_cast<int>(i / static_cast<std::size_t>(width_))};
}

Cell SceneGrid::footprint_cell(Vec2 pose) const {
  if (!contains(pose)) {
    throw std::out_of_range("pose (" + std::to_string(pose.x) + ", " + std::to_string(pose.y) +
                            ") outside scene bounds");
  }
  return to_cell(pose);
}

Terrain SceneGrid::terrain(Cell c) const {
  if (!in_bounds(c)) {
    throw std::out_of_range("cell (" + std::to_string(c.x) + ", " + std::to_string(c.y) + ") outside scene");
  }
  return terrain_[index(c)];
}

void SceneGrid::set_terrain(Cell c, Terrain t) {
  if (!in_bounds(c)) throw std::out_of_range("set_terrain: cell outside scene");
  terrain_[index(c)] = t;
}

void SceneGrid::fill(const CellRect& r, Terrain t) {
  for (int y = r.y0; y < r.y1; ++y)
    for (int x = r.x0; x < r.x1; ++x) set_terrain({x, y}, t);
}

int SceneGrid::room_of(Cell c) const {
  if (!in_bounds(c)) return -1;
  const int i = room_index_[index(c)];
  return i < 0 ? -1 : rooms_[static_cast<std::size_t>(i)].id;
}

void SceneGrid::add_room(RoomRegion room) {
  const int slot = static_cast<int>(rooms_.size());
  for (Cell c : room.cells) {
    if (!in_bounds(c)) throw std::invalid_argument("add_room: cell outside scene");
    if (room_index_[index(c)] >= 0) throw std::invalid_argument("add_room: rooms overlap");
  }
  for (const auto& r : rooms_)
    if (r.id == room.id) throw std::invalid_argument("add_room: duplicate room id");
  for (Cell c : room.cells) room_index_[index(c)] = slot;
  rooms_.push_back(std::move(room));
}

const RoomRegion& SceneGrid::room(int id) const {
  for (const auto& r : rooms_)
    if (r.id == id) return r;
  throw std::out_of_range("no room with id " + std::to_string(id));
}

void SceneGrid::add_doorway(Cell c) {
  if (!in_bounds(c)) throw std::invalid_argument("add_doorway: cell outside scene");
  if (!is_doorway(c)) doorways_.push_back(c);
}

bool SceneGrid::is_doorway(Cell c) const {
  return std::find(doorways_.begin(), doorways_.end(), c) != doorways_.end();
}

}  // namespace tc
