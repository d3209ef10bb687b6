#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "tc/world/geometry.hpp"

namespace tc {

enum class Terrain : std::uint8_t { Free, OccupiedHeavy, OccupiedLight, Furniture };

std::string_view to_string(Terrain t);

struct RoomRegion {
  int id = 0;
  std::vector<Cell> cells;
};

// Static geometry of a house: a width x height grid of terrain tags, the room
// partition and the doorway cells that connect rooms.
class SceneGrid {
 public:
  SceneGrid() = default;
  SceneGrid(int width, int height, Terrain fill = Terrain::Free);

  int width() const { return width_; }
  int height() const { return height_; }
  double cell_size() const { return kCellSize; }
  std::size_t cell_count() const { return terrain_.size(); }

  bool in_bounds(Cell c) const { return c.x >= 0 && c.y >= 0 && c.x < width_ && c.y < height_; }
  bool contains(Vec2 p) const;
  std::size_t index(Cell c) const { return static_cast<std::size_t>(c.y) * width_ + c.x; }
  Cell cell_at(std::size_t index) const;

  // Throws std::out_of_range for poses outside the scene.
  Cell footprint_cell(Vec2 pose) const;

  // Throws std::out_of_range for cells outside the scene.
  Terrain terrain(Cell c) const;
  Terrain terrain_unchecked(Cell c) const { return terrain_[index(c)]; }
  void set_terrain(Cell c, Terrain t);
  void fill(const CellRect& r, Terrain t);
  std::span<const Terrain> terrain_cells() const { return terrain_; }

  // Room membership; -1 for cells outside every room (walls, doorways).
  int room_of(Cell c) const;
  const std::vector<RoomRegion>& rooms() const { return rooms_; }
  // Throws std::invalid_argument if any cell already belongs to a room.
  void add_room(RoomRegion room);
  const RoomRegion& room(int id) const;

  const std::vector<Cell>& doorways() const { return doorways_; }
  void add_doorway(Cell c);
  bool is_doorway(Cell c) const;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<Terrain> terrain_;
  std::vector<int> room_index_;
  std::vector<RoomRegion> rooms_;
  std::vector<Cell> doorways_;
};

}  // namespace tc
