#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tc/world/world.hpp"

namespace tc {

class GenerationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct HouseParams {
  int width = 40;
  int height = 40;
  int min_rooms = 6;
  int max_rooms = 8;
  int min_room_side = 6;
  int door_width = 2;
  double extra_door_probability = 0.2;
  double min_free_fraction = 0.5;
  // Side of the agent-centered map; the house must fit with the agent
  // spawned anywhere inside it.
  int map_size = 128;
  int max_retries = 100;
};

// Builds a house by binary space partition: rooms separated by one-cell heavy
// walls, doorways carved along a random spanning tree of adjacent rooms (plus
// occasional extra doors), furniture blocks against walls, and a little heavy
// and low clutter. The result has no targets, containers, goal or spawn yet.
//
// Throws GenerationError if the parameters cannot be satisfied within
// `max_retries` attempts or the house would not fit in the agent map.
World generate_house(std::uint64_t seed, const HouseParams& params = {}, const std::string& scene_id = "house");

// True iff a flood fill over traversable cells from the first room reaches
// every room.
bool rooms_connected(const World& world);

// Cells reachable from `start` through traversable 4-neighbors.
std::vector<std::uint8_t> reachable_mask(const World& world, Cell start);

// Structural checks on a generated house: room count, disjointness,
// connectivity, free fraction and goal-candidate availability.
std::optional<std::string> check_house(const World& world, const HouseParams& params);

}  // namespace tc
