#pragma once

#include <string>
#include <vector>

#include "tc/world/world.hpp"

namespace tc::testing {

// Small hand-drawn scenes. The first row is the top of the map (largest y).
//   '#' wall (OccupiedHeavy)    'l' low clutter (OccupiedLight)
//   '.' free                    'H' heavy clutter object on a free cell
//   'G' goal furniture cells    'F' other furniture cells (one block)
//   'T' target                  'C' container (basket)
//   '@' agent spawn
// Every non-wall cell belongs to room 0. Targets cycle through the target
// categories in scan order (top row first).
struct AsciiScene {
  World world;
  TaskSpec spec;
};

AsciiScene ascii_scene(const std::vector<std::string>& rows, double heading_deg = 0.0,
                       const std::string& goal_category = "sofa", double goal_radius_m = 1.0);

}  // namespace tc::testing
