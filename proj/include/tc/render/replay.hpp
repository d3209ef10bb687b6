#pragma once

#include <stdexcept>
#include <vector>

#include "tc/render/image.hpp"
#include "tc/sim/trace.hpp"
#include "tc/world/world.hpp"

namespace tc {

class ReplayError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RenderStyle {
  int scale = 4;  // pixels per cell
  bool show_objects = true;
  bool show_events = true;
};

// Path color of the i-th overlaid trace.
Rgb trace_color(std::size_t i);

// Top-down view: terrain, goal zone, object start (rings) and end (discs)
// positions, one colored path per trace, grasp (square) and drop (cross)
// markers. The image is width*scale by height*scale pixels with world +y up.
// Throws ReplayError when a trace was recorded on a different scene.
Image render_trajectory(const World& scene, const std::vector<Trace>& traces, const RenderStyle& style = {});

}  // namespace tc
