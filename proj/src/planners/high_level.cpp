#include "tc/planners/high_level.hpp"

namespace tc {

std::string_view to_string(SubGoalTag t) {
  switch (t) {
    case SubGoalTag::Exploration: return "exploration";
    case SubGoalTag::PickUpContainer: return "pick_up_container";
    case SubGoalTag::PickUpObject: return "pick_up_object";
    case SubGoalTag::Place: return "place";
  }
  return "?";
}

SubGoalTag high_level_step(const PlannerState& s, const HighLevelParams& p) {
  const bool late = s.steps >= p.place_fraction * s.budget;
  const bool past_pick_threshold = s.steps >= p.pick_object_fraction * s.budget;
  const int carried = s.carried();

  if (late && carried > 0) return SubGoalTag::Place;
  if (!s.holding_container && s.held_targets >= 2) return SubGoalTag::Place;
  if (p.place_when_container_full && s.holding_container && s.container_space <= 0 && s.held_targets > 0)
    return SubGoalTag::Place;
  if (p.place_when_all_carried && s.remaining_targets >= 0 && carried > 0 && carried >= s.remaining_targets)
    return SubGoalTag::Place;
  if (s.container_known && !s.holding_container && s.free_arms > 0) return SubGoalTag::PickUpContainer;
  if ((s.holding_container || past_pick_threshold) && s.target_known && s.free_arms > 0)
    return SubGoalTag::PickUpObject;
  if (s.exploration_exhausted) {
    if (s.target_known && s.free_arms > 0) return SubGoalTag::PickUpObject;
    if (carried > 0) return SubGoalTag::Place;
  }
  return SubGoalTag::Exploration;
}

}  // namespace tc
