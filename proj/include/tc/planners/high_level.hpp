#pragma once

#include <optional>
#include <string_view>

#include "tc/world/geometry.hpp"

namespace tc {

enum class SubGoalTag { Exploration, PickUpContainer, PickUpObject, Place };

std::string_view to_string(SubGoalTag t);

struct SubGoal {
  SubGoalTag tag = SubGoalTag::Exploration;
  std::optional<int> object;  // PickUpContainer / PickUpObject
  std::optional<Cell> cell;   // Place: goal-zone cell; Exploration: waypoint
};

// Everything the rule-based switcher looks at.
struct PlannerState {
  int steps = 0;
  int budget = 1000;
  int held_targets = 0;       // targets in the arms
  int contained_targets = 0;  // targets inside the held container
  bool holding_container = false;
  int container_space = 0;  // free capacity of the held container
  int free_arms = 2;
  bool container_known = false;  // a graspable container is in the semantic map
  bool target_known = false;     // a graspable, untransported target is known
  bool exploration_exhausted = false;
  int remaining_targets = -1;  // untransported targets still required; -1 if unknown

  int carried() const { return held_targets + contained_targets; }
};

struct HighLevelParams {
  // Share of the budget after which known targets are picked up without a
  // container, and after which anything carried is placed.
  double pick_object_fraction = 0.2;
  double place_fraction = 0.9;
  // Two extra Place triggers beyond the four base rules.
  bool place_when_container_full = true;
  bool place_when_all_carried = true;
};

// Rule order:
//   steps >= 90% of budget and carrying a target      -> Place
//   no container held and two targets held           -> Place
//   [ext] container full and the free arm is used    -> Place
//   [ext] carrying every remaining target            -> Place
//   container known, none held, an arm free          -> PickUpContainer
//   (container held or steps >= 20%), target known   -> PickUpObject
//   exploration exhausted                            -> PickUpObject / Place
//   otherwise                                        -> Exploration
SubGoalTag high_level_step(const PlannerState& s, const HighLevelParams& p = {});

}  // namespace tc
