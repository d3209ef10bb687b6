#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "tc/world/geometry.hpp"

namespace tc {

// Per-action result protocol. Every executed action returns exactly one tag.
// Tipping, FailedToBend and ClampedCameraRotation are reserved: this engine
// has no arm or camera dynamics and never emits them.
enum class ActionStatus : std::uint8_t {
  Ongoing,
  Success,
  FailedToMove,
  FailedToTurn,
  CannotReach,
  FailedToReach,
  FailedToGrasp,
  NotHolding,
  ClampedCameraRotation,
  FailedToBend,
  Collision,
  Tipping,
  NotIn,
  StillIn,
};

inline constexpr int kActionStatusCount = 14;

std::string_view to_string(ActionStatus s);
std::optional<ActionStatus> action_status_from_string(std::string_view s);
bool is_valid_status(ActionStatus s);

// Navigation primitives plus the three interactive actions. RotateTo is the
// exact-bearing navigation call; it is charged like the equivalent number of
// 15-degree rotations.
enum class ActionKind : std::uint8_t {
  MoveForward,
  RotateLeft,
  RotateRight,
  RotateTo,
  GoToGrasp,
  PutInContainer,
  Drop,
};

inline constexpr int kActionKindCount = 7;

std::string_view to_string(ActionKind k);
std::optional<ActionKind> action_kind_from_string(std::string_view s);

struct Action {
  ActionKind kind = ActionKind::MoveForward;
  Vec2 target;      // RotateTo
  int object = -1;  // GoToGrasp

  static Action move_forward() { return {ActionKind::MoveForward, {}, -1}; }
  static Action rotate_left() { return {ActionKind::RotateLeft, {}, -1}; }
  static Action rotate_right() { return {ActionKind::RotateRight, {}, -1}; }
  static Action rotate_to(Vec2 target) { return {ActionKind::RotateTo, target, -1}; }
  static Action go_to_grasp(int id) { return {ActionKind::GoToGrasp, {}, id}; }
  static Action put_in_container() { return {ActionKind::PutInContainer, {}, -1}; }
  static Action drop() { return {ActionKind::Drop, {}, -1}; }

  bool operator==(const Action&) const = default;
};

std::string describe(const Action& a);

}  // namespace tc
