#include "tc/sim/action.hpp"

#include <sstream>

namespace tc {
namespace {

constexpr std::array<std::string_view, kActionStatusCount> kStatusNames = {
    "ongoing",        "success",      "failed_to_move", "failed_to_turn",          "cannot_reach",
    "failed_to_reach", "failed_to_grasp", "not_holding",  "clamped_camera_rotation", "failed_to_bend",
    "collision",      "tipping",      "not_in",         "still_in",
};

constexpr std::array<std::string_view, kActionKindCount> kActionNames = {
    "move_forward", "rotate_left", "rotate_right", "rotate_to", "go_to_grasp", "put_in_container", "drop",
};

}  // namespace

bool is_valid_status(ActionStatus s) { return static_cast<int>(s) < kActionStatusCount; }

std::string_view to_string(ActionStatus s) {
  return is_valid_status(s) ? kStatusNames[static_cast<std::size_t>(s)] : std::string_view("invalid");
}

std::optional<ActionStatus> action_status_from_string(std::string_view s) {
  for (std::size_t i = 0; i < kStatusNames.size(); ++i)
    if (kStatusNames[i] == s) return static_cast<ActionStatus>(i);
  return std::nullopt;
}

std::string_view to_string(ActionKind k) {
  const auto i = static_cast<std::size_t>(k);
  return i < kActionNames.size() ? kActionNames[i] : std::string_view("invalid");
}

std::optional<ActionKind> action_kind_from_string(std::string_view s) {
  for (std::size_t i = 0; i < kActionNames.size(); ++i)
    if (kActionNames[i] == s) return static_cast<ActionKind>(i);
  return std::nullopt;
}

std::string describe(const Action& a) {
  std::ostringstream out;
  out << to_string(a.kind);
  if (a.kind == ActionKind::RotateTo) out << "(" << a.target.x << ", " << a.target.y << ")";
  if (a.kind == ActionKind::GoToGrasp) out << "(" << a.object << ")";
  return out.str();
}

}  // namespace tc
