#include "tc/planners/path_follower.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "tc/sim/simulator.hpp"

namespace tc {
namespace {

int rotation_steps(double from_deg, double to_deg, double step_deg) {
  const double delta = std::abs(signed_angle_diff(from_deg, to_deg));
  if (delta < 1e-6) return 0;
  return std::max(1, static_cast<int>(std::ceil(delta / step_deg - 1e-9)));
}

}  // namespace

Sweep sweep_known_free(const OccupancyMap& map, Vec2 from, Vec2 to, std::optional<Cell>* first_unseen) {
  Sweep result = Sweep::Free;
  for_each_supercover_cell(from, to, [&](Cell world_cell) {
    const Cell m = map.to_map(world_cell);
    if (!map.in_bounds(m) || map.is_occupied(m)) {
      result = Sweep::Blocked;
      return false;
    }
    if (!map.is_explored(m) && result == Sweep::Free) {
      result = Sweep::Unknown;
      if (first_unseen) *first_unseen = m;
    }
    return true;
  });
  if (result == Sweep::Blocked && first_unseen) first_unseen->reset();
  return result;
}

bool segment_clear(const OccupancyMap& map, Vec2 from, Vec2 to) {
  return for_each_supercover_cell(from, to, [&](Cell world_cell) {
    const Cell m = map.to_map(world_cell);
    return map.in_bounds(m) && !map.is_occupied(m);
  });
}

FollowParams follow_params(const Config& c) {
  FollowParams fp;
  fp.replan_interval = c.replan_interval;
  fp.max_replans = c.max_replans;
  fp.move_distance_m = c.move_distance_m;
  fp.rotate_step_deg = c.rotate_step_deg;
  fp.fov_deg = c.fov_deg;
  fp.range_m = c.range_m;
  return fp;
}

PathFollower::PathFollower(Cell goal, ArrivalTest arrived, FollowParams params)
    : goal_(goal), arrived_(std::move(arrived)), params_(params) {}

void PathFollower::set_path(std::vector<Cell> path) {
  path_ = std::move(path);
  remaining_m_.assign(path_.size(), 0.0);
  for (std::size_t i = path_.size(); i-- > 1;) {
    const Cell d = path_[i] - path_[i - 1];
    remaining_m_[i - 1] = remaining_m_[i] + kCellSize * ((d.x != 0 && d.y != 0) ? std::numbers::sqrt2 : 1.0);
  }
  cursor_ = 0;
  since_plan_ = 0;
  force_replan_ = false;
}

bool PathFollower::plan(const OccupancyMap& map, Vec2 pose) {
  ++replans_;
  const auto grid = planning_grid(map);
  auto found = astar(grid, map.map_cell(pose), goal_);
  if (!found) {
    no_path_ = true;
    return false;
  }
  set_path(std::move(found->cells));
  return true;
}

std::optional<Action> PathFollower::next(const Observation& obs, const OccupancyMap& map) {
  if (state_ != FollowState::Active) return std::nullopt;
  if (arrived_(obs.pose)) {
    state_ = FollowState::Arrived;
    return std::nullopt;
  }
  if (primitives_ >= params_.max_primitives || failures_ > params_.max_replans) {
    state_ = FollowState::Failed;
    return std::nullopt;
  }
  bool fresh = false;
  if (path_.empty() || force_replan_ || since_plan_ >= params_.replan_interval) {
    if (!plan(map, obs.pose)) {
      state_ = FollowState::Failed;
      return std::nullopt;
    }
    fresh = true;
  }
  auto action = choose(obs, map);
  if (!action && !fresh) {
    if (!plan(map, obs.pose)) {
      state_ = FollowState::Failed;
      return std::nullopt;
    }
    action = choose(obs, map);
  }
  if (!action) {
    state_ = FollowState::Failed;
    return std::nullopt;
  }
  ++primitives_;
  ++since_plan_;
  return action;
}

void PathFollower::report(ActionStatus status) {
  if (status == ActionStatus::Success) {
    failures_ = 0;
    return;
  }
  ++failures_;
  force_replan_ = true;
}

std::optional<Action> PathFollower::choose(const Observation& obs, const OccupancyMap& map) {
  const Vec2 pose = obs.pose;
  const std::size_t n = path_.size();
  auto center = [&](std::size_t j) { return map.world_center(path_[j]); };
  auto visible = [&](Vec2 from, std::size_t j) { return segment_clear(map, from, center(j)); };

  // Farthest visible path cell at or beyond the cursor.
  std::optional<std::size_t> aim;
  for (std::size_t j = n; j-- > cursor_;) {
    if (visible(pose, j)) {
      aim = j;
      break;
    }
  }
  if (!aim) return std::nullopt;
  cursor_ = *aim;

  const double step = params_.move_distance_m;
  const std::size_t window_end = std::min(n - 1, *aim + 24);
  // Estimated moves left from a point: straight to the farthest visible path
  // cell in the window, then along the path.
  auto steps_left = [&](Vec2 from) -> std::optional<double> {
    for (std::size_t j = window_end + 1; j-- > *aim;) {
      if (visible(from, j)) return (distance(from, center(j)) + remaining_m_[j]) / step;
    }
    return std::nullopt;
  };
  const double current = *steps_left(pose);

  // Cells a previous turn was meant to reveal but did not are treated as
  // blocked until the agent moves.
  if (distance(pose, unrevealable_at_) > 1e-9) {
    unrevealable_.clear();
    unrevealable_at_ = pose;
  }
  for (Cell m : expect_reveal_)
    if (!map.is_explored(m)) unrevealable_.insert(m);
  expect_reveal_.clear();

  // A sweep through unexplored cells is acceptable only when turning to that
  // heading will bring those cells into view first.
  std::vector<Cell> pending;
  auto sweep_ok = [&](double heading, Vec2 end, int turns) {
    bool ok = true;
    pending.clear();
    for_each_supercover_cell(pose, end, [&](Cell world_cell) {
      const Cell m = map.to_map(world_cell);
      if (!map.in_bounds(m) || map.is_occupied(m)) return ok = false;
      if (map.is_explored(m)) return true;
      if (turns == 0 || unrevealable_.count(m)) return ok = false;
      const Vec2 c = map.world_center(m);
      const bool in_view = distance(pose, c) <= params_.range_m - 0.1 &&
                           std::abs(signed_angle_diff(heading, bearing_degrees(pose, c))) <= 0.5 * params_.fov_deg - 1.0;
      pending.push_back(m);
      return ok = in_view;
    });
    return ok;
  };

  std::vector<double> headings{obs.heading_deg};
  for (std::size_t j = *aim; j <= std::min(n - 1, *aim + 8); ++j)
    if (distance(pose, center(j)) > 1e-9) headings.push_back(bearing_degrees(pose, center(j)));
  for (int k = 0; k * params_.rotate_step_deg < 360.0; ++k) headings.push_back(k * params_.rotate_step_deg);

  double best_score = std::numeric_limits<double>::infinity();
  std::optional<double> best_heading;
  std::vector<Cell> best_pending;
  bool best_arrives = false;
  for (double h : headings) {
    const Vec2 end = pose + heading_vector(h) * step;
    const int turns = rotation_steps(obs.heading_deg, h, params_.rotate_step_deg);
    if (!sweep_ok(h, end, turns)) continue;
    if (arrived_(end)) {
      if (!best_arrives || turns < best_score - 1e-9) {
        best_arrives = true;
        best_score = turns;
        best_heading = h;
        best_pending = pending;
      }
      continue;
    }
    if (best_arrives) continue;
    const auto left = steps_left(end);
    if (!left || *left >= current - 1e-9) continue;
    const double score = turns + 1 + *left;
    if (score < best_score - 1e-9) {
      best_score = score;
      best_heading = h;
      best_pending = pending;
    }
  }
  if (!best_heading) {
    // No single move makes progress, typically when lined up badly with a
    // one-cell gap or when the next cells hide behind a corner. Search up to
    // three moves ahead; all but the last must be over known-free cells, the
    // last may cross unexplored ones (they get checked again before it is
    // taken).
    auto headings_from = [&](Vec2 from) {
      std::vector<double> hs;
      for (std::size_t j = *aim; j <= std::min(n - 1, *aim + 8); ++j)
        if (distance(from, center(j)) > 1e-9) hs.push_back(bearing_degrees(from, center(j)));
      for (int k = 0; k * params_.rotate_step_deg < 360.0; ++k) hs.push_back(k * params_.rotate_step_deg);
      return hs;
    };
    int max_depth = 0;
    std::function<void(Vec2, double, int, double, double)> search = [&](Vec2 from, double heading, int depth,
                                                                         double cost, double first) {
      for (double h : headings_from(from)) {
        const Vec2 end = from + heading_vector(h) * step;
        const double c = cost + rotation_steps(heading, h, params_.rotate_step_deg) + 1;
        if (c >= best_score - 1e-9) continue;
        const Sweep sw = sweep_known_free(map, from, end);
        if (sw == Sweep::Blocked || (depth == 0 && sw != Sweep::Free)) continue;
        const double lead = depth == 0 ? h : first;
        if (arrived_(end)) {
          best_score = c;
          best_heading = lead;
          continue;
        }
        const auto left = steps_left(end);
        if (left && *left < current - 1e-9 && c + *left < best_score - 1e-9) {
          best_score = c + *left;
          best_heading = lead;
        }
        if (sw == Sweep::Free && depth < max_depth) search(end, h, depth + 1, c, lead);
      }
    };
    for (max_depth = 1; max_depth <= 2 && !best_heading; ++max_depth) search(pose, obs.heading_deg, 0, 0.0, 0.0);
    if (!best_heading) return std::nullopt;
    best_pending.clear();
  }
  if (rotation_steps(obs.heading_deg, *best_heading, params_.rotate_step_deg) == 0) return Action::move_forward();
  expect_reveal_ = std::move(best_pending);
  return Action::rotate_to(pose + heading_vector(*best_heading) * 0.1);
}

ActionStatus follow_path(Simulator& sim, std::vector<Cell> path, double tolerance_m) {
  if (path.empty()) throw std::invalid_argument("follow_path needs a nonempty path");
  const auto& map = sim.maps().occupancy();
  const Vec2 end = map.world_center(path.back());
  const FollowParams fp = follow_params(sim.config());
  PathFollower follower(path.back(), [end, tolerance_m](Vec2 p) { return distance(p, end) <= tolerance_m; }, fp);
  follower.set_path(std::move(path));
  while (!sim.done()) {
    const auto action = follower.next(sim.observation(), sim.maps().occupancy());
    if (!action) break;
    follower.report(sim.execute(*action));
  }
  if (follower.state() == FollowState::Arrived || distance(sim.observation().pose, end) <= tolerance_m)
    return ActionStatus::Success;
  return ActionStatus::FailedToMove;
}

}  // namespace tc
