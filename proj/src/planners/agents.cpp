#include "tc/planners/agents.hpp"

#include <algorithm>
#include <stdexcept>

namespace tc {
namespace {

std::string cell_key(std::string_view prefix, Cell c) {
  return std::string(prefix) + ":" + std::to_string(c.x) + "," + std::to_string(c.y);
}

// Straight sight line through the map: no occupied cell except those the
// caller allows.
template <typename Allow>
bool map_line_clear(const OccupancyMap& map, Vec2 from, Vec2 to, Allow&& allow) {
  return for_each_supercover_cell(from, to, [&](Cell world_cell) {
    const Cell m = map.to_map(world_cell);
    if (!map.in_bounds(m)) return false;
    return !map.is_occupied(m) || allow(m);
  });
}

constexpr int kMaxGraspFailures = 2;
constexpr int kMaxRotateAttempts = 2;
constexpr double kWaypointTolerance = 0.5;
constexpr int kVisitedRadius = 2;

}  // namespace

HierarchicalAgent::HierarchicalAgent(Selection selection, std::string name, HighLevelParams params)
    : selection_(selection), name_(std::move(name)), params_(params) {}

void HierarchicalAgent::reset(const EpisodeContext& ctx) {
  ctx_ = ctx;
  rng_ = Rng(ctx.seed);
  kinds_.clear();
  failures_.clear();
  blacklist_.clear();
  visited_.clear();
  bad_place_cells_.clear();
  waypoint_.reset();
  nav_.reset();
  nav_key_.clear();
  nav_issued_ = false;
  rotate_object_ = -1;
  rotate_attempts_ = 0;
  last_drop_cell_.reset();
  last_dropped_.clear();
  subgoal_ = {};
  state_ = {};
}

PlannerState HierarchicalAgent::build_state(const Observation& obs, const AgentMaps& maps) const {
  PlannerState s;
  s.steps = obs.steps_charged;
  s.budget = ctx_.budget;
  s.free_arms = 0;
  for (const auto& slot : obs.arm_slots) {
    if (!slot) {
      ++s.free_arms;
      continue;
    }
    const auto it = kinds_.find(*slot);
    const ObjectKind kind = it == kinds_.end() ? ObjectKind::Target : it->second;
    if (kind == ObjectKind::Container) {
      s.holding_container = true;
    } else {
      ++s.held_targets;
    }
  }
  s.contained_targets = static_cast<int>(obs.container_contents.size());
  if (s.holding_container) s.container_space = ctx_.config.container_capacity - s.contained_targets;
  s.container_known = !graspable_objects(maps.semantic(), ObjectKind::Container, blacklist_).empty();
  s.target_known = !graspable_objects(maps.semantic(), ObjectKind::Target, blacklist_).empty();
  int transported = 0;
  for (const auto& [id, k] : maps.semantic().known())
    if (k.kind == ObjectKind::Target && k.transported) ++transported;
  s.remaining_targets = std::max(0, ctx_.required - transported);
  const auto frontier = frontier_cells(maps.occupancy());
  s.exploration_exhausted =
      std::none_of(frontier.begin(), frontier.end(), [&](Cell c) { return visited_.count(c) == 0; });
  return s;
}

Action HierarchicalAgent::act(const Observation& obs, const AgentMaps& maps) {
  nav_issued_ = false;
  for (const auto& [id, k] : maps.semantic().known()) kinds_[id] = k.kind;

  // A drop that did not land in the goal zone marks that spot as useless.
  if (last_drop_cell_) {
    for (int id : last_dropped_) {
      const auto* k = maps.semantic().find(id);
      if (k && k->kind == ObjectKind::Target && !k->transported && !k->contained) {
        bad_place_cells_.insert(*last_drop_cell_);
        break;
      }
    }
    last_drop_cell_.reset();
    last_dropped_.clear();
  }

  state_ = build_state(obs, maps);

  // Stow a freshly grasped target in the held container.
  if (state_.holding_container && state_.held_targets > 0 && state_.container_space > 0) {
    subgoal_ = {SubGoalTag::PickUpObject, std::nullopt, std::nullopt};
    return Action::put_in_container();
  }

  PlannerState s = state_;
  for (int attempt = 0; attempt < 4; ++attempt) {
    const SubGoalTag tag = high_level_step(s, params_);
    subgoal_ = {tag, std::nullopt, std::nullopt};
    if (auto a = pursue(tag, obs, maps)) return *a;
    // The sub-goal cannot make progress right now; hide what it needed and
    // ask again.
    switch (tag) {
      case SubGoalTag::PickUpContainer: s.container_known = false; break;
      case SubGoalTag::PickUpObject: s.target_known = false; break;
      case SubGoalTag::Exploration: s.exploration_exhausted = true; break;
      case SubGoalTag::Place: break;
    }
  }
  return Action::rotate_left();
}

void HierarchicalAgent::feedback(const Action& action, ActionStatus status) {
  if (nav_issued_ && nav_) nav_->report(status);
  if (action.kind == ActionKind::GoToGrasp) {
    if (status == ActionStatus::Success) {
      failures_.erase(action.object);
      rotate_attempts_ = 0;
      rotate_object_ = -1;
    } else {
      note_failure(action.object, status);
    }
  }
}

void HierarchicalAgent::note_failure(int id, ActionStatus status) {
  const int n = ++failures_[id];
  if (n >= kMaxGraspFailures || status == ActionStatus::FailedToMove || status == ActionStatus::FailedToGrasp)
    blacklist_.insert(id);
}

std::optional<Action> HierarchicalAgent::pursue(SubGoalTag tag, const Observation& obs, const AgentMaps& maps) {
  switch (tag) {
    case SubGoalTag::Exploration: return explore(obs, maps);
    case SubGoalTag::Place: return place(obs, maps);
    case SubGoalTag::PickUpContainer:
    case SubGoalTag::PickUpObject: {
      const auto kind = tag == SubGoalTag::PickUpContainer ? ObjectKind::Container : ObjectKind::Target;
      for (int tries = 0; tries < 3; ++tries) {
        const auto choice = choose_object(kind, obs, maps);
        if (!choice) return std::nullopt;
        subgoal_.object = choice->id;
        if (auto a = approach(choice->id, obs, maps)) return a;
      }
      return std::nullopt;
    }
  }
  return std::nullopt;
}

std::optional<ObjectChoice> HierarchicalAgent::choose_object(ObjectKind kind, const Observation& obs,
                                                             const AgentMaps& maps) const {
  const Cell here = maps.occupancy().map_cell(obs.pose);
  if (selection_ == Selection::PathCost) return nearest_by_path(maps, here, kind, blacklist_);
  return nearest_by_distance(maps, here, kind, blacklist_);
}

HierarchicalAgent::NavResult HierarchicalAgent::navigate(const std::string& key, Cell goal,
                                                         PathFollower::ArrivalTest arrived, const Observation& obs,
                                                         const AgentMaps& maps) {
  if (!nav_ || nav_key_ != key) {
    nav_.emplace(goal, std::move(arrived), follow_params(ctx_.config));
    nav_key_ = key;
  }
  NavResult r;
  r.action = nav_->next(obs, maps.occupancy());
  if (r.action) {
    nav_issued_ = true;
    return r;
  }
  r.arrived = nav_->state() == FollowState::Arrived;
  r.failed = !r.arrived;
  nav_.reset();
  nav_key_.clear();
  return r;
}

std::optional<Action> HierarchicalAgent::approach(int id, const Observation& obs, const AgentMaps& maps) {
  const KnownObject* k = maps.semantic().find(id);
  if (!k) return std::nullopt;
  if (obs.sees(id)) {
    nav_.reset();
    return Action::go_to_grasp(id);
  }
  const auto& occ = maps.occupancy();
  const double sight = ctx_.config.range_m;
  const AgentMaps* mp = &maps;
  const Vec2 target = k->pose;
  auto in_view_range = [mp, target, sight](Vec2 p) {
    return distance(p, target) <= sight - 0.5 &&
           map_line_clear(mp->occupancy(), p, target, [](Cell) { return false; });
  };
  if (distance(obs.pose, target) <= sight - 0.3 && map_line_clear(occ, obs.pose, target, [](Cell) { return false; })) {
    if (rotate_object_ == id) {
      if (++rotate_attempts_ > kMaxRotateAttempts) {
        blacklist_.insert(id);
        return std::nullopt;
      }
    } else {
      rotate_object_ = id;
      rotate_attempts_ = 1;
    }
    nav_.reset();
    return Action::rotate_to(target);
  }
  const auto r = navigate(cell_key("obj" + std::to_string(id), k->cell), k->cell, in_view_range, obs, maps);
  if (r.action) return r.action;
  if (r.failed) blacklist_.insert(id);
  return std::nullopt;
}

bool HierarchicalAgent::in_drop_position(Vec2 pose, const AgentMaps& maps) const {
  const auto& occ = maps.occupancy();
  const auto& sem = maps.semantic();
  const double reach = ctx_.config.goal_radius_m - 0.3;
  for (Cell g : sem.goal_cells()) {
    const Vec2 c = occ.world_center(g);
    if (distance(pose, c) > reach) continue;
    if (map_line_clear(occ, pose, c, [&](Cell m) { return sem.at(SemanticChannel::Goal, m) != 0; })) return true;
  }
  return false;
}

std::optional<Action> HierarchicalAgent::place(const Observation& obs, const AgentMaps& maps) {
  if (!maps.semantic().goal_known()) return explore(obs, maps);
  const Cell here_cell = maps.occupancy().map_cell(obs.pose);
  if (in_drop_position(obs.pose, maps) && !bad_place_cells_.count(here_cell)) {
    nav_.reset();
    last_drop_cell_ = here_cell;
    last_dropped_.clear();
    for (const auto& slot : obs.arm_slots)
      if (slot) last_dropped_.push_back(*slot);
    for (int id : obs.container_contents) last_dropped_.push_back(id);
    return Action::drop();
  }

  std::optional<Cell> goal;
  if (selection_ == Selection::PathCost) {
    goal = explore_greedy_semantic(maps, SubGoalTag::Place, here_cell, rng_, blacklist_, bad_place_cells_);
    if (goal && !maps.semantic().at(SemanticChannel::Goal, *goal)) {
      const auto cells = placement_cells(maps);
      if (!std::binary_search(cells.begin(), cells.end(), *goal)) goal.reset();
    }
  } else {
    double best = 0.0;
    for (Cell c : placement_cells(maps)) {
      if (bad_place_cells_.count(c)) continue;
      const double d = octile_distance(here_cell, c);
      if (!goal || d < best - 1e-9) {
        goal = c;
        best = d;
      }
    }
  }
  if (!goal) {
    bad_place_cells_.clear();
    return explore(obs, maps);
  }
  subgoal_.cell = *goal;
  const AgentMaps* mp = &maps;
  const std::set<Cell>* bad = &bad_place_cells_;
  auto arrived = [this, mp, bad](Vec2 p) {
    return in_drop_position(p, *mp) && !bad->count(mp->occupancy().map_cell(p));
  };
  const auto r = navigate(cell_key("place", *goal), *goal, arrived, obs, maps);
  if (r.action) return r.action;
  if (r.arrived) return place(obs, maps);
  bad_place_cells_.insert(*goal);
  return std::nullopt;
}

std::optional<Action> HierarchicalAgent::explore(const Observation& obs, const AgentMaps& maps) {
  const auto& occ = maps.occupancy();
  for (int tries = 0; tries < 3; ++tries) {
    if (waypoint_ && visited_.count(*waypoint_)) waypoint_.reset();
    if (!waypoint_) {
      const Cell here = occ.map_cell(obs.pose);
      waypoint_ = selection_ == Selection::PathCost
                      ? explore_greedy_semantic(maps, SubGoalTag::Exploration, here, rng_, blacklist_, visited_)
                      : explore_frontier(occ, rng_, visited_);
      if (!waypoint_ && !visited_.empty()) {
        // Everything reachable has been looked at; revisit old frontiers.
        visited_.clear();
        waypoint_ = explore_frontier(occ, rng_);
      }
      if (!waypoint_) return std::nullopt;
    }
    subgoal_.cell = *waypoint_;
    const Vec2 center = occ.world_center(*waypoint_);
    auto arrived = [center](Vec2 p) { return distance(p, center) <= kWaypointTolerance; };
    const auto r = navigate(cell_key("wp", *waypoint_), *waypoint_, arrived, obs, maps);
    if (r.action) return r.action;
    for (int dy = -kVisitedRadius; dy <= kVisitedRadius; ++dy)
      for (int dx = -kVisitedRadius; dx <= kVisitedRadius; ++dx) visited_.insert({waypoint_->x + dx, waypoint_->y + dy});
    waypoint_.reset();
  }
  return std::nullopt;
}

void RandomAgent::reset(const EpisodeContext& ctx) {
  rng_ = Rng(ctx.seed);
  goal_radius_m_ = ctx.config.goal_radius_m;
}

Action RandomAgent::act(const Observation& obs, const AgentMaps& maps) {
  return random_agent_step(obs, maps, rng_, goal_radius_m_);
}

const std::vector<std::string>& agent_names() {
  static const std::vector<std::string> names = {"frontier", "greedy-semantic", "random"};
  return names;
}

std::unique_ptr<AgentPolicy> make_agent(std::string_view name) {
  if (name == "frontier")
    return std::make_unique<HierarchicalAgent>(HierarchicalAgent::Selection::Euclidean, "frontier");
  if (name == "greedy-semantic")
    return std::make_unique<HierarchicalAgent>(HierarchicalAgent::Selection::PathCost, "greedy-semantic");
  if (name == "random") return std::make_unique<RandomAgent>();
  throw std::invalid_argument("unknown agent '" + std::string(name) + "'");
}

}  // namespace tc
