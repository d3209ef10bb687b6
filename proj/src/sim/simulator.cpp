#include "tc/sim/simulator.hpp"

#include <cmath>
#include <stdexcept>

#include "tc/planners/path_follower.hpp"

namespace tc {

Simulator::Simulator(World world, TaskSpec task, Config config, std::uint64_t seed)
    : world_(std::move(world)),
      task_(std::move(task)),
      config_(config),
      rng_(seed),
      sensor_{config.fov_deg, config.range_m},
      maps_(config.map_size, world_.agent().pose, task_.goal_category, config.occupied_threshold) {
  config_.validate();
  if (task_.budget <= 0) throw std::invalid_argument("budget must be positive");
  world_.rebuild_obstacle_cache();
  sync_carried();
  refresh();
  obs_.last_status = ActionStatus::Success;
}

void Simulator::require_active() const {
  if (done()) throw std::logic_error("episode is over");
}

void Simulator::charge(int n) { world_.agent().steps_charged += n; }

void Simulator::refresh() {
  const ActionStatus last = obs_.last_status;
  obs_ = observe(world_, sensor_);
  obs_.last_status = last;
  maps_.integrate(obs_);
}

void Simulator::record_waypoint() { last_.waypoints.push_back(world_.agent().pose); }

void Simulator::sync_carried() {
  auto& agent = world_.agent();
  for (const auto& slot : agent.arm_slots) {
    if (!slot) continue;
    world_.object(*slot).pose = agent.pose;
    for (int id : world_.container_contents(*slot)) world_.object(id).pose = agent.pose;
  }
}

ActionStatus Simulator::begin(const Action& a) {
  require_active();
  last_ = StepEvent{};
  last_.index = actions_;
  last_.action = a;
  last_.steps_before = steps();
  return ActionStatus::Ongoing;
}

ActionStatus Simulator::finish(ActionStatus s) {
  if (s == ActionStatus::Ongoing) throw std::logic_error("ongoing escaped an action");
  auto& agent = world_.agent();
  agent.collided_last_action = s == ActionStatus::Collision;
  obs_.last_status = s;
  obs_.steps_charged = agent.steps_charged;
  last_.status = s;
  last_.steps_after = agent.steps_charged;
  last_.pose = agent.pose;
  last_.heading_deg = agent.heading_deg;
  last_.transported = world_.transported_count();
  ++actions_;
  return s;
}

ActionStatus Simulator::execute(const Action& a) {
  switch (a.kind) {
    case ActionKind::MoveForward: return move_forward();
    case ActionKind::RotateLeft: return rotate_left();
    case ActionKind::RotateRight: return rotate_right();
    case ActionKind::RotateTo: return rotate_to(a.target);
    case ActionKind::GoToGrasp: return go_to_grasp(a.object);
    case ActionKind::PutInContainer: return put_in_container();
    case ActionKind::Drop: return drop();
  }
  throw std::invalid_argument("unknown action kind");
}

std::optional<Cell> Simulator::random_free_neighbor(Cell c) {
  static constexpr Cell kOffsets[8] = {{1, 0}, {1, 1}, {0, 1}, {-1, 1}, {-1, 0}, {-1, -1}, {0, -1}, {1, -1}};
  std::vector<Cell> free;
  for (Cell d : kOffsets) {
    const Cell n = c + d;
    if (world_.grid().in_bounds(n) && world_.is_traversable(n)) free.push_back(n);
  }
  if (free.empty()) return std::nullopt;
  return free[static_cast<std::size_t>(rng_.uniform_int(0, static_cast<int>(free.size()) - 1))];
}

void Simulator::release_to(int id, Cell cell) {
  auto& o = world_.object(id);
  o.pose = cell_center(cell);
  o.resting = true;
  o.contained_in.reset();
}

void Simulator::spill_contents(int container_id, Cell around) {
  for (int id : world_.container_contents(container_id)) release_to(id, random_free_neighbor(around).value_or(around));
}

void Simulator::collision_drops() {
  auto& agent = world_.agent();
  const Cell here = to_cell(agent.pose);
  for (auto& slot : agent.arm_slots) {
    if (!slot) continue;
    if (!rng_.bernoulli(config_.drop_probability)) continue;
    const int id = *slot;
    slot.reset();
    const Cell landing = random_free_neighbor(here).value_or(here);
    release_to(id, landing);
    if (world_.object(id).kind == ObjectKind::Container) spill_contents(id, landing);
  }
}

ActionStatus Simulator::step_forward() {
  auto& agent = world_.agent();
  const Vec2 from = agent.pose;
  const Vec2 to = from + heading_vector(agent.heading_deg) * config_.move_distance_m;
  enum class Block { None, Light, Heavy } block = Block::None;
  for_each_supercover_cell(from, to, [&](Cell c) {
    if (!world_.grid().in_bounds(c) || world_.is_heavy_obstacle(c)) {
      block = Block::Heavy;
      return false;
    }
    if (!world_.is_traversable(c)) {
      block = Block::Light;
      return false;
    }
    return true;
  });
  charge(1);
  if (block == Block::Heavy) {
    collision_drops();
    refresh();
    return ActionStatus::Collision;
  }
  if (block == Block::Light) return ActionStatus::FailedToMove;
  agent.pose = to;
  sync_carried();
  record_waypoint();
  refresh();
  return ActionStatus::Success;
}

ActionStatus Simulator::move_forward() {
  begin(Action::move_forward());
  return finish(step_forward());
}

ActionStatus Simulator::rotate_left() {
  begin(Action::rotate_left());
  auto& agent = world_.agent();
  agent.heading_deg = normalize_degrees(agent.heading_deg + config_.rotate_step_deg);
  charge(1);
  refresh();
  return finish(ActionStatus::Success);
}

ActionStatus Simulator::rotate_right() {
  begin(Action::rotate_right());
  auto& agent = world_.agent();
  agent.heading_deg = normalize_degrees(agent.heading_deg - config_.rotate_step_deg);
  charge(1);
  refresh();
  return finish(ActionStatus::Success);
}

namespace {

// Steps charged for turning through `delta_deg`; at least one.
int turn_cost(double delta_deg, double step_deg) {
  const double d = std::abs(delta_deg);
  return std::max(1, static_cast<int>(std::ceil(d / step_deg - 1e-9)));
}

}  // namespace

ActionStatus Simulator::rotate_to(Vec2 target) {
  if (!world_.grid().contains(target)) throw std::invalid_argument("rotate_to target outside the scene");
  begin(Action::rotate_to(target));
  auto& agent = world_.agent();
  const double bearing = distance(agent.pose, target) > 1e-12 ? bearing_degrees(agent.pose, target) : agent.heading_deg;
  const int cost = turn_cost(signed_angle_diff(agent.heading_deg, bearing), config_.rotate_step_deg);
  if (cost > steps_left()) {
    charge(steps_left());
    return finish(ActionStatus::FailedToTurn);
  }
  charge(cost);
  agent.heading_deg = normalize_degrees(bearing);
  refresh();
  return finish(ActionStatus::Success);
}

ActionStatus Simulator::go_to_grasp(int object_id) {
  if (!world_.has_object(object_id)) throw std::invalid_argument("unknown object id " + std::to_string(object_id));
  begin(Action::go_to_grasp(object_id));
  auto& agent = world_.agent();
  const ObjectInstance& obj = world_.object(object_id);

  if (!obs_.sees(object_id)) {
    charge(1);
    return finish(ActionStatus::FailedToReach);
  }
  const bool movable = obj.kind == ObjectKind::Target || obj.kind == ObjectKind::Container;
  if (!movable || !obj.is_grabbable() || obj.contained_in || !agent.free_slot()) {
    charge(1);
    return finish(ActionStatus::FailedToGrasp);
  }

  const double reach = config_.reach_radius_m + 1e-9;
  auto within_reach = [&](Vec2 p) { return distance(p, world_.object(object_id).pose) <= reach; };

  if (!within_reach(agent.pose)) {
    const FollowParams fp = follow_params(config_);
    PathFollower follower(maps_.occupancy().map_cell(obj.pose), within_reach, fp);
    int executed = 0;
    while (steps_left() > 0) {
      const auto act = follower.next(obs_, maps_.occupancy());
      if (!act) break;
      ActionStatus s;
      if (act->kind == ActionKind::MoveForward) {
        s = step_forward();
      } else {
        const double bearing = bearing_degrees(agent.pose, act->target);
        const int cost = turn_cost(signed_angle_diff(agent.heading_deg, bearing), config_.rotate_step_deg);
        if (cost > steps_left()) {
          charge(steps_left());
          s = ActionStatus::FailedToTurn;
        } else {
          charge(cost);
          agent.heading_deg = normalize_degrees(bearing);
          refresh();
          s = ActionStatus::Success;
        }
      }
      ++executed;
      follower.report(s);
      if (s == ActionStatus::Collision) return finish(ActionStatus::Collision);
    }
    if (executed == 0) charge(1);
    if (follower.state() != FollowState::Arrived && !within_reach(agent.pose)) {
      return finish(follower.no_path() ? ActionStatus::FailedToMove : ActionStatus::CannotReach);
    }
    if (steps_left() <= 0) return finish(ActionStatus::CannotReach);
  }

  charge(1);
  const auto slot = agent.free_slot();
  agent.arm_slots[*slot] = object_id;
  world_.object(object_id).resting = false;
  sync_carried();
  refresh();
  return finish(ActionStatus::Success);
}

ActionStatus Simulator::put_in_container() {
  begin(Action::put_in_container());
  charge(1);
  auto& agent = world_.agent();
  std::optional<std::size_t> container_slot;
  std::optional<std::size_t> target_slot;
  for (std::size_t i = 0; i < agent.arm_slots.size(); ++i) {
    if (!agent.arm_slots[i]) continue;
    const auto kind = world_.object(*agent.arm_slots[i]).kind;
    if (kind == ObjectKind::Container && !container_slot) container_slot = i;
    if (kind == ObjectKind::Target && !target_slot) target_slot = i;
  }
  if (!container_slot || !target_slot) return finish(ActionStatus::NotHolding);
  const int container = *agent.arm_slots[*container_slot];
  if (static_cast<int>(world_.container_contents(container).size()) >= config_.container_capacity)
    return finish(ActionStatus::NotIn);
  auto& target = world_.object(*agent.arm_slots[*target_slot]);
  target.contained_in = container;
  target.resting = false;
  target.pose = world_.object(container).pose;
  agent.arm_slots[*target_slot].reset();
  refresh();
  return finish(ActionStatus::Success);
}

ActionStatus Simulator::drop() {
  begin(Action::drop());
  charge(1);
  auto& agent = world_.agent();
  if (agent.held_count() == 0) return finish(ActionStatus::NotHolding);
  const Cell here = to_cell(agent.pose);
  bool kept_inside = false;
  for (auto& slot : agent.arm_slots) {
    if (!slot) continue;
    const int id = *slot;
    slot.reset();
    release_to(id, here);
    if (world_.object(id).kind != ObjectKind::Container) continue;
    for (int inner : world_.container_contents(id)) {
      if (config_.still_in_probability > 0.0 && rng_.bernoulli(config_.still_in_probability)) {
        world_.object(inner).pose = world_.object(id).pose;
        kept_inside = true;
      } else {
        release_to(inner, here);
      }
    }
  }
  refresh();
  return finish(kept_inside ? ActionStatus::StillIn : ActionStatus::Success);
}

}  // namespace tc
