#pragma once

#include <cstdint>
#include <vector>

#include "tc/core/config.hpp"
#include "tc/core/rng.hpp"
#include "tc/mapping/maps.hpp"
#include "tc/sim/action.hpp"
#include "tc/sim/observation.hpp"
#include "tc/world/world.hpp"

namespace tc {

// One executed action as seen from outside the engine.
struct StepEvent {
  int index = 0;  // 0-based action counter
  Action action;
  ActionStatus status = ActionStatus::Success;
  int steps_before = 0;
  int steps_after = 0;
  std::vector<Vec2> waypoints;  // agent poses after each primitive, start excluded
  Vec2 pose;
  double heading_deg = 0.0;
  int transported = 0;
};

// Runs one episode: owns the ground-truth world, charges the budget, keeps
// the agent-side maps up to date after every primitive, and reports the
// current observation. Once the episode is over any further action throws
// std::logic_error.
class Simulator {
 public:
  Simulator(World world, TaskSpec task, Config config, std::uint64_t seed);

  ActionStatus execute(const Action& a);

  ActionStatus move_forward();
  ActionStatus rotate_left();
  ActionStatus rotate_right();
  ActionStatus rotate_to(Vec2 target);
  // Throws std::invalid_argument for unknown ids.
  ActionStatus go_to_grasp(int object_id);
  ActionStatus put_in_container();
  ActionStatus drop();

  const Observation& observation() const { return obs_; }
  const AgentMaps& maps() const { return maps_; }
  const TaskSpec& task() const { return task_; }
  const Config& config() const { return config_; }

  int steps() const { return world_.agent().steps_charged; }
  int budget() const { return task_.budget; }
  int steps_left() const { return budget() - steps(); }
  int transported() const { return world_.transported_count(); }
  bool success() const { return transported() >= task_.total_required(); }
  bool done() const { return steps() >= budget() || success(); }

  // Ground truth, for the harness and tests only. Policies get observation()
  // and maps().
  const World& scene_state() const { return world_; }

  const StepEvent& last_event() const { return last_; }
  int actions_executed() const { return actions_; }

 private:
  void require_active() const;
  void charge(int n);
  void refresh();
  void record_waypoint();
  void sync_carried();
  ActionStatus begin(const Action& a);
  ActionStatus finish(ActionStatus s);

  ActionStatus step_forward();
  void release_to(int id, Cell cell);
  void spill_contents(int container_id, Cell around);
  std::optional<Cell> random_free_neighbor(Cell c);
  void collision_drops();

  World world_;
  TaskSpec task_;
  Config config_;
  Rng rng_;
  SensorParams sensor_;
  AgentMaps maps_;
  Observation obs_;
  StepEvent last_;
  int actions_ = 0;
};

}  // namespace tc
