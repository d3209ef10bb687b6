#pragma once

#include <functional>
#include <optional>
#include <set>
#include <vector>

#include "tc/core/config.hpp"
#include "tc/mapping/maps.hpp"
#include "tc/planners/grid_search.hpp"
#include "tc/sim/action.hpp"
#include "tc/sim/observation.hpp"

namespace tc {

class Simulator;

struct FollowParams {
  int replan_interval = 5;  // replan after this many executed primitives
  int max_replans = 5;      // consecutive failed primitives tolerated
  int max_primitives = 400;
  double move_distance_m = 0.5;
  double rotate_step_deg = 15.0;
  // Sensor cone, used to tell which unexplored cells a turn will reveal.
  double fov_deg = 90.0;
  double range_m = 3.0;
};

FollowParams follow_params(const Config& c);

enum class FollowState { Active, Arrived, Failed };

// Turns an A* path over the agent's occupancy map into RotateTo and
// MoveForward primitives. Each call scores a set of candidate headings (the
// current one, bearings to upcoming path cells, every rotation step) by turn
// cost plus the estimated moves left after one move, and never moves through
// a cell it has not seen. It replans every `replan_interval` primitives, after
// any non-success status, and whenever no path cell is visible.
class PathFollower {
 public:
  using ArrivalTest = std::function<bool(Vec2 pose)>;

  PathFollower(Cell goal, ArrivalTest arrived, FollowParams params = {});

  // Seeds the follower with an existing path (map cells) instead of planning.
  void set_path(std::vector<Cell> path);

  // Next primitive, or nullopt once the follower has arrived or failed.
  std::optional<Action> next(const Observation& obs, const OccupancyMap& map);
  // Status of the primitive last returned by next().
  void report(ActionStatus status);

  FollowState state() const { return state_; }
  Cell goal() const { return goal_; }
  // Failed because the map offered no path at some replan.
  bool no_path() const { return no_path_; }
  int replans() const { return replans_; }
  int primitives() const { return primitives_; }
  const std::vector<Cell>& path() const { return path_; }

 private:
  bool plan(const OccupancyMap& map, Vec2 pose);
  std::optional<Action> choose(const Observation& obs, const OccupancyMap& map);

  Cell goal_;
  ArrivalTest arrived_;
  FollowParams params_;
  std::vector<Cell> path_;
  std::vector<double> remaining_m_;  // path length from path_[i] to the goal
  std::size_t cursor_ = 0;
  int since_plan_ = 0;
  int failures_ = 0;
  int replans_ = 0;
  int primitives_ = 0;
  bool force_replan_ = false;
  bool no_path_ = false;
  std::vector<Cell> expect_reveal_;
  std::set<Cell> unrevealable_;
  Vec2 unrevealable_at_{-1e9, -1e9};
  FollowState state_ = FollowState::Active;
};

// True iff the segment crosses no cell the map marks occupied and stays
// inside the map.
bool segment_clear(const OccupancyMap& map, Vec2 from, Vec2 to);

enum class Sweep { Free, Unknown, Blocked };
// Free when every swept cell is explored and unoccupied. Unknown when some
// are unexplored (the first one is stored in `first_unseen` if given).
Sweep sweep_known_free(const OccupancyMap& map, Vec2 from, Vec2 to, std::optional<Cell>* first_unseen = nullptr);

// Drives the simulator along a map-frame path until the agent is within
// `tolerance_m` of the last cell's center. Success on arrival; FailedToMove
// when the follower gives up or the budget runs out first.
ActionStatus follow_path(Simulator& sim, std::vector<Cell> path, double tolerance_m = 0.375);

}  // namespace tc
