#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "tc/core/config.hpp"
#include "tc/core/rng.hpp"
#include "tc/mapping/maps.hpp"
#include "tc/planners/exploration.hpp"
#include "tc/planners/high_level.hpp"
#include "tc/planners/path_follower.hpp"
#include "tc/sim/action.hpp"
#include "tc/sim/observation.hpp"

namespace tc {

struct EpisodeContext {
  int budget = 1000;
  int required = 0;
  std::string goal_category;
  Config config;
  std::uint64_t seed = 0;
};

// Anything that maps the current observation and the agent-side maps to the
// next action. Policies never see the ground-truth world.
class AgentPolicy {
 public:
  virtual ~AgentPolicy() = default;
  virtual std::string name() const = 0;
  virtual void reset(const EpisodeContext& ctx) = 0;
  virtual Action act(const Observation& obs, const AgentMaps& maps) = 0;
  // Status of the action last returned by act().
  virtual void feedback(const Action& action, ActionStatus status) {
    (void)action;
    (void)status;
  }
};

// Rule-based sub-goal switching on top of frontier exploration and A*
// navigation. The two variants differ in how they pick among known objects
// and placement cells: straight-line distance, or A* cost on the map.
class HierarchicalAgent : public AgentPolicy {
 public:
  enum class Selection { Euclidean, PathCost };

  HierarchicalAgent(Selection selection, std::string name, HighLevelParams params = {});

  std::string name() const override { return name_; }
  void reset(const EpisodeContext& ctx) override;
  Action act(const Observation& obs, const AgentMaps& maps) override;
  void feedback(const Action& action, ActionStatus status) override;

  const SubGoal& subgoal() const { return subgoal_; }
  const PlannerState& planner_state() const { return state_; }

 private:
  struct NavResult {
    std::optional<Action> action;
    bool arrived = false;
    bool failed = false;
  };

  PlannerState build_state(const Observation& obs, const AgentMaps& maps) const;
  std::optional<Action> pursue(SubGoalTag tag, const Observation& obs, const AgentMaps& maps);
  std::optional<Action> explore(const Observation& obs, const AgentMaps& maps);
  std::optional<Action> approach(int id, const Observation& obs, const AgentMaps& maps);
  std::optional<Action> place(const Observation& obs, const AgentMaps& maps);
  NavResult navigate(const std::string& key, Cell goal, PathFollower::ArrivalTest arrived, const Observation& obs,
                     const AgentMaps& maps);
  bool in_drop_position(Vec2 pose, const AgentMaps& maps) const;
  std::optional<ObjectChoice> choose_object(ObjectKind kind, const Observation& obs, const AgentMaps& maps) const;
  void note_failure(int id, ActionStatus status);

  Selection selection_;
  std::string name_;
  HighLevelParams params_;
  EpisodeContext ctx_;
  Rng rng_{0};

  std::map<int, ObjectKind> kinds_;
  std::map<int, int> failures_;
  std::set<int> blacklist_;
  std::set<Cell> visited_;
  std::set<Cell> bad_place_cells_;
  std::optional<Cell> waypoint_;
  std::optional<PathFollower> nav_;
  std::string nav_key_;
  bool nav_issued_ = false;
  int rotate_object_ = -1;
  int rotate_attempts_ = 0;
  std::optional<Cell> last_drop_cell_;
  std::vector<int> last_dropped_;
  SubGoal subgoal_;
  PlannerState state_;
};

class RandomAgent : public AgentPolicy {
 public:
  std::string name() const override { return "random"; }
  void reset(const EpisodeContext& ctx) override;
  Action act(const Observation& obs, const AgentMaps& maps) override;

 private:
  Rng rng_{0};
  double goal_radius_m_ = 1.0;
};

const std::vector<std::string>& agent_names();
// Throws std::invalid_argument for unknown names.
std::unique_ptr<AgentPolicy> make_agent(std::string_view name);

}  // namespace tc
