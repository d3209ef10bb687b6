#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include "tc/core/config.hpp"
#include "tc/planners/agents.hpp"
#include "tc/world/world.hpp"

namespace tc {

// The agent broke the action contract (unknown action, unknown object id,
// target outside the scene).
class HarnessError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct EpisodeResult {
  std::string task_id;
  std::string house_id;
  int transported = 0;
  int required = 0;
  double transport_rate = 0.0;
  int steps = 0;
  int actions = 0;
  std::string terminal;  // "budget" or "complete"
  std::string trace_file;
  std::string error;  // non-empty when the episode raised
};

struct EpisodeOptions {
  std::string task_id;
  std::string house_id;
  std::ostream* trace = nullptr;  // tctrace/1 lines are written here when set
  std::string trace_file;         // recorded in the result only
  // When set, the final agent maps are dumped with this path prefix.
  std::optional<std::filesystem::path> map_dump_prefix;
};

std::uint64_t episode_seed(std::uint64_t master_seed, const std::string& task_id);

// Steps `agent` until the budget is spent or every required target is
// transported. The task budget is replaced by config.budget and the goal zone
// is rebuilt when config.goal_radius_m differs from the scene's.
EpisodeResult run_episode(World world, TaskSpec task, AgentPolicy& agent, const Config& config, std::uint64_t seed,
                          const EpisodeOptions& options = {});

}  // namespace tc
