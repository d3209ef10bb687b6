#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tc/taskgen/house.hpp"
#include "tc/world/world.hpp"

namespace tc {

inline const std::vector<std::string> kTargetCategories = {"vase", "bowl", "jug", "cup", "toy"};
inline constexpr const char* kContainerCategory = "basket";

struct TaskParams {
  int min_targets = 6;
  int max_targets = 8;
  double container_probability = 0.25;
  double goal_radius_m = 1.0;
  int budget = 1000;
  int max_retries = 100;
};

struct GeneratedTask {
  World world;
  TaskSpec spec;
  int container_count = 0;
};

// Designates a unique goal furniture, scatters 6-8 targets across rooms on
// free cells next to walls or furniture, spawns a container in each room with
// probability `container_probability`, and spawns the agent on an empty free
// cell. Every placement is reachable from the spawn.
//
// Throws GenerationError after `max_retries` failed attempts for a placement.
GeneratedTask populate_task(const World& house, std::uint64_t seed, const TaskParams& params = {});

// Checks the task-level contract: target totals, category set, goal
// uniqueness, zone availability and reachability from the spawn.
std::optional<std::string> check_task(const World& world, const TaskSpec& spec);

}  // namespace tc
