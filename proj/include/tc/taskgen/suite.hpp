#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "tc/taskgen/house.hpp"
#include "tc/taskgen/task.hpp"

namespace tc {

inline constexpr const char* kSuiteFormat = "tcsuite/1";
inline constexpr const char* kSuiteIndexFile = "suite.json";

enum class Split { Train, Test };
std::string_view to_string(Split s);
std::optional<Split> split_from_string(std::string_view s);

struct SuiteParams {
  int houses = 5;
  int tasks_per_house = 20;
  Split split = Split::Test;
  std::uint64_t master_seed = 0;
  HouseParams house;
  TaskParams task;

  static SuiteParams standard_train(std::uint64_t seed);  // 10 houses x 100 tasks
  static SuiteParams standard_test(std::uint64_t seed);   // 5 houses x 20 tasks
};

struct SuiteEntry {
  std::string task_id;
  std::string house_id;
  int house_index = 0;
  std::string scene_file;  // relative to the suite directory
  TaskSpec spec;
};

struct Suite {
  Split split = Split::Test;
  std::uint64_t master_seed = 0;
  std::filesystem::path root;
  std::vector<SuiteEntry> tasks;
};

struct BuiltTask {
  SuiteEntry entry;
  World world;
  int container_count = 0;
};

std::uint64_t house_seed(std::uint64_t master_seed, Split split, int house_index);

// Deterministic in-memory suite.
std::vector<BuiltTask> build_suite(const SuiteParams& params);

// Writes <dir>/suite.json and one scene file per task under <dir>/scenes/.
Suite write_suite(const std::vector<BuiltTask>& tasks, const SuiteParams& params, const std::filesystem::path& dir);

nlohmann::json suite_to_json(const Suite& suite);

// Accepts either the suite directory or the index file itself.
Suite load_suite(const std::filesystem::path& path);
World load_task_world(const Suite& suite, const SuiteEntry& entry);

struct SuiteProblem {
  std::string record;  // task id, or "suite" for index-level problems
  std::string message;
};

// Schema and consistency check of an on-disk suite. Empty result means valid.
std::vector<SuiteProblem> validate_suite(const std::filesystem::path& path);

}  // namespace tc
