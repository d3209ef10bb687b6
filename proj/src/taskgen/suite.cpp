#include "tc/taskgen/suite.hpp"

#include <cstdio>
#include <set>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "tc/core/rng.hpp"
#include "tc/world/scene_io.hpp"

namespace tc {
namespace {

std::string zero_pad(int v, int width) {
  std::string s = std::to_string(v);
  while (static_cast<int>(s.size()) < width) s.insert(s.begin(), '0');
  return s;
}

std::filesystem::path index_path(const std::filesystem::path& path) {
  return std::filesystem::is_directory(path) ? path / kSuiteIndexFile : path;
}

nlohmann::json read_json(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::runtime_error("malformed JSON in " + path.string() + ": " + e.what());
  }
}

SuiteEntry entry_from_json(const nlohmann::json& t) {
  SuiteEntry e;
  e.task_id = t.at("task_id").get<std::string>();
  e.house_id = t.at("house").get<std::string>();
  e.house_index = t.at("house_index").get<int>();
  e.scene_file = t.at("scene").get<std::string>();
  e.spec.required = t.at("required").get<std::map<std::string, int>>();
  e.spec.goal_category = t.at("goal").get<std::string>();
  e.spec.budget = t.at("budget").get<int>();
  e.spec.seed = t.at("seed").get<std::uint64_t>();
  return e;
}

}  // namespace

std::string_view to_string(Split s) { return s == Split::Train ? "train" : "test"; }

std::optional<Split> split_from_string(std::string_view s) {
  if (s == "train") return Split::Train;
  if (s == "test") return Split::Test;
  return std::nullopt;
}

SuiteParams SuiteParams::standard_train(std::uint64_t seed) {
  SuiteParams p;
  p.houses = 10;
  p.tasks_per_house = 100;
  p.split = Split::Train;
  p.master_seed = seed;
  return p;
}

SuiteParams SuiteParams::standard_test(std::uint64_t seed) {
  SuiteParams p;
  p.houses = 5;
  p.tasks_per_house = 20;
  p.split = Split::Test;
  p.master_seed = seed;
  return p;
}

std::uint64_t house_seed(std::uint64_t master_seed, Split split, int house_index) {
  return mix_seed(mix_seed(master_seed, hash_string(to_string(split))), static_cast<std::uint64_t>(house_index));
}

std::vector<BuiltTask> build_suite(const SuiteParams& p) {
  if (p.houses <= 0 || p.tasks_per_house <= 0) throw std::invalid_argument("build_suite: counts must be positive");
  std::vector<BuiltTask> out;
  out.reserve(static_cast<std::size_t>(p.houses) * p.tasks_per_house);
  for (int h = 0; h < p.houses; ++h) {
    const std::uint64_t hs = house_seed(p.master_seed, p.split, h);
    const std::string house_id = std::string(to_string(p.split)) + "-h" + zero_pad(h, 2);
    const World house = generate_house(hs, p.house, house_id);
    for (int t = 0; t < p.tasks_per_house; ++t) {
      const std::string task_id = house_id + "-t" + zero_pad(t, 3);
      auto task = populate_task(house, mix_seed(hs, 1000u + static_cast<std::uint64_t>(t)), p.task);
      World world(task_id, task.world.grid(), task.world.objects(), task.world.agent());
      world.set_goal(task.world.goal());
      BuiltTask bt;
      bt.entry.task_id = task_id;
      bt.entry.house_id = house_id;
      bt.entry.house_index = h;
      bt.entry.scene_file = "scenes/" + task_id + ".tcscene";
      bt.entry.spec = task.spec;
      bt.world = std::move(world);
      bt.container_count = task.container_count;
      out.push_back(std::move(bt));
    }
  }
  return out;
}

nlohmann::json suite_to_json(const Suite& suite) {
  nlohmann::json j;
  j["format"] = kSuiteFormat;
  j["split"] = std::string(to_string(suite.split));
  j["master_seed"] = suite.master_seed;
  auto tasks = nlohmann::json::array();
  for (const auto& e : suite.tasks) {
    tasks.push_back({{"task_id", e.task_id},
                     {"house", e.house_id},
                     {"house_index", e.house_index},
                     {"scene", e.scene_file},
                     {"required", e.spec.required},
                     {"goal", e.spec.goal_category},
                     {"budget", e.spec.budget},
                     {"seed", e.spec.seed}});
  }
  j["tasks"] = std::move(tasks);
  return j;
}

Suite write_suite(const std::vector<BuiltTask>& tasks, const SuiteParams& params, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir / "scenes");
  Suite suite;
  suite.split = params.split;
  suite.master_seed = params.master_seed;
  suite.root = dir;
  for (const auto& t : tasks) {
    save_scene(t.world, dir / t.entry.scene_file);
    suite.tasks.push_back(t.entry);
  }
  std::ofstream out(dir / kSuiteIndexFile, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write suite index in " + dir.string());
  out << suite_to_json(suite).dump(1) << "\n";
  return suite;
}

Suite load_suite(const std::filesystem::path& path) {
  const auto idx = index_path(path);
  const auto j = read_json(idx);
  if (!j.is_object() || j.value("format", "") != kSuiteFormat)
    throw std::runtime_error(idx.string() + ": not a " + std::string(kSuiteFormat) + " file");
  Suite suite;
  suite.root = idx.parent_path();
  const auto split = split_from_string(j.at("split").get<std::string>());
  if (!split) throw std::runtime_error(idx.string() + ": unknown split");
  suite.split = *split;
  suite.master_seed = j.at("master_seed").get<std::uint64_t>();
  for (const auto& t : j.at("tasks")) {
    try {
      suite.tasks.push_back(entry_from_json(t));
    } catch (const nlohmann::json::exception& e) {
      throw std::runtime_error(idx.string() + ": malformed task record " + t.dump() + ": " + e.what());
    }
  }
  return suite;
}

World load_task_world(const Suite& suite, const SuiteEntry& entry) { return load_scene(suite.root / entry.scene_file); }

std::vector<SuiteProblem> validate_suite(const std::filesystem::path& path) {
  std::vector<SuiteProblem> problems;
  const auto idx = index_path(path);
  nlohmann::json j;
  try {
    j = read_json(idx);
  } catch (const std::exception& e) {
    problems.push_back({"suite", e.what()});
    return problems;
  }
  if (!j.is_object()) return {{"suite", "index is not a JSON object"}};
  if (j.value("format", "") != kSuiteFormat) problems.push_back({"suite", "missing or wrong format tag"});
  if (!j.contains("split") || !j["split"].is_string() || !split_from_string(j["split"].get<std::string>()))
    problems.push_back({"suite", "missing or unknown split"});
  if (!j.contains("master_seed") || !j["master_seed"].is_number_unsigned())
    problems.push_back({"suite", "missing master_seed"});
  if (!j.contains("tasks") || !j["tasks"].is_array()) {
    problems.push_back({"suite", "missing tasks array"});
    return problems;
  }

  std::set<std::string> seen;
  std::size_t index = 0;
  for (const auto& t : j["tasks"]) {
    const std::string fallback = "task#" + std::to_string(index++);
    const std::string record = t.is_object() && t.contains("task_id") && t["task_id"].is_string()
                                   ? t["task_id"].get<std::string>()
                                   : fallback;
    SuiteEntry e;
    try {
      e = entry_from_json(t);
    } catch (const nlohmann::json::exception& ex) {
      problems.push_back({record, std::string("malformed record: ") + ex.what()});
      continue;
    }
    if (!seen.insert(e.task_id).second) problems.push_back({record, "duplicate task id"});
    if (e.spec.budget <= 0) problems.push_back({record, "budget must be positive"});
    World world;
    try {
      world = load_scene(idx.parent_path() / e.scene_file);
    } catch (const std::exception& ex) {
      problems.push_back({record, std::string("scene: ") + ex.what()});
      continue;
    }
    if (auto err = check_task(world, e.spec)) problems.push_back({record, *err});
    if (auto err = check_world_invariants(world, 1 << 20)) problems.push_back({record, *err});
  }
  return problems;
}

}  // namespace tc
