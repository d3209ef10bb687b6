#include "tc/core/config.hpp"

#include <fstream>
#include <stdexcept>

namespace tc {

void Config::validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(std::string("invalid config: ") + what);
  };
  require(fov_deg > 0.0 && fov_deg <= 360.0, "FOV must be in (0, 360]");
  require(range_m > 0.0, "range must be positive");
  require(reach_radius_m > 0.0, "r_reach must be positive");
  require(container_capacity >= 1, "C_cap must be >= 1");
  require(drop_probability >= 0.0 && drop_probability <= 1.0, "p_drop must be in [0, 1]");
  require(still_in_probability >= 0.0 && still_in_probability <= 1.0, "p_still_in must be in [0, 1]");
  require(map_size >= 8 && map_size % 2 == 0, "N must be an even number >= 8");
  require(occupied_threshold > 0.0 && occupied_threshold <= 1.0, "occ_threshold must be in (0, 1]");
  require(goal_radius_m >= 0.25, "r_goal must be >= one cell");
  require(budget >= 1, "budget must be >= 1");
  require(replan_interval >= 1, "k must be >= 1");
  require(max_replans >= 1, "R must be >= 1");
  require(move_distance_m > 0.0, "move distance must be positive");
  require(rotate_step_deg > 0.0 && rotate_step_deg < 360.0, "rotation step must be in (0, 360)");
}

Config apply_config_json(Config c, const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (key == "FOV") c.fov_deg = value.get<double>();
    else if (key == "range") c.range_m = value.get<double>();
    else if (key == "r_reach") c.reach_radius_m = value.get<double>();
    else if (key == "C_cap") c.container_capacity = value.get<int>();
    else if (key == "p_drop") c.drop_probability = value.get<double>();
    else if (key == "p_still_in") c.still_in_probability = value.get<double>();
    else if (key == "N") c.map_size = value.get<int>();
    else if (key == "occ_threshold") c.occupied_threshold = value.get<double>();
    else if (key == "r_goal") c.goal_radius_m = value.get<double>();
    else if (key == "budget") c.budget = value.get<int>();
    else if (key == "k") c.replan_interval = value.get<int>();
    else if (key == "R") c.max_replans = value.get<int>();
    else throw std::invalid_argument("unknown config key '" + key + "'");
  }
  c.validate();
  return c;
}

Config load_config_file(const std::filesystem::path& path, Config base) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error("malformed config file " + path.string() + ": " + e.what());
  }
  return apply_config_json(base, j);
}

nlohmann::json config_to_json(const Config& c) {
  return {{"FOV", c.fov_deg},      {"range", c.range_m},
          {"r_reach", c.reach_radius_m}, {"C_cap", c.container_capacity},
          {"p_drop", c.drop_probability}, {"p_still_in", c.still_in_probability},
          {"N", c.map_size},        {"occ_threshold", c.occupied_threshold},
          {"r_goal", c.goal_radius_m}, {"budget", c.budget},
          {"k", c.replan_interval}, {"R", c.max_replans}};
}

}  // namespace tc
