#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

namespace tc {

// Every tunable of the simulator, the agent-side maps and the planners.
// Config-file keys are given next to each field.
struct Config {
  double fov_deg = 90.0;            // "FOV"
  double range_m = 3.0;             // "range"
  double reach_radius_m = 0.75;     // "r_reach"
  int container_capacity = 3;       // "C_cap"
  double drop_probability = 0.5;    // "p_drop"
  double still_in_probability = 0.0;  // "p_still_in"
  int map_size = 128;               // "N"
  double occupied_threshold = 0.5;  // "occ_threshold"
  double goal_radius_m = 1.0;       // "r_goal"
  int budget = 1000;                // "budget"
  int replan_interval = 5;          // "k"
  int max_replans = 5;              // "R"

  double move_distance_m = 0.5;
  double rotate_step_deg = 15.0;

  // Throws std::invalid_argument naming the first bad field.
  void validate() const;
};

// Applies the keys present in `j` on top of `base`. Unknown keys are an error.
Config apply_config_json(Config base, const nlohmann::json& j);
Config load_config_file(const std::filesystem::path& path, Config base = {});
nlohmann::json config_to_json(const Config& c);

}  // namespace tc
