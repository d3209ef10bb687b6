#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "tc/world/world.hpp"

namespace tc {

inline constexpr const char* kSceneFormat = "tcscene/1";

class SceneFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Run-length encodes one terrain row, e.g. "H1 .38 H1".
std::string encode_terrain_row(const SceneGrid& grid, int y);

nlohmann::json scene_to_json(const World& world);
// Throws SceneFormatError describing the first malformed field.
World scene_from_json(const nlohmann::json& j);

std::string scene_to_string(const World& world);
World scene_from_string(const std::string& text);

void save_scene(const World& world, const std::filesystem::path& path);
World load_scene(const std::filesystem::path& path);

}  // namespace tc
