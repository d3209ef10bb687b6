#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "tc/mapping/maps.hpp"

namespace tc {

// Writes <prefix>_occupied.pgm, <prefix>_explored.pgm, <prefix>_target.pgm,
// <prefix>_container.pgm, <prefix>_goal.pgm and <prefix>.json. Returns the
// paths written, sidecar last. Map row 0 is the bottom image row.
std::vector<std::filesystem::path> dump_maps(const AgentMaps& maps, const std::filesystem::path& prefix);

nlohmann::json map_metadata(const AgentMaps& maps);

}  // namespace tc
