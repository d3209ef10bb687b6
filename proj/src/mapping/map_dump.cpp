#include "tc/mapping/map_dump.hpp"

#include <algorithm>
#include <cmath>

#include "tc/render/image.hpp"

namespace tc {
namespace {

template <typename T>
std::vector<std::uint8_t> to_gray(std::span<const T> values, int n, double scale) {
  std::vector<std::uint8_t> out(values.size());
  for (int y = 0; y < n; ++y)
    for (int x = 0; x < n; ++x) {
      const double v = static_cast<double>(values[static_cast<std::size_t>(y) * n + x]) * scale;
      out[static_cast<std::size_t>(n - 1 - y) * n + x] = static_cast<std::uint8_t>(std::lround(std::clamp(v, 0.0, 1.0) * 255.0));
    }
  return out;
}

}  // namespace

nlohmann::json map_metadata(const AgentMaps& maps) {
  const auto& occ = maps.occupancy();
  const auto& sem = maps.semantic();
  auto known = nlohmann::json::array();
  for (const auto& [id, k] : sem.known()) {
    known.push_back({{"id", id},
                     {"category", k.category},
                     {"kind", std::string(to_string(k.kind))},
                     {"cell", {k.cell.x, k.cell.y}},
                     {"transported", k.transported}});
  }
  return {{"size", occ.size()},
          {"cell_size", kCellSize},
          {"world_origin", {occ.world_origin().x, occ.world_origin().y}},
          {"occupied_threshold", occ.occupied_threshold()},
          {"explored_cells", occ.explored_count()},
          {"goal_category", maps.goal_category()},
          {"channels", {"occupied", "explored", "target", "container", "goal"}},
          {"known_objects", std::move(known)}};
}

std::vector<std::filesystem::path> dump_maps(const AgentMaps& maps, const std::filesystem::path& prefix) {
  const int n = maps.occupancy().size();
  std::vector<std::filesystem::path> written;
  auto emit = [&](const std::string& name, const std::vector<std::uint8_t>& gray) {
    std::filesystem::path p = prefix;
    p += "_" + name + ".pgm";
    write_pgm(p, n, n, gray);
    written.push_back(p);
  };
  emit("occupied", to_gray(maps.occupancy().occupied_channel(), n, 1.0));
  emit("explored", to_gray(maps.occupancy().explored_channel(), n, 1.0));
  emit("target", to_gray(maps.semantic().channel(SemanticChannel::Target), n, 1.0));
  emit("container", to_gray(maps.semantic().channel(SemanticChannel::Container), n, 1.0));
  emit("goal", to_gray(maps.semantic().channel(SemanticChannel::Goal), n, 1.0));
  std::filesystem::path meta = prefix;
  meta += ".json";
  write_file(meta, map_metadata(maps).dump(2) + "\n");
  written.push_back(meta);
  return written;
}

}  // namespace tc
