#include "tc/mapping/maps.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace tc {

OccupancyMap::OccupancyMap(int size, Cell world_origin, double occupied_threshold)
    : size_(size), origin_(world_origin), threshold_(occupied_threshold) {
  if (size <= 0) throw std::invalid_argument("OccupancyMap: size must be positive");
  occupied_.assign(static_cast<std::size_t>(size) * size, 0.0f);
  explored_.assign(occupied_.size(), 0.0f);
}

void OccupancyMap::record(Cell m, bool occupied) {
  if (!in_bounds(m)) return;
  const std::size_t i = index(m);
  if (explored_[i] < 0.5f) ++explored_count_;
  explored_[i] = 1.0f;
  occupied_[i] = occupied ? 1.0f : 0.0f;
}

SemanticMap::SemanticMap(int size) : size_(size) {
  data_.assign(3 * static_cast<std::size_t>(size) * size, 0);
}

std::uint8_t SemanticMap::at(SemanticChannel ch, Cell m) const {
  if (m.x < 0 || m.y < 0 || m.x >= size_ || m.y >= size_) return 0;
  return data_[static_cast<std::size_t>(ch) * size_ * size_ + static_cast<std::size_t>(m.y) * size_ + m.x];
}

std::span<const std::uint8_t> SemanticMap::channel(SemanticChannel ch) const {
  const std::size_t plane = static_cast<std::size_t>(size_) * size_;
  return std::span<const std::uint8_t>(data_).subspan(static_cast<std::size_t>(ch) * plane, plane);
}

const KnownObject* SemanticMap::find(int id) const {
  auto it = known_.find(id);
  return it == known_.end() ? nullptr : &it->second;
}

void SemanticMap::stamp(SemanticChannel ch, Cell m, std::uint8_t v) {
  if (m.x < 0 || m.y < 0 || m.x >= size_ || m.y >= size_) return;
  data_[static_cast<std::size_t>(ch) * size_ * size_ + static_cast<std::size_t>(m.y) * size_ + m.x] = v;
}

AgentMaps::AgentMaps(int size, Vec2 start_pose, std::string goal_category, double occupied_threshold)
    : occupancy_(size, to_cell(start_pose), occupied_threshold),
      semantic_(size),
      goal_category_(std::move(goal_category)) {}

void AgentMaps::integrate(const Observation& obs) {
  for (const auto& vc : obs.visible_cells) occupancy_.record(occupancy_.to_map(vc.cell), vc.occupied);

  auto& known = semantic_.known_;
  // Clear the object channels where the registry currently stamps them.
  for (const auto& [id, k] : known) {
    semantic_.stamp(SemanticChannel::Target, k.cell, 0);
    semantic_.stamp(SemanticChannel::Container, k.cell, 0);
  }

  for (const auto& slot : obs.arm_slots)
    if (slot) known.erase(*slot);
  for (int id : obs.container_contents) known.erase(id);

  std::set<Cell> visible_map_cells;
  for (const auto& vc : obs.visible_cells) visible_map_cells.insert(occupancy_.to_map(vc.cell));
  for (auto it = known.begin(); it != known.end();) {
    const bool movable = it->second.kind == ObjectKind::Target || it->second.kind == ObjectKind::Container;
    if (movable && visible_map_cells.count(it->second.cell) && !obs.sees(it->first)) {
      it = known.erase(it);
    } else {
      ++it;
    }
  }

  for (const auto& d : obs.detections) {
    if (d.kind == ObjectKind::Furniture) {
      if (d.category != goal_category_ || !d.footprint) continue;
      for (int y = d.footprint->y0; y < d.footprint->y1; ++y)
        for (int x = d.footprint->x0; x < d.footprint->x1; ++x) {
          const Cell m = occupancy_.to_map({x, y});
          if (!occupancy_.in_bounds(m)) continue;
          if (!semantic_.at(SemanticChannel::Goal, m)) semantic_.goal_cells_.push_back(m);
          semantic_.stamp(SemanticChannel::Goal, m, 1);
        }
      std::sort(semantic_.goal_cells_.begin(), semantic_.goal_cells_.end());
      continue;
    }
    if (d.kind != ObjectKind::Target && d.kind != ObjectKind::Container) continue;
    KnownObject k;
    k.id = d.id;
    k.category = d.category;
    k.kind = d.kind;
    k.pose = d.pose;
    k.cell = occupancy_.map_cell(d.pose);
    k.transported = d.in_goal_zone;
    k.contained = d.contained_in.has_value();
    known[d.id] = std::move(k);
  }

  for (const auto& [id, k] : known) {
    if (k.kind == ObjectKind::Target && !k.transported) semantic_.stamp(SemanticChannel::Target, k.cell, 1);
    if (k.kind == ObjectKind::Container) semantic_.stamp(SemanticChannel::Container, k.cell, 1);
  }
}

}  // namespace tc
