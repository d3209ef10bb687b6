#include "tc/taskgen/house.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <numeric>

#include "tc/core/rng.hpp"

namespace tc {
namespace {

struct FurnitureSpec {
  const char* category;
  int short_side;
  int long_side;
};

constexpr std::array<FurnitureSpec, 10> kFurniture = {{
    {"bed", 6, 8},
    {"sofa", 3, 7},
    {"table", 4, 5},
    {"coffee_table", 2, 4},
    {"bench", 2, 5},
    {"shelf", 2, 4},
    {"cabinet", 2, 3},
    {"desk", 3, 5},
    {"dresser", 2, 4},
    {"wardrobe", 2, 6},
}};

constexpr std::array<const char*, 3> kHeavyClutter = {"crate", "planter", "stove"};

struct Adjacency {
  int a = 0;
  int b = 0;
  bool vertical_wall = false;  // wall runs along y at x = wall
  int wall = 0;
  int lo = 0;  // usable door range [lo, hi) along the wall
  int hi = 0;
};

int find_root(std::vector<int>& parent, int i) {
  while (parent[static_cast<std::size_t>(i)] != i) {
    parent[static_cast<std::size_t>(i)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(i)])];
    i = parent[static_cast<std::size_t>(i)];
  }
  return i;
}

std::vector<CellRect> partition(Rng& rng, const HouseParams& p, int room_count) {
  std::vector<CellRect> regions{{1, 1, p.width - 1, p.height - 1}};
  const int min_side = p.min_room_side;
  while (static_cast<int>(regions.size()) < room_count) {
    // Split the largest region that still can be split.
    int best = -1;
    for (int i = 0; i < static_cast<int>(regions.size()); ++i) {
      const auto& r = regions[static_cast<std::size_t>(i)];
      const bool splittable = r.width() >= 2 * min_side + 1 || r.height() >= 2 * min_side + 1;
      if (splittable && (best < 0 || r.area() > regions[static_cast<std::size_t>(best)].area())) best = i;
    }
    if (best < 0) return {};
    const CellRect r = regions[static_cast<std::size_t>(best)];
    const bool can_x = r.width() >= 2 * min_side + 1;
    const bool can_y = r.height() >= 2 * min_side + 1;
    bool split_x = can_x;
    if (can_x && can_y) split_x = r.width() == r.height() ? rng.bernoulli(0.5) : r.width() > r.height();
    CellRect first = r;
    CellRect second = r;
    if (split_x) {
      const int wall = rng.uniform_int(r.x0 + min_side, r.x1 - min_side - 1);
      first.x1 = wall;
      second.x0 = wall + 1;
    } else {
      const int wall = rng.uniform_int(r.y0 + min_side, r.y1 - min_side - 1);
      first.y1 = wall;
      second.y0 = wall + 1;
    }
    regions[static_cast<std::size_t>(best)] = first;
    regions.push_back(second);
  }
  return regions;
}

std::vector<Adjacency> adjacencies(const std::vector<CellRect>& rooms, int door_width) {
  std::vector<Adjacency> out;
  for (int i = 0; i < static_cast<int>(rooms.size()); ++i) {
    for (int k = i + 1; k < static_cast<int>(rooms.size()); ++k) {
      const auto& a = rooms[static_cast<std::size_t>(i)];
      const auto& b = rooms[static_cast<std::size_t>(k)];
      Adjacency adj{i, k, false, 0, 0, 0};
      if (a.x1 + 1 == b.x0 || b.x1 + 1 == a.x0) {
        adj.vertical_wall = true;
        adj.wall = a.x1 + 1 == b.x0 ? a.x1 : b.x1;
        adj.lo = std::max(a.y0, b.y0) + 1;
        adj.hi = std::min(a.y1, b.y1) - 1;
      } else if (a.y1 + 1 == b.y0 || b.y1 + 1 == a.y0) {
        adj.wall = a.y1 + 1 == b.y0 ? a.y1 : b.y1;
        adj.lo = std::max(a.x0, b.x0) + 1;
        adj.hi = std::min(a.x1, b.x1) - 1;
      } else {
        continue;
      }
      if (adj.hi - adj.lo >= door_width) out.push_back(adj);
    }
  }
  return out;
}

void carve_door(SceneGrid& grid, Rng& rng, const Adjacency& adj, int door_width) {
  const int start = rng.uniform_int(adj.lo, adj.hi - door_width);
  for (int k = 0; k < door_width; ++k) {
    const Cell c = adj.vertical_wall ? Cell{adj.wall, start + k} : Cell{start + k, adj.wall};
    grid.set_terrain(c, Terrain::Free);
    grid.add_doorway(c);
  }
}

bool near_doorway(const SceneGrid& grid, const CellRect& r, int margin) {
  for (Cell d : grid.doorways()) {
    if (d.x >= r.x0 - margin && d.x < r.x1 + margin && d.y >= r.y0 - margin && d.y < r.y1 + margin) return true;
  }
  return false;
}

bool all_traversable_connected(const World& world) {
  const auto& g = world.grid();
  std::optional<Cell> start;
  std::size_t free_count = 0;
  for (std::size_t i = 0; i < g.cell_count(); ++i) {
    const Cell c = g.cell_at(i);
    if (world.is_traversable(c)) {
      ++free_count;
      if (!start) start = c;
    }
  }
  if (!start) return false;
  const auto mask = reachable_mask(world, *start);
  return static_cast<std::size_t>(std::count(mask.begin(), mask.end(), 1)) == free_count;
}

double room_free_fraction(const World& world, const RoomRegion& room) {
  int free = 0;
  for (Cell c : room.cells)
    if (world.is_traversable(c)) ++free;
  return room.cells.empty() ? 0.0 : static_cast<double>(free) / static_cast<double>(room.cells.size());
}

// Places one furniture block against a random wall of `room`. Returns false if
// no valid spot was found.
bool place_furniture(World& world, Rng& rng, const CellRect& room, const RoomRegion& region, const HouseParams& p) {
  for (int attempt = 0; attempt < 40; ++attempt) {
    const auto& spec = kFurniture[static_cast<std::size_t>(rng.uniform_int(0, static_cast<int>(kFurniture.size()) - 1))];
    const bool rotated = rng.bernoulli(0.5);
    const int w = rotated ? spec.long_side : spec.short_side;
    const int h = rotated ? spec.short_side : spec.long_side;
    if (w > room.width() - 2 || h > room.height() - 2) continue;
    CellRect fp;
    switch (rng.uniform_int(0, 3)) {
      case 0: {  // against the low-x wall
        const int y = rng.uniform_int(room.y0, room.y1 - h);
        fp = {room.x0, y, room.x0 + w, y + h};
        break;
      }
      case 1: {
        const int y = rng.uniform_int(room.y0, room.y1 - h);
        fp = {room.x1 - w, y, room.x1, y + h};
        break;
      }
      case 2: {
        const int x = rng.uniform_int(room.x0, room.x1 - w);
        fp = {x, room.y0, x + w, room.y0 + h};
        break;
      }
      default: {
        const int x = rng.uniform_int(room.x0, room.x1 - w);
        fp = {x, room.y1 - h, x + w, room.y1};
        break;
      }
    }
    if (near_doorway(world.grid(), fp, 2)) continue;
    // Keep a one-cell gap to existing blockers.
    bool clash = false;
    for (int y = fp.y0 - 1; y < fp.y1 + 1 && !clash; ++y)
      for (int x = fp.x0 - 1; x < fp.x1 + 1 && !clash; ++x) {
        const Cell c{x, y};
        if (!room.contains(c)) continue;
        if (!world.is_traversable(c)) clash = true;
      }
    if (clash) continue;

    SceneGrid grid = world.grid();
    grid.fill(fp, Terrain::Furniture);
    std::vector<ObjectInstance> objs = world.objects();
    ObjectInstance f;
    f.id = static_cast<int>(objs.size());
    f.category = spec.category;
    f.kind = ObjectKind::Furniture;
    f.mass = MassClass::Heavy;
    f.footprint = fp;
    f.pose = fp.center();
    objs.push_back(f);
    World next(world.scene_id(), std::move(grid), std::move(objs), world.agent());
    if (room_free_fraction(next, region) < p.min_free_fraction) continue;
    if (!all_traversable_connected(next)) continue;
    world = std::move(next);
    return true;
  }
  return false;
}

bool place_single_cell(World& world, Rng& rng, const CellRect& room, bool heavy_object) {
  for (int attempt = 0; attempt < 40; ++attempt) {
    const Cell c{rng.uniform_int(room.x0 + 1, room.x1 - 2), rng.uniform_int(room.y0 + 1, room.y1 - 2)};
    if (near_doorway(world.grid(), {c.x, c.y, c.x + 1, c.y + 1}, 2)) continue;
    bool clash = false;
    for (int dy = -1; dy <= 1 && !clash; ++dy)
      for (int dx = -1; dx <= 1 && !clash; ++dx)
        if (!world.is_traversable({c.x + dx, c.y + dy})) clash = true;
    if (clash) continue;
    SceneGrid grid = world.grid();
    std::vector<ObjectInstance> objs = world.objects();
    if (heavy_object) {
      ObjectInstance o;
      o.id = static_cast<int>(objs.size());
      o.category = kHeavyClutter[static_cast<std::size_t>(rng.uniform_int(0, static_cast<int>(kHeavyClutter.size()) - 1))];
      o.kind = ObjectKind::Clutter;
      o.mass = MassClass::Heavy;
      o.pose = cell_center(c);
      objs.push_back(o);
    } else {
      grid.set_terrain(c, Terrain::OccupiedLight);
    }
    World next(world.scene_id(), std::move(grid), std::move(objs), world.agent());
    if (!all_traversable_connected(next)) continue;
    world = std::move(next);
    return true;
  }
  return false;
}

bool has_unique_goal_furniture(const World& world) {
  for (auto category : kGoalCategories) {
    int n = 0;
    for (const auto& o : world.objects())
      if (o.kind == ObjectKind::Furniture && o.category == category) ++n;
    if (n == 1) return true;
  }
  return false;
}

std::optional<World> try_generate(Rng& rng, const HouseParams& p, const std::string& scene_id) {
  const int room_count = rng.uniform_int(p.min_rooms, p.max_rooms);
  const auto rects = partition(rng, p, room_count);
  if (static_cast<int>(rects.size()) != room_count) return std::nullopt;

  SceneGrid grid(p.width, p.height, Terrain::OccupiedHeavy);
  for (int i = 0; i < room_count; ++i) {
    const auto& r = rects[static_cast<std::size_t>(i)];
    grid.fill(r, Terrain::Free);
    RoomRegion region{i, {}};
    for (int y = r.y0; y < r.y1; ++y)
      for (int x = r.x0; x < r.x1; ++x) region.cells.push_back({x, y});
    grid.add_room(std::move(region));
  }

  auto adj = adjacencies(rects, p.door_width);
  rng.shuffle(adj);
  std::vector<int> parent(static_cast<std::size_t>(room_count));
  std::iota(parent.begin(), parent.end(), 0);
  for (const auto& e : adj) {
    const int ra = find_root(parent, e.a);
    const int rb = find_root(parent, e.b);
    if (ra != rb) {
      parent[static_cast<std::size_t>(ra)] = rb;
      carve_door(grid, rng, e, p.door_width);
    } else if (rng.bernoulli(p.extra_door_probability)) {
      carve_door(grid, rng, e, p.door_width);
    }
  }

  World world(scene_id, std::move(grid), {}, AgentState{});
  if (!rooms_connected(world)) return std::nullopt;

  for (int i = 0; i < room_count; ++i) {
    const auto& r = rects[static_cast<std::size_t>(i)];
    const RoomRegion region = world.grid().room(i);
    const int pieces = 1 + (rng.bernoulli(0.6) ? 1 : 0);
    for (int k = 0; k < pieces; ++k) place_furniture(world, rng, r, region, p);
    if (rng.bernoulli(0.3)) place_single_cell(world, rng, r, true);
    if (rng.bernoulli(0.3)) place_single_cell(world, rng, r, false);
  }
  if (!has_unique_goal_furniture(world)) return std::nullopt;
  if (check_house(world, p)) return std::nullopt;
  return world;
}

}  // namespace

std::vector<std::uint8_t> reachable_mask(const World& world, Cell start) {
  const auto& g = world.grid();
  std::vector<std::uint8_t> seen(g.cell_count(), 0);
  if (!g.in_bounds(start) || !world.is_traversable(start)) return seen;
  std::deque<Cell> queue{start};
  seen[g.index(start)] = 1;
  constexpr std::array<Cell, 4> kSteps{{{1, 0}, {-1, 0}, {0, 1}, {0, -1}}};
  while (!queue.empty()) {
    const Cell c = queue.front();
    queue.pop_front();
    for (Cell d : kSteps) {
      const Cell n = c + d;
      if (!g.in_bounds(n) || seen[g.index(n)] || !world.is_traversable(n)) continue;
      seen[g.index(n)] = 1;
      queue.push_back(n);
    }
  }
  return seen;
}

bool rooms_connected(const World& world) {
  const auto& rooms = world.grid().rooms();
  if (rooms.empty()) return false;
  std::optional<Cell> start;
  for (Cell c : rooms.front().cells)
    if (world.is_traversable(c)) {
      start = c;
      break;
    }
  if (!start) return false;
  const auto mask = reachable_mask(world, *start);
  for (const auto& room : rooms) {
    const bool reached = std::any_of(room.cells.begin(), room.cells.end(),
                                     [&](Cell c) { return mask[world.grid().index(c)] != 0; });
    if (!reached) return false;
  }
  return true;
}

std::optional<std::string> check_house(const World& world, const HouseParams& p) {
  const auto& g = world.grid();
  const int n = static_cast<int>(g.rooms().size());
  if (n < p.min_rooms || n > p.max_rooms) return "room count " + std::to_string(n) + " out of range";
  if (!rooms_connected(world)) return std::string("rooms are not connected");
  if (!all_traversable_connected(world)) return std::string("traversable cells are not one component");
  for (const auto& room : g.rooms()) {
    if (room_free_fraction(world, room) < p.min_free_fraction)
      return "room " + std::to_string(room.id) + " is less than half free";
  }
  for (Cell d : g.doorways()) {
    if (g.room_of(d) >= 0) return std::string("doorway inside a room");
    if (!world.is_traversable(d)) return std::string("blocked doorway");
  }
  if (g.width() > p.map_size / 2 || g.height() > p.map_size / 2) return std::string("house exceeds the agent map");
  return std::nullopt;
}

World generate_house(std::uint64_t seed, const HouseParams& p, const std::string& scene_id) {
  if (p.width > p.map_size / 2 || p.height > p.map_size / 2) {
    throw GenerationError("house of " + std::to_string(p.width) + "x" + std::to_string(p.height) +
                          " cells does not fit an agent map of side " + std::to_string(p.map_size));
  }
  if (p.min_rooms < 1 || p.min_rooms > p.max_rooms) throw GenerationError("invalid room count range");
  Rng rng(seed);
  for (int attempt = 0; attempt < p.max_retries; ++attempt) {
    if (auto world = try_generate(rng, p, scene_id)) return std::move(*world);
  }
  throw GenerationError("could not generate a house satisfying the parameters after " +
                        std::to_string(p.max_retries) + " attempts");
}

}  // namespace tc
