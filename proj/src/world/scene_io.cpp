#include "tc/world/scene_io.hpp"

#include <fstream>
#include <sstream>

namespace tc {
namespace {

char terrain_char(Terrain t) {
  switch (t) {
    case Terrain::Free: return '.';
    case Terrain::OccupiedHeavy: return 'H';
    case Terrain::OccupiedLight: return 'L';
    case Terrain::Furniture: return 'F';
  }
  return '?';
}

Terrain terrain_from_char(char c) {
  switch (c) {
    case '.': return Terrain::Free;
    case 'H': return Terrain::OccupiedHeavy;
    case 'L': return Terrain::OccupiedLight;
    case 'F': return Terrain::Furniture;
    default: throw SceneFormatError(std::string("unknown terrain tag '") + c + "'");
  }
}

nlohmann::json pose_json(Vec2 p) { return nlohmann::json::array({p.x, p.y}); }

Vec2 pose_from(const nlohmann::json& j, const char* what) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw SceneFormatError(std::string(what) + ": expected [x, y]");
  return {j[0].get<double>(), j[1].get<double>()};
}

template <typename T>
T field(const nlohmann::json& j, const char* key, const std::string& ctx) {
  if (!j.contains(key)) throw SceneFormatError(ctx + ": missing '" + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw SceneFormatError(ctx + ": bad type for '" + key + "'");
  }
}

}  // namespace

std::string encode_terrain_row(const SceneGrid& grid, int y) {
  std::string out;
  int x = 0;
  while (x < grid.width()) {
    const Terrain t = grid.terrain_unchecked({x, y});
    int run = 1;
    while (x + run < grid.width() && grid.terrain_unchecked({x + run, y}) == t) ++run;
    if (!out.empty()) out += ' ';
    out += terrain_char(t);
    out += std::to_string(run);
    x += run;
  }
  return out;
}

nlohmann::json scene_to_json(const World& world) {
  const auto& g = world.grid();
  nlohmann::json j;
  j["format"] = kSceneFormat;
  j["id"] = world.scene_id();
  j["width"] = g.width();
  j["height"] = g.height();
  j["cell_size"] = g.cell_size();

  auto rows = nlohmann::json::array();
  for (int y = 0; y < g.height(); ++y) rows.push_back(encode_terrain_row(g, y));
  j["terrain"] = std::move(rows);

  auto rooms = nlohmann::json::array();
  for (const auto& room : g.rooms()) {
    std::vector<Cell> cells = room.cells;
    std::sort(cells.begin(), cells.end());
    auto runs = nlohmann::json::array();
    for (std::size_t i = 0; i < cells.size();) {
      std::size_t k = i + 1;
      while (k < cells.size() && cells[k].y == cells[i].y && cells[k].x == cells[k - 1].x + 1) ++k;
      runs.push_back({cells[i].y, cells[i].x, cells[k - 1].x + 1});
      i = k;
    }
    rooms.push_back({{"id", room.id}, {"runs", std::move(runs)}});
  }
  j["rooms"] = std::move(rooms);

  auto doors = nlohmann::json::array();
  for (Cell c : g.doorways()) doors.push_back({c.x, c.y});
  j["doorways"] = std::move(doors);

  auto objects = nlohmann::json::array();
  for (const auto& o : world.objects()) {
    nlohmann::json oj{{"id", o.id},
                      {"category", o.category},
                      {"kind", std::string(to_string(o.kind))},
                      {"pose", pose_json(o.pose)},
                      {"mass", std::string(to_string(o.mass))},
                      {"resting", o.resting}};
    oj["contained_in"] = o.contained_in ? nlohmann::json(*o.contained_in) : nlohmann::json(nullptr);
    if (o.footprint) oj["footprint"] = {o.footprint->x0, o.footprint->y0, o.footprint->x1, o.footprint->y1};
    objects.push_back(std::move(oj));
  }
  j["objects"] = std::move(objects);

  j["goal"] = {{"furniture_id", world.goal().furniture_id}, {"radius", world.goal().radius_m}};

  const auto& a = world.agent();
  auto slots = nlohmann::json::array();
  for (const auto& s : a.arm_slots) slots.push_back(s ? nlohmann::json(*s) : nlohmann::json(nullptr));
  j["agent"] = {{"pose", pose_json(a.pose)},
                {"heading", a.heading_deg},
                {"arm_slots", std::move(slots)},
                {"steps_charged", a.steps_charged}};
  return j;
}

World scene_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw SceneFormatError("scene: expected a JSON object");
  const auto format = field<std::string>(j, "format", "scene");
  if (format != kSceneFormat) throw SceneFormatError("scene: unsupported format '" + format + "'");
  const auto id = field<std::string>(j, "id", "scene");
  const int width = field<int>(j, "width", "scene");
  const int height = field<int>(j, "height", "scene");
  if (width <= 0 || height <= 0) throw SceneFormatError("scene: non-positive dimensions");
  if (std::abs(field<double>(j, "cell_size", "scene") - kCellSize) > 1e-12)
    throw SceneFormatError("scene: cell_size must be 0.25");

  SceneGrid grid(width, height);
  const auto rows = field<std::vector<std::string>>(j, "terrain", "scene");
  if (static_cast<int>(rows.size()) != height) throw SceneFormatError("terrain: row count != height");
  for (int y = 0; y < height; ++y) {
    std::istringstream in(rows[static_cast<std::size_t>(y)]);
    std::string token;
    int x = 0;
    while (in >> token) {
      if (token.size() < 2) throw SceneFormatError("terrain row " + std::to_string(y) + ": bad token");
      const Terrain t = terrain_from_char(token[0]);
      int run = 0;
      try {
        run = std::stoi(token.substr(1));
      } catch (const std::exception&) {
        throw SceneFormatError("terrain row " + std::to_string(y) + ": bad run length");
      }
      if (run <= 0 || x + run > width) throw SceneFormatError("terrain row " + std::to_string(y) + ": overflow");
      for (int k = 0; k < run; ++k) grid.set_terrain({x + k, y}, t);
      x += run;
    }
    if (x != width) throw SceneFormatError("terrain row " + std::to_string(y) + ": length != width");
  }

  if (!j.contains("rooms") || !j["rooms"].is_array()) throw SceneFormatError("scene: missing 'rooms'");
  for (const auto& rj : j["rooms"]) {
    RoomRegion room;
    room.id = field<int>(rj, "id", "room");
    for (const auto& run : field<std::vector<std::array<int, 3>>>(rj, "runs", "room")) {
      for (int x = run[1]; x < run[2]; ++x) room.cells.push_back({x, run[0]});
    }
    try {
      grid.add_room(std::move(room));
    } catch (const std::invalid_argument& e) {
      throw SceneFormatError(std::string("room: ") + e.what());
    }
  }
  for (const auto& d : field<std::vector<std::array<int, 2>>>(j, "doorways", "scene")) {
    if (!grid.in_bounds({d[0], d[1]})) throw SceneFormatError("doorway outside scene");
    grid.add_doorway({d[0], d[1]});
  }

  std::vector<ObjectInstance> objects;
  if (!j.contains("objects") || !j["objects"].is_array()) throw SceneFormatError("scene: missing 'objects'");
  for (const auto& oj : j["objects"]) {
    ObjectInstance o;
    o.id = field<int>(oj, "id", "object");
    const std::string ctx = "object " + std::to_string(o.id);
    if (o.id != static_cast<int>(objects.size())) throw SceneFormatError(ctx + ": ids must be dense and ordered");
    o.category = field<std::string>(oj, "category", ctx);
    const auto kind = object_kind_from_string(field<std::string>(oj, "kind", ctx));
    if (!kind) throw SceneFormatError(ctx + ": unknown kind");
    o.kind = *kind;
    const auto mass = mass_class_from_string(field<std::string>(oj, "mass", ctx));
    if (!mass) throw SceneFormatError(ctx + ": unknown mass class");
    o.mass = *mass;
    if (!oj.contains("pose")) throw SceneFormatError(ctx + ": missing 'pose'");
    o.pose = pose_from(oj["pose"], ctx.c_str());
    o.resting = field<bool>(oj, "resting", ctx);
    if (oj.contains("contained_in") && !oj["contained_in"].is_null()) o.contained_in = field<int>(oj, "contained_in", ctx);
    if (oj.contains("footprint")) {
      const auto fp = field<std::array<int, 4>>(oj, "footprint", ctx);
      o.footprint = CellRect{fp[0], fp[1], fp[2], fp[3]};
    }
    objects.push_back(std::move(o));
  }

  AgentState agent;
  if (!j.contains("agent")) throw SceneFormatError("scene: missing 'agent'");
  const auto& aj = j["agent"];
  if (!aj.contains("pose")) throw SceneFormatError("agent: missing 'pose'");
  agent.pose = pose_from(aj["pose"], "agent");
  agent.heading_deg = field<double>(aj, "heading", "agent");
  if (aj.contains("arm_slots")) {
    const auto& slots = aj["arm_slots"];
    if (!slots.is_array() || slots.size() != 2) throw SceneFormatError("agent: arm_slots must have two entries");
    for (std::size_t i = 0; i < 2; ++i)
      if (!slots[i].is_null()) agent.arm_slots[i] = slots[i].get<int>();
  }
  if (aj.contains("steps_charged")) agent.steps_charged = field<int>(aj, "steps_charged", "agent");
  if (!grid.contains(agent.pose)) throw SceneFormatError("agent: pose outside scene");

  World world(id, std::move(grid), std::move(objects), agent);
  if (!j.contains("goal")) throw SceneFormatError("scene: missing 'goal'");
  const int goal_id = field<int>(j["goal"], "furniture_id", "goal");
  const double radius = field<double>(j["goal"], "radius", "goal");
  if (goal_id >= 0) {
    try {
      world.set_goal(make_goal_zone(world, goal_id, radius));
    } catch (const std::invalid_argument& e) {
      throw SceneFormatError(std::string("goal: ") + e.what());
    }
  }
  return world;
}

std::string scene_to_string(const World& world) { return scene_to_json(world).dump(1) + "\n"; }

World scene_from_string(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw SceneFormatError(std::string("scene: malformed JSON: ") + e.what());
  }
  return scene_from_json(j);
}

void save_scene(const World& world, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write scene file " + path.string());
  out << scene_to_string(world);
}

World load_scene(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open scene file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return scene_from_string(ss.str());
}

}  // namespace tc
