#include "tc/sim/trace.hpp"

#include <fstream>
#include <istream>
#include <ostream>

namespace tc {
namespace {

using nlohmann::json;

json vec_json(Vec2 p) { return json::array({p.x, p.y}); }

Vec2 vec_from(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw TraceFormatError("expected [x, y]");
  return {j[0].get<double>(), j[1].get<double>()};
}

json poses_json(const std::vector<ObjectPose>& poses) {
  auto arr = json::array();
  for (const auto& p : poses) {
    arr.push_back({{"id", p.id},
                   {"pose", vec_json(p.pose)},
                   {"resting", p.resting},
                   {"contained_in", p.contained_in ? json(*p.contained_in) : json(nullptr)}});
  }
  return arr;
}

std::vector<ObjectPose> poses_from(const json& j) {
  std::vector<ObjectPose> out;
  for (const auto& e : j) {
    ObjectPose p;
    p.id = e.at("id").get<int>();
    p.pose = vec_from(e.at("pose"));
    p.resting = e.at("resting").get<bool>();
    if (!e.at("contained_in").is_null()) p.contained_in = e.at("contained_in").get<int>();
    out.push_back(p);
  }
  return out;
}

}  // namespace

std::vector<ObjectPose> object_poses(const World& world) {
  std::vector<ObjectPose> out;
  for (const auto& o : world.objects()) {
    if (o.kind != ObjectKind::Target && o.kind != ObjectKind::Container) continue;
    out.push_back({o.id, o.pose, o.resting, o.contained_in});
  }
  return out;
}

json action_to_json(const Action& a) {
  json j{{"name", std::string(to_string(a.kind))}};
  if (a.kind == ActionKind::RotateTo) j["target"] = vec_json(a.target);
  if (a.kind == ActionKind::GoToGrasp) j["object"] = a.object;
  return j;
}

Action action_from_json(const json& j) {
  const auto kind = action_kind_from_string(j.at("name").get<std::string>());
  if (!kind) throw TraceFormatError("unknown action '" + j.at("name").get<std::string>() + "'");
  Action a;
  a.kind = *kind;
  if (a.kind == ActionKind::RotateTo) a.target = vec_from(j.at("target"));
  if (a.kind == ActionKind::GoToGrasp) a.object = j.at("object").get<int>();
  return a;
}

void TraceWriter::header(const TraceHeader& h) {
  json j{{"format", kTraceFormat},
         {"type", "header"},
         {"scene_id", h.scene_id},
         {"task_id", h.task_id},
         {"agent", h.agent},
         {"seed", h.seed},
         {"budget", h.budget},
         {"required", h.required},
         {"pose", vec_json(h.pose)},
         {"heading", h.heading_deg},
         {"objects", poses_json(h.objects)}};
  out_ << j.dump() << '\n';
}

void TraceWriter::step(const StepEvent& e) {
  auto wps = json::array();
  for (const auto& w : e.waypoints) wps.push_back(vec_json(w));
  json j{{"type", "step"},
         {"i", e.index},
         {"action", action_to_json(e.action)},
         {"status", std::string(to_string(e.status))},
         {"steps", e.steps_after},
         {"pose", vec_json(e.pose)},
         {"heading", e.heading_deg},
         {"transported", e.transported},
         {"waypoints", std::move(wps)}};
  out_ << j.dump() << '\n';
}

void TraceWriter::end(const TraceEnd& e) {
  json j{{"type", "end"},
         {"transported", e.transported},
         {"required", e.required},
         {"steps", e.steps},
         {"terminal", e.terminal},
         {"objects", poses_json(e.objects)}};
  out_ << j.dump() << '\n';
}

Trace parse_trace(std::istream& in) {
  Trace t;
  std::string line;
  int lineno = 0;
  bool have_header = false;
  int prev_steps = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const std::string where = "trace line " + std::to_string(lineno) + ": ";
    try {
      const json j = json::parse(line);
      const std::string type = j.at("type").get<std::string>();
      if (type == "header") {
        if (have_header) throw TraceFormatError("duplicate header");
        if (j.value("format", "") != kTraceFormat) throw TraceFormatError("not a tctrace/1 file");
        auto& h = t.header;
        h.scene_id = j.at("scene_id").get<std::string>();
        h.task_id = j.at("task_id").get<std::string>();
        h.agent = j.at("agent").get<std::string>();
        h.seed = j.at("seed").get<std::uint64_t>();
        h.budget = j.at("budget").get<int>();
        h.required = j.at("required").get<int>();
        h.pose = vec_from(j.at("pose"));
        h.heading_deg = j.at("heading").get<double>();
        h.objects = poses_from(j.at("objects"));
        have_header = true;
      } else if (type == "step") {
        if (!have_header) throw TraceFormatError("step before header");
        if (t.end) throw TraceFormatError("step after end");
        StepEvent e;
        e.index = j.at("i").get<int>();
        if (e.index != static_cast<int>(t.steps.size())) throw TraceFormatError("step index out of order");
        e.action = action_from_json(j.at("action"));
        const auto status = action_status_from_string(j.at("status").get<std::string>());
        if (!status) throw TraceFormatError("unknown status");
        e.status = *status;
        e.steps_before = prev_steps;
        e.steps_after = j.at("steps").get<int>();
        if (e.steps_after < prev_steps) throw TraceFormatError("step count decreased");
        prev_steps = e.steps_after;
        e.pose = vec_from(j.at("pose"));
        e.heading_deg = j.at("heading").get<double>();
        e.transported = j.at("transported").get<int>();
        for (const auto& w : j.at("waypoints")) e.waypoints.push_back(vec_from(w));
        t.steps.push_back(std::move(e));
      } else if (type == "end") {
        if (!have_header) throw TraceFormatError("end before header");
        TraceEnd e;
        e.transported = j.at("transported").get<int>();
        e.required = j.at("required").get<int>();
        e.steps = j.at("steps").get<int>();
        e.terminal = j.at("terminal").get<std::string>();
        e.objects = poses_from(j.at("objects"));
        t.end = std::move(e);
      } else {
        throw TraceFormatError("unknown record type '" + type + "'");
      }
    } catch (const TraceFormatError& e) {
      throw TraceFormatError(where + e.what());
    } catch (const json::exception& e) {
      throw TraceFormatError(where + e.what());
    }
  }
  if (!have_header) throw TraceFormatError("trace has no header");
  return t;
}

Trace read_trace(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw TraceFormatError("cannot open " + path.string());
  return parse_trace(in);
}

}  // namespace tc
