#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "tc/sim/simulator.hpp"

namespace tc {

inline constexpr const char* kTraceFormat = "tctrace/1";

class TraceFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ObjectPose {
  int id = 0;
  Vec2 pose;
  bool resting = true;
  std::optional<int> contained_in;

  bool operator==(const ObjectPose&) const = default;
};

struct TraceHeader {
  std::string scene_id;
  std::string task_id;
  std::string agent;
  std::uint64_t seed = 0;
  int budget = 0;
  int required = 0;
  Vec2 pose;
  double heading_deg = 0.0;
  std::vector<ObjectPose> objects;
};

struct TraceEnd {
  int transported = 0;
  int required = 0;
  int steps = 0;
  std::string terminal;  // "budget" or "complete"
  std::vector<ObjectPose> objects;
};

// A trace is JSON lines: one header record, one record per action, one end
// record.
struct Trace {
  TraceHeader header;
  std::vector<StepEvent> steps;
  std::optional<TraceEnd> end;
};

std::vector<ObjectPose> object_poses(const World& world);

nlohmann::json action_to_json(const Action& a);
Action action_from_json(const nlohmann::json& j);

class TraceWriter {
 public:
  explicit TraceWriter(std::ostream& out) : out_(out) {}
  void header(const TraceHeader& h);
  void step(const StepEvent& e);
  void end(const TraceEnd& e);

 private:
  std::ostream& out_;
};

// Throws TraceFormatError with the offending line number.
Trace parse_trace(std::istream& in);
Trace read_trace(const std::filesystem::path& path);

}  // namespace tc
