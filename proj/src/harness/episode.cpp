#include "tc/harness/episode.hpp"

#include <cmath>
#include <ostream>

#include "tc/core/rng.hpp"
#include "tc/mapping/map_dump.hpp"
#include "tc/sim/simulator.hpp"
#include "tc/sim/trace.hpp"

namespace tc {
namespace {

void check_action(const Action& a, const World& world) {
  if (static_cast<int>(a.kind) >= kActionKindCount)
    throw HarnessError("agent emitted an action outside the action space");
  if (a.kind == ActionKind::GoToGrasp && !world.has_object(a.object))
    throw HarnessError("agent asked to grasp unknown object " + std::to_string(a.object));
  if (a.kind == ActionKind::RotateTo && (!std::isfinite(a.target.x) || !std::isfinite(a.target.y) ||
                                         !world.grid().contains(a.target)))
    throw HarnessError("agent rotated toward a point outside the scene");
}

}  // namespace

std::uint64_t episode_seed(std::uint64_t master_seed, const std::string& task_id) {
  return mix_seed(master_seed, hash_string(task_id));
}

EpisodeResult run_episode(World world, TaskSpec task, AgentPolicy& agent, const Config& config, std::uint64_t seed,
                          const EpisodeOptions& options) {
  config.validate();
  task.budget = config.budget;
  if (world.goal().furniture_id >= 0 && std::abs(world.goal().radius_m - config.goal_radius_m) > 1e-12)
    world.set_goal(make_goal_zone(world, world.goal().furniture_id, config.goal_radius_m));

  EpisodeResult result;
  result.task_id = options.task_id.empty() ? world.scene_id() : options.task_id;
  result.house_id = options.house_id;
  result.required = task.total_required();
  result.trace_file = options.trace_file;

  const std::string scene_id = world.scene_id();
  Simulator sim(std::move(world), task, config, mix_seed(seed, 1));

  EpisodeContext ctx;
  ctx.budget = task.budget;
  ctx.required = result.required;
  ctx.goal_category = task.goal_category;
  ctx.config = config;
  ctx.seed = mix_seed(seed, 2);
  agent.reset(ctx);

  std::optional<TraceWriter> writer;
  if (options.trace) {
    writer.emplace(*options.trace);
    TraceHeader h;
    h.scene_id = scene_id;
    h.task_id = result.task_id;
    h.agent = agent.name();
    h.seed = seed;
    h.budget = task.budget;
    h.required = result.required;
    h.pose = sim.scene_state().agent().pose;
    h.heading_deg = sim.scene_state().agent().heading_deg;
    h.objects = object_poses(sim.scene_state());
    writer->header(h);
  }

  while (!sim.done()) {
    const Action a = agent.act(sim.observation(), sim.maps());
    check_action(a, sim.scene_state());
    const ActionStatus s = sim.execute(a);
    if (!is_valid_status(s) || s == ActionStatus::Ongoing) throw HarnessError("engine returned an invalid status");
    agent.feedback(a, s);
    if (writer) writer->step(sim.last_event());
  }

  result.transported = sim.transported();
  result.steps = sim.steps();
  result.actions = sim.actions_executed();
  result.transport_rate = result.required > 0 ? static_cast<double>(result.transported) / result.required : 0.0;
  result.terminal = sim.success() ? "complete" : "budget";
  if (options.map_dump_prefix) dump_maps(sim.maps(), *options.map_dump_prefix);
  if (writer) {
    TraceEnd e;
    e.transported = result.transported;
    e.required = result.required;
    e.steps = result.steps;
    e.terminal = result.terminal;
    e.objects = object_poses(sim.scene_state());
    writer->end(e);
  }
  return result;
}

}  // namespace tc
