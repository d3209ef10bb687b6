#include <doctest.h>

#include <numeric>
#include <sstream>

#include "ascii_scene.hpp"
#include "tc/core/rng.hpp"
#include "tc/harness/episode.hpp"
#include "tc/harness/suite_runner.hpp"
#include "tc/planners/agents.hpp"
#include "tc/sim/trace.hpp"
#include "tc/taskgen/suite.hpp"

using namespace tc;
using tc::testing::ascii_scene;

namespace {

// Goal sofa at the right, two targets on the way.
const std::vector<std::string> kRoom = {
    "##############",
    "#............#",
    "#.T........GG#",
    "#@..T......GG#",
    "#............#",
    "##############",
};

class ScriptedPolicy : public AgentPolicy {
 public:
  explicit ScriptedPolicy(std::vector<Action> script) : script_(std::move(script)) {}
  std::string name() const override { return "scripted"; }
  void reset(const EpisodeContext&) override { i_ = 0; }
  Action act(const Observation&, const AgentMaps&) override {
    return script_[std::min(i_++, script_.size() - 1)];
  }

 private:
  std::vector<Action> script_;
  std::size_t i_ = 0;
};

std::vector<EpisodeInput> small_inputs() {
  SuiteParams p = SuiteParams::standard_test(77);
  p.houses = 2;
  p.tasks_per_house = 2;
  return episode_inputs(build_suite(p));
}

}  // namespace

TEST_CASE("agent factory") {
  CHECK(agent_names() == std::vector<std::string>{"frontier", "greedy-semantic", "random"});
  for (const auto& n : agent_names()) CHECK(make_agent(n)->name() == n);
  CHECK_THROWS_AS(make_agent("oracle"), std::invalid_argument);
}

TEST_CASE("hierarchical agents finish a small room") {
  for (const char* name : {"frontier", "greedy-semantic"}) {
    CAPTURE(name);
    auto s = ascii_scene(kRoom);
    auto agent = make_agent(name);
    Config cfg;
    cfg.budget = 400;
    const auto r = run_episode(s.world, s.spec, *agent, cfg, 5);
    CHECK(r.required == 2);
    CHECK(r.transported == 2);
    CHECK(r.transport_rate == 1.0);
    CHECK(r.terminal == "complete");
    CHECK(r.steps <= 400);
  }
}

TEST_CASE("episode stops at the budget") {
  auto s = ascii_scene(kRoom);
  ScriptedPolicy spin({Action::rotate_left()});
  Config cfg;
  cfg.budget = 37;
  const auto r = run_episode(s.world, s.spec, spin, cfg, 1);
  CHECK(r.steps == 37);
  CHECK(r.actions == 37);
  CHECK(r.transported == 0);
  CHECK(r.transport_rate == 0.0);
  CHECK(r.terminal == "budget");
}

TEST_CASE("contract violations raise") {
  auto s = ascii_scene(kRoom);
  Config cfg;
  ScriptedPolicy bad_id({Action::go_to_grasp(99)});
  CHECK_THROWS_AS(run_episode(s.world, s.spec, bad_id, cfg, 1), HarnessError);
  ScriptedPolicy far({Action::rotate_to({500.0, 500.0})});
  CHECK_THROWS_AS(run_episode(s.world, s.spec, far, cfg, 1), HarnessError);
  Action junk = Action::move_forward();
  junk.kind = static_cast<ActionKind>(42);
  ScriptedPolicy weird({junk});
  CHECK_THROWS_AS(run_episode(s.world, s.spec, weird, cfg, 1), HarnessError);
}

TEST_CASE("episode seed depends on master seed and task id only") {
  CHECK(episode_seed(1, "a") == episode_seed(1, "a"));
  CHECK(episode_seed(1, "a") != episode_seed(2, "a"));
  CHECK(episode_seed(1, "a") != episode_seed(1, "b"));
}

TEST_CASE("trace round trip") {
  auto s = ascii_scene(kRoom);
  auto agent = make_agent("frontier");
  Config cfg;
  cfg.budget = 300;
  std::stringstream buf;
  EpisodeOptions o;
  o.task_id = "t0";
  o.trace = &buf;
  const auto r = run_episode(s.world, s.spec, *agent, cfg, 5, o);
  const std::string text = buf.str();
  std::istringstream in(text);
  const Trace t = parse_trace(in);
  CHECK(t.header.task_id == "t0");
  CHECK(t.header.scene_id == s.world.scene_id());
  CHECK(t.header.agent == "frontier");
  CHECK(t.header.budget == 300);
  CHECK(t.header.objects == object_poses(s.world));
  CHECK(static_cast<int>(t.steps.size()) == r.actions);
  REQUIRE(t.end);
  CHECK(t.end->transported == r.transported);
  CHECK(t.end->steps == r.steps);
  CHECK(t.end->terminal == r.terminal);

  // Writing the parsed trace back gives the same bytes.
  std::ostringstream again;
  TraceWriter w(again);
  w.header(t.header);
  for (const auto& e : t.steps) w.step(e);
  w.end(*t.end);
  CHECK(again.str() == text);

  for (const auto& a : {Action::move_forward(), Action::rotate_to({1.5, -2.25}), Action::go_to_grasp(7),
                        Action::drop(), Action::put_in_container()})
    CHECK(action_from_json(action_to_json(a)) == a);
}

TEST_CASE("malformed traces are rejected with a line number") {
  auto s = ascii_scene(kRoom);
  ScriptedPolicy spin({Action::rotate_left()});
  Config cfg;
  cfg.budget = 3;
  std::stringstream buf;
  EpisodeOptions o;
  o.trace = &buf;
  run_episode(s.world, s.spec, spin, cfg, 1, o);
  std::vector<std::string> lines;
  for (std::string l; std::getline(buf, l);) lines.push_back(l);
  REQUIRE(lines.size() == 5);

  auto parse = [](const std::vector<std::string>& ls) {
    std::istringstream in(std::accumulate(ls.begin(), ls.end(), std::string(),
                                          [](std::string a, const std::string& b) { return a + b + "\n"; }));
    return parse_trace(in);
  };
  CHECK_NOTHROW(parse(lines));
  auto broken = lines;
  broken[2] = "{\"record\": ";
  try {
    parse(broken);
    FAIL("expected a format error");
  } catch (const TraceFormatError& e) {
    CHECK(std::string(e.what()).find("3") != std::string::npos);
  }
  auto headless = std::vector<std::string>(lines.begin() + 1, lines.end());
  CHECK_THROWS_AS(parse(headless), TraceFormatError);
  std::istringstream empty;
  CHECK_THROWS_AS(parse_trace(empty), TraceFormatError);
}

TEST_CASE("bootstrap interval") {
  const std::vector<double> same(20, 0.4);
  const auto [lo, hi] = bootstrap_ci(same, 500, 1);
  CHECK(lo == doctest::Approx(0.4));
  CHECK(hi == doctest::Approx(0.4));

  std::vector<double> v;
  Rng rng(4);
  for (int i = 0; i < 200; ++i) v.push_back(rng.uniform());
  const double mean = std::accumulate(v.begin(), v.end(), 0.0) / 200.0;
  const auto ci = bootstrap_ci(v, 2000, 9);
  CHECK(ci.first < mean);
  CHECK(ci.second > mean);
  // Standard error of a uniform mean over 200 draws is about 0.0204.
  CHECK(ci.second - ci.first == doctest::Approx(2 * 1.96 * 0.0204).epsilon(0.15));
  CHECK(bootstrap_ci(v, 2000, 9) == ci);
}

TEST_CASE("rate histogram") {
  const auto h = rate_histogram({0.0, 0.05, 0.1, 0.55, 0.99, 1.0, 1.0});
  REQUIRE(h.size() == 10);
  CHECK(h[0] == 2);
  CHECK(h[1] == 1);
  CHECK(h[5] == 1);
  CHECK(h[9] == 3);
  CHECK(std::accumulate(h.begin(), h.end(), 0) == 7);
}

TEST_CASE("suite summary does not depend on parallelism") {
  const auto inputs = small_inputs();
  SuiteRunOptions o;
  o.agent = "frontier";
  o.seed = 3;
  o.config.budget = 150;
  o.bootstrap_samples = 200;
  const auto a = run_suite(inputs, o);
  o.parallelism = 3;
  const auto b = run_suite(inputs, o);
  CHECK(summary_to_string(a) == summary_to_string(b));
  CHECK(summary_table(a) == summary_table(b));

  REQUIRE(a.episodes.size() == 4);
  CHECK(a.houses.size() == 2);
  CHECK(a.errors == 0);
  CHECK(a.budget == 150);
  double sum = 0.0;
  for (const auto& e : a.episodes) sum += e.transport_rate;
  CHECK(a.overall_mean == doctest::Approx(sum / 4.0));
  for (std::size_t i = 0; i < inputs.size(); ++i) CHECK(a.episodes[i].task_id == inputs[i].task_id);
  for (const auto& h : a.houses) {
    double hs = 0.0;
    int n = 0;
    for (const auto& e : a.episodes)
      if (e.house_id == h.house_id) hs += e.transport_rate, ++n;
    CHECK(h.episodes == n);
    CHECK(h.mean_transport_rate == doctest::Approx(hs / n));
  }

  const auto j = summary_to_json(a);
  CHECK(j["agent"] == "frontier");
  CHECK(j["episodes"].size() == 4);
  const std::string table = summary_table(a);
  for (const auto& e : a.episodes) CHECK(table.find(e.task_id) != std::string::npos);
  CHECK(table.find("overall mean") != std::string::npos);
}

TEST_CASE("a failing episode is reported, not fatal") {
  auto inputs = small_inputs();
  inputs.resize(2);
  SuiteRunOptions o;
  o.config.budget = 50;
  o.bootstrap_samples = 100;
  const auto s = run_suite(2, [&](std::size_t i) -> EpisodeInput {
    if (i == 1) throw std::runtime_error("scene file missing");
    return inputs[i];
  }, o);
  CHECK(s.episodes.size() == 2);
  CHECK(s.episodes[0].error.empty());
  CHECK(s.errors == 1);
  CHECK(s.episodes[1].error == "scene file missing");
  CHECK(s.episodes[1].terminal == "error");
}
