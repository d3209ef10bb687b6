#include <doctest.h>

#include <algorithm>
#include <set>

#include "ascii_scene.hpp"
#include "tc/core/rng.hpp"
#include "tc/planners/exploration.hpp"
#include "tc/sim/observation.hpp"

using namespace tc;
using tc::testing::ascii_scene;

namespace {

AgentMaps seen(const tc::testing::AsciiScene& s, double fov = 359.0, double range = 10.0) {
  AgentMaps maps(64, s.world.agent().pose, "sofa");
  maps.integrate(observe(s.world, {fov, range}));
  return maps;
}

}  // namespace

TEST_CASE("frontier sampling is uniform over the frontier and respects exclusions") {
  auto s = ascii_scene({
      "###########",
      "#.........#",
      "#.........#",
      "#@........#",
      "###########",
  });
  const AgentMaps maps = seen(s, 90.0, 1.0);
  const auto& occ = maps.occupancy();
  const auto frontier = frontier_cells(occ);
  REQUIRE(frontier.size() >= 2);

  Rng rng(3);
  std::map<Cell, int> hits;
  const int n = 4000;
  for (int i = 0; i < n; ++i) ++hits[*explore_frontier(occ, rng)];
  CHECK(hits.size() == frontier.size());
  const double expect = static_cast<double>(n) / static_cast<double>(frontier.size());
  for (const auto& [c, k] : hits) {
    CHECK(std::binary_search(frontier.begin(), frontier.end(), c));
    CHECK(std::abs(k - expect) < 5.0 * std::sqrt(expect));
  }

  std::set<Cell> all(frontier.begin(), frontier.end());
  CHECK_FALSE(explore_frontier(occ, rng, all).has_value());
  all.erase(frontier.front());
  CHECK(explore_frontier(occ, rng, all) == frontier.front());
}

TEST_CASE("nearest by path prefers the lower id on a tie") {
  // Targets 0 and 1 are three cells either side of the agent.
  auto s = ascii_scene({
      "#########",
      "#T..@..T#",
      "#########",
  }, 90.0);
  const AgentMaps maps = seen(s);
  const Cell from = maps.occupancy().map_cell(s.world.agent().pose);
  const auto c = nearest_by_path(maps, from, ObjectKind::Target);
  REQUIRE(c);
  CHECK(c->id == 0);
  CHECK(c->cost == doctest::Approx(3.0));
  CHECK(nearest_by_path(maps, from, ObjectKind::Target, {0})->id == 1);
  CHECK_FALSE(nearest_by_path(maps, from, ObjectKind::Target, {0, 1}));
  CHECK_FALSE(nearest_by_path(maps, from, ObjectKind::Container));
}

TEST_CASE("path cost and straight-line distance can disagree") {
  // Target 1 is three cells right of the agent; target 0 is two cells up but
  // behind a wall, eight moves away.
  auto s = ascii_scene({
      "#########",
      "#...T...#",
      "#.#####.#",
      "#...@..T#",
      "#########",
  }, 90.0);
  const Vec2 start = s.world.agent().pose;
  AgentMaps maps(64, start, "sofa");
  maps.integrate(observe(s.world, {359.0, 10.0}));
  s.world.agent().pose = start + Vec2{0.25, 0.5};
  maps.integrate(observe(s.world, {359.0, 10.0}));
  s.world.agent().pose = start;
  REQUIRE(maps.semantic().find(0));
  REQUIRE(maps.semantic().find(1));

  const Cell from = maps.occupancy().map_cell(start);
  CHECK(nearest_by_distance(maps, from, ObjectKind::Target)->id == 0);
  const auto by_path = nearest_by_path(maps, from, ObjectKind::Target);
  REQUIRE(by_path);
  CHECK(by_path->id == 1);
  CHECK(by_path->cost == doctest::Approx(3.0));
}

TEST_CASE("greedy semantic goes for the needed object before the frontier") {
  auto s = ascii_scene({
      "##########",
      "#........#",
      "#@..T..C.#",
      "#........#",
      "##########",
  });
  const AgentMaps maps = seen(s);
  const Cell from = maps.occupancy().map_cell(s.world.agent().pose);
  Rng rng(1);
  const auto t = explore_greedy_semantic(maps, SubGoalTag::PickUpObject, from, rng);
  REQUIRE(t);
  CHECK(*t == maps.semantic().find(0)->cell);
  const auto c = explore_greedy_semantic(maps, SubGoalTag::PickUpContainer, from, rng);
  REQUIRE(c);
  CHECK(*c == maps.semantic().find(1)->cell);
  // No goal furniture known: placement falls back to the frontier (empty
  // here, since everything is in view).
  CHECK(placement_cells(maps).empty());
}

TEST_CASE("random agent drops only inside the known goal area") {
  auto s = ascii_scene({
      "##########",
      "#........#",
      "#.@...GG.#",
      "#........#",
      "##########",
  });
  AgentMaps maps = seen(s);
  Observation obs = observe(s.world, {90.0, 3.0});
  Rng rng(9);
  for (int i = 0; i < 200; ++i) {
    const Action a = random_agent_step(obs, maps, rng, 1.0);
    CHECK(a.kind != ActionKind::Drop);
    CHECK(a.kind != ActionKind::PutInContainer);
  }
}
