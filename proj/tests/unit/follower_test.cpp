#include <doctest.h>

#include "ascii_scene.hpp"
#include "oracles.hpp"
#include "tc/core/rng.hpp"
#include "tc/planners/path_follower.hpp"
#include "tc/sim/simulator.hpp"
#include "tc/taskgen/task.hpp"

using namespace tc;
using tc::testing::ascii_scene;

namespace {

struct Walk {
  FollowState state;
  int collisions = 0;
  int steps = 0;
};

Walk walk_to(Simulator& sim, Cell world_goal, double tol = 0.375) {
  const auto& occ = sim.maps().occupancy();
  const Cell goal = occ.to_map(world_goal);
  const Vec2 end = cell_center(world_goal);
  PathFollower f(goal, [end, tol](Vec2 p) { return distance(p, end) <= tol; }, follow_params(sim.config()));
  Walk w{};
  while (!sim.done()) {
    const auto a = f.next(sim.observation(), sim.maps().occupancy());
    if (!a) break;
    const ActionStatus s = sim.execute(*a);
    w.collisions += s == ActionStatus::Collision;
    f.report(s);
  }
  w.state = f.state();
  w.steps = sim.steps();
  return w;
}

}  // namespace

TEST_CASE("through a one-cell doorway in unexplored space") {
  auto s = ascii_scene({
      "###########",
      "#........T#",
      "#.........#",
      "#####.#####",
      "#.........#",
      "#@........#",
      "###########",
  }, 0.0);
  Config cfg;
  Simulator sim(s.world, s.spec, cfg, 1);
  const Walk w = walk_to(sim, {5, 5});
  CHECK(w.state == FollowState::Arrived);
  CHECK(w.collisions == 0);
  CHECK(w.steps < 60);
}

TEST_CASE("no path means failure without moving") {
  auto s = ascii_scene({
      "#######",
      "#..#.T#",
      "#@.#..#",
      "#######",
  });
  Simulator sim(s.world, s.spec, {}, 1);
  // Cell (4,1) is walled off; once the wall is seen there is no way round.
  for (int i = 0; i < 24; ++i) sim.rotate_left();
  const Vec2 before = sim.observation().pose;
  const Walk w = walk_to(sim, {4, 1});
  CHECK(w.state == FollowState::Failed);
  CHECK(distance(sim.observation().pose, before) < 0.6);
}

TEST_CASE("walks in generated houses never bump into anything") {
  Rng rng(31);
  int arrived = 0, total = 0, collisions = 0;
  for (int h = 0; h < 8; ++h) {
    const auto task = populate_task(generate_house(mix_seed(41, static_cast<std::uint64_t>(h))), 2);
    const auto reach = testing::flood_fill(task.world, to_cell(task.world.agent().pose));
    const auto& g = task.world.grid();
    for (int k = 0; k < 6; ++k) {
      Cell goal;
      do goal = g.cell_at(static_cast<std::size_t>(rng.uniform_int(0, static_cast<int>(g.cell_count()) - 1)));
      while (!reach[g.index(goal)]);
      Config cfg;
      cfg.budget = 2000;
      TaskSpec spec = task.spec;
      spec.budget = cfg.budget;
      Simulator sim(task.world, spec, cfg, 7);
      const Walk w = walk_to(sim, goal, 0.45);
      ++total;
      arrived += w.state == FollowState::Arrived;
      collisions += w.collisions;
    }
  }
  CHECK(collisions == 0);
  CHECK(arrived >= total * 9 / 10);
  MESSAGE(arrived << "/" << total << " arrived");
}

TEST_CASE("sweep classification") {
  OccupancyMap m(16, {8, 8});
  for (int x = 0; x < 16; ++x) m.record({x, 8}, false);
  m.record({12, 8}, true);
  const Vec2 a = m.world_center({2, 8});
  CHECK(sweep_known_free(m, a, m.world_center({6, 8})) == Sweep::Free);
  CHECK(sweep_known_free(m, a, m.world_center({13, 8})) == Sweep::Blocked);
  std::optional<Cell> unseen;
  CHECK(sweep_known_free(m, a, m.world_center({4, 9}), &unseen) == Sweep::Unknown);
  REQUIRE(unseen);
  CHECK_FALSE(m.is_explored(*unseen));
  CHECK(segment_clear(m, a, m.world_center({4, 9})));
  CHECK_FALSE(segment_clear(m, a, m.world_center({13, 8})));
}
