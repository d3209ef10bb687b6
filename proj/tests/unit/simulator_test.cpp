#include <doctest.h>

#include "ascii_scene.hpp"
#include "tc/sim/simulator.hpp"

using namespace tc;
using tc::testing::ascii_scene;

namespace {

// T id 0, C id 1, H id 2.
const std::vector<std::string> kShelf = {
    "#########",
    "#.......#",
    "#@.T.C.H#",
    "#.......#",
    "#########",
};

Simulator make(const std::vector<std::string>& rows, double heading, Config cfg = {}, std::uint64_t seed = 1) {
  auto s = ascii_scene(rows, heading);
  s.spec.budget = cfg.budget;
  return Simulator(std::move(s.world), std::move(s.spec), cfg, seed);
}

}  // namespace

TEST_CASE("move forward") {
  Simulator sim = make({
      "#####",
      "#..T#",
      "#...#",
      "#@..#",
      "#####",
  }, 90.0);
  const Vec2 start = sim.observation().pose;
  CHECK(sim.move_forward() == ActionStatus::Success);
  CHECK(sim.steps() == 1);
  CHECK(sim.observation().pose.y == doctest::Approx(start.y + 0.5));
  CHECK(sim.last_event().waypoints.size() == 1);
  // Next move would leave the room through the top wall.
  CHECK(sim.move_forward() == ActionStatus::Collision);
  CHECK(sim.steps() == 2);
  CHECK(sim.observation().pose.y == doctest::Approx(start.y + 0.5));
}

TEST_CASE("rotations and their cost") {
  Simulator sim = make(kShelf, 0.0);
  CHECK(sim.rotate_left() == ActionStatus::Success);
  CHECK(sim.observation().heading_deg == doctest::Approx(15));
  CHECK(sim.rotate_right() == ActionStatus::Success);
  CHECK(sim.rotate_right() == ActionStatus::Success);
  CHECK(sim.observation().heading_deg == doctest::Approx(345));
  CHECK(sim.steps() == 3);

  const Vec2 p = sim.observation().pose;
  // 345 -> 85 degrees is a 100 degree turn: ceil(100 / 15) = 7 steps.
  CHECK(sim.rotate_to(p + heading_vector(85) * 0.5) == ActionStatus::Success);
  CHECK(sim.steps() == 10);
  CHECK(sim.observation().heading_deg == doctest::Approx(85));
  // No turn still costs one step.
  CHECK(sim.rotate_to(p + heading_vector(85) * 0.5) == ActionStatus::Success);
  CHECK(sim.steps() == 11);
  CHECK_THROWS_AS(sim.rotate_to({-1.0, 0.5}), std::invalid_argument);
  CHECK(sim.steps() == 11);
}

TEST_CASE("turn that does not fit the budget") {
  Config cfg;
  cfg.budget = 4;
  Simulator sim = make(kShelf, 0.0, cfg);
  const Vec2 p = sim.observation().pose;
  CHECK(sim.rotate_to(p + heading_vector(180) * 0.2) == ActionStatus::FailedToTurn);
  CHECK(sim.steps() == 4);
  CHECK(sim.done());
  CHECK_THROWS_AS(sim.move_forward(), std::logic_error);
}

TEST_CASE("grasping") {
  Simulator sim = make(kShelf, 0.0);
  CHECK_THROWS_AS(sim.go_to_grasp(99), std::invalid_argument);
  // Heavy clutter is visible but cannot be lifted.
  REQUIRE(sim.observation().sees(2));
  CHECK(sim.go_to_grasp(2) == ActionStatus::FailedToGrasp);
  CHECK(sim.steps() == 1);
  // The target is within reach: a single charged step.
  CHECK(sim.go_to_grasp(0) == ActionStatus::Success);
  CHECK(sim.steps() == 2);
  CHECK(sim.scene_state().agent().holds(0));
  // The basket needs a walk first.
  CHECK(sim.go_to_grasp(1) == ActionStatus::Success);
  CHECK(sim.steps() > 3);
  CHECK(distance(sim.observation().pose, sim.scene_state().object(1).pose) < 1e-9);
  // Both arms are full now.
  CHECK(sim.go_to_grasp(2) == ActionStatus::FailedToGrasp);
}

TEST_CASE("grasping something out of view") {
  Simulator sim = make(kShelf, 180.0);
  CHECK_FALSE(sim.observation().sees(0));
  CHECK(sim.go_to_grasp(0) == ActionStatus::FailedToReach);
  CHECK(sim.steps() == 1);
}

TEST_CASE("containers") {
  Config cfg;
  cfg.container_capacity = 1;
  auto s = ascii_scene({
      "#########",
      "#.......#",
      "#@TCT...#",
      "#.......#",
      "#########",
  });
  s.spec.budget = cfg.budget;
  Simulator sim(s.world, s.spec, cfg, 3);
  CHECK(sim.put_in_container() == ActionStatus::NotHolding);
  CHECK(sim.go_to_grasp(0) == ActionStatus::Success);
  CHECK(sim.put_in_container() == ActionStatus::NotHolding);
  CHECK(sim.go_to_grasp(2) == ActionStatus::Success);
  CHECK(sim.put_in_container() == ActionStatus::Success);
  CHECK(sim.scene_state().object(0).contained_in == 2);
  CHECK(sim.observation().container_contents == std::vector<int>{0});
  CHECK(sim.go_to_grasp(1) == ActionStatus::Success);
  CHECK(sim.put_in_container() == ActionStatus::NotIn);
  CHECK(sim.scene_state().agent().held_count() == 2);
}

TEST_CASE("drop into the goal zone finishes the task") {
  auto s = ascii_scene({
      "############",
      "#GG........#",
      "#GG........#",
      "#......@.T.#",
      "############",
  });
  Simulator sim(s.world, s.spec, {}, 4);
  CHECK(sim.drop() == ActionStatus::NotHolding);
  CHECK(sim.go_to_grasp(1) == ActionStatus::Success);
  CHECK_FALSE(sim.scene_state().in_goal_zone(to_cell(sim.observation().pose)));
  REQUIRE(sim.rotate_to(sim.observation().pose + Vec2{-0.1, 0.0}) == ActionStatus::Success);
  REQUIRE(sim.move_forward() == ActionStatus::Success);
  REQUIRE(sim.scene_state().in_goal_zone(to_cell(sim.observation().pose)));
  CHECK(sim.drop() == ActionStatus::Success);
  CHECK(sim.transported() == 1);
  CHECK(sim.success());
  CHECK(sim.done());
  CHECK_THROWS_AS(sim.drop(), std::logic_error);
}

TEST_CASE("drop with contents staying inside") {
  Config cfg;
  cfg.still_in_probability = 1.0;
  auto s = ascii_scene({
      "#########",
      "#.......#",
      "#@TC....#",
      "#.......#",
      "#########",
  });
  Simulator sim(s.world, s.spec, cfg, 5);
  REQUIRE(sim.go_to_grasp(0) == ActionStatus::Success);
  REQUIRE(sim.go_to_grasp(1) == ActionStatus::Success);
  REQUIRE(sim.put_in_container() == ActionStatus::Success);
  CHECK(sim.drop() == ActionStatus::StillIn);
  CHECK(sim.scene_state().object(0).contained_in == 1);
  CHECK(sim.scene_state().object(1).resting);
}

TEST_CASE("collisions drop held objects with probability p_drop") {
  for (double p : {0.0, 1.0}) {
    Config cfg;
    cfg.drop_probability = p;
    Simulator sim = make(kShelf, 0.0, cfg);
    REQUIRE(sim.go_to_grasp(0) == ActionStatus::Success);
    REQUIRE(sim.rotate_to(sim.observation().pose + Vec2{-0.1, 0.0}) == ActionStatus::Success);
    CHECK(sim.move_forward() == ActionStatus::Collision);
    const auto& w = sim.scene_state();
    CHECK(w.agent().holds(0) == (p == 0.0));
    if (p == 1.0) {
      CHECK(w.object(0).resting);
      const Cell at = to_cell(w.object(0).pose);
      CHECK(w.is_traversable(at));
      CHECK(std::max(std::abs(at.x - 1), std::abs(at.y - 2)) == 1);
    }
  }
}

TEST_CASE("low clutter stops motion without dropping") {
  Config cfg;
  cfg.drop_probability = 1.0;
  auto s = ascii_scene({
      "#######",
      "#.....#",
      "#@Tl..#",
      "#######",
  });
  Simulator sim(s.world, s.spec, cfg, 6);
  REQUIRE(sim.go_to_grasp(0) == ActionStatus::Success);
  CHECK(sim.move_forward() == ActionStatus::FailedToMove);
  CHECK(sim.scene_state().agent().holds(0));
  CHECK(sim.steps() == 2);
}

TEST_CASE("maps follow every primitive") {
  Simulator sim = make(kShelf, 90.0);
  const int before = sim.maps().occupancy().explored_count();
  sim.rotate_right();
  sim.rotate_right();
  sim.rotate_right();
  CHECK(sim.maps().occupancy().explored_count() > before);
  CHECK(sim.actions_executed() == 3);
  CHECK(sim.last_event().index == 2);
}
