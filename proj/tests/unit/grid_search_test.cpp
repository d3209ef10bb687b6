#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "tc/core/rng.hpp"
#include "tc/planners/grid_search.hpp"

using namespace tc;

namespace {

PlanningGrid from_rows(const std::vector<std::string>& rows) {
  PlanningGrid g(static_cast<int>(rows[0].size()), static_cast<int>(rows.size()));
  for (int y = 0; y < g.height; ++y)
    for (int x = 0; x < g.width; ++x) g.set_blocked({x, y}, rows[static_cast<std::size_t>(y)][static_cast<std::size_t>(x)] == '#');
  return g;
}

}  // namespace

TEST_CASE("straight and diagonal costs") {
  const PlanningGrid g(10, 10);
  const auto p = astar(g, {0, 0}, {3, 5});
  REQUIRE(p);
  CHECK(p->straight_moves == 2);
  CHECK(p->diagonal_moves == 3);
  CHECK(p->cost() == doctest::Approx(2 + 3 * std::sqrt(2.0)));
  CHECK(p->cells.front() == Cell{0, 0});
  CHECK(p->cells.back() == Cell{3, 5});
  CHECK(octile_distance({0, 0}, {3, 5}) == doctest::Approx(p->cost()));
}

TEST_CASE("no squeezing between diagonal blockers") {
  const auto g = from_rows({
      ".#.",
      "#..",
      "...",
  });
  // (0,0) to (1,1) would pass between (1,0) and (0,1): not allowed.
  CHECK_FALSE(astar(g, {0, 0}, {1, 1}).has_value());
  const auto h = from_rows({
      "..",
      "#.",
  });
  const auto p = astar(h, {0, 0}, {1, 1});
  REQUIRE(p);
  CHECK(p->straight_moves == 2);
  CHECK(p->diagonal_moves == 0);
}

TEST_CASE("blocked or unreachable goals") {
  const auto g = from_rows({
      "..#..",
      "..#..",
      "..#.#",
  });
  CHECK_FALSE(astar(g, {0, 0}, {4, 0}).has_value());
  CHECK_FALSE(astar(g, {0, 0}, {2, 1}).has_value());
  // A blocked start is tolerated.
  CHECK(astar(g, {2, 0}, {0, 2}).has_value());
  CHECK_FALSE(astar(g, {0, 0}, {9, 9}).has_value());
}

TEST_CASE("path is a legal walk with the reported counts") {
  Rng rng(12);
  for (int t = 0; t < 100; ++t) {
    PlanningGrid g(20, 20);
    for (auto& b : g.blocked) b = rng.bernoulli(0.25);
    const Cell s{rng.uniform_int(0, 19), rng.uniform_int(0, 19)};
    const Cell e{rng.uniform_int(0, 19), rng.uniform_int(0, 19)};
    g.set_blocked(s, false);
    g.set_blocked(e, false);
    const auto p = astar(g, s, e);
    if (!p) continue;
    int straight = 0, diag = 0;
    for (std::size_t i = 1; i < p->cells.size(); ++i) {
      const Cell a = p->cells[i - 1], b = p->cells[i];
      const Cell d = b - a;
      REQUIRE(std::abs(d.x) <= 1);
      REQUIRE(std::abs(d.y) <= 1);
      CHECK(g.passable(b));
      if (d.x != 0 && d.y != 0) {
        ++diag;
        CHECK(g.passable({a.x + d.x, a.y}));
        CHECK(g.passable({a.x, a.y + d.y}));
      } else {
        ++straight;
      }
    }
    CHECK(straight == p->straight_moves);
    CHECK(diag == p->diagonal_moves);
  }
}

TEST_CASE("cost field agrees with the uniform-cost oracle") {
  Rng rng(13);
  for (int t = 0; t < 30; ++t) {
    PlanningGrid g(24, 24);
    for (auto& b : g.blocked) b = rng.bernoulli(0.3);
    const Cell s{rng.uniform_int(0, 23), rng.uniform_int(0, 23)};
    g.set_blocked(s, false);
    const auto field = cost_field(g, s);
    const auto truth = testing::ucs_all(g, s);
    for (std::size_t i = 0; i < field.size(); ++i) {
      if (!truth[i]) {
        CHECK(field[i] < 0);
      } else {
        CHECK(field[i] == doctest::Approx(truth[i]->value()));
      }
    }
  }
}
