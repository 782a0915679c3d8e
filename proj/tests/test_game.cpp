#include "doctest.h"

#include "autstr/difftest.hpp"
#include "autstr/game.hpp"
#include "autstr/rng.hpp"

using namespace autstr;

namespace {

ParityGame loop_game(int priority) {
  ParityGame g;
  g.num_vertices = 1;
  g.owner = {0};
  g.priority = {priority};
  g.succ = {{0}};
  return g;
}

}  // namespace

TEST_CASE("single-vertex loops are decided by their priority parity") {
  CHECK(solve_parity_game(loop_game(2)).winner[0] == 0);
  CHECK(solve_parity_game(loop_game(3)).winner[0] == 1);
}

TEST_CASE("a choice vertex picks the winning loop") {
  // Vertex 0 (player 0) chooses between an odd self-loop-ish cycle and an
  // even one; the strategy must select the even cycle.
  ParityGame g;
  g.num_vertices = 3;
  g.owner = {0, 0, 0};
  g.priority = {0, 1, 2};
  g.succ = {{1, 2}, {1}, {2}};
  GameSolution s = solve_parity_game(g);
  CHECK(s.winner[0] == 0);
  CHECK(s.winner[1] == 1);
  CHECK(s.winner[2] == 0);
  CHECK(s.strategy[0] == 2);
  check_game_solution(g, s);
}

TEST_CASE("solver agrees with the strategy-enumeration oracle") {
  Rng rng(31);
  for (int i = 0; i < 100; ++i) {
    ParityGame g = random_parity_game(rng, 8, 4);
    GameSolution s = solve_parity_game(g);
    std::vector<int> brute = solve_parity_game_brute(g);
    CAPTURE(i);
    REQUIRE(s.winner.size() == brute.size());
    for (int v = 0; v < g.num_vertices; ++v) CHECK(s.winner[v] == brute[v]);
    check_game_solution(g, s);
  }
}

TEST_CASE("differential suite wrapper") {
  DiffReport r = run_parity_suite(7, 40);
  CHECK(r.ok());
  CHECK(r.cases == 40);
  CHECK(r.to_text() == run_parity_suite(7, 40).to_text());
}

TEST_CASE("games must be total") {
  ParityGame g;
  g.num_vertices = 2;
  g.owner = {0, 1};
  g.priority = {0, 1};
  g.succ = {{1}, {}};
  CHECK_THROWS_AS(g.check_well_formed(), InputError);
}
