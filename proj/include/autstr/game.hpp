#pragma once

#include <vector>

#include "autstr/errors.hpp"

namespace autstr {

/// Finite two-player parity game, max-parity convention: player 0 (Even) wins
/// a play iff the maximum priority occurring infinitely often is even.  Every
/// vertex must have at least one outgoing edge.
struct ParityGame {
  int num_vertices = 0;
  std::vector<int> owner;                // 0 or 1 per vertex
  std::vector<int> priority;             // >= 0 per vertex
  std::vector<std::vector<int>> succ;    // non-empty per vertex
  int start = 0;

  void check_well_formed() const;
};

/// Winning regions and positional strategies.  winner[v] is 0 or 1;
/// strategy[v] is the chosen successor when v is owned by winner[v], else -1.
struct GameSolution {
  std::vector<int> winner;
  std::vector<int> strategy;
};

/// Zielonka's recursive algorithm with attractor strategies.
GameSolution solve_parity_game(const ParityGame& g);

/// Independent reference solver: enumerates Even's positional strategies and
/// checks the restricted graph for reachable odd-dominated cycles.  Intended
/// for small games only (differential testing).
std::vector<int> solve_parity_game_brute(const ParityGame& g);

/// Re-checks a solution without trusting the solver: regions must be closed
/// against the loser's moves, and fixing the winner's strategy inside a region
/// must leave no cycle of the wrong parity.  Throws InvariantError on failure.
void check_game_solution(const ParityGame& g, const GameSolution& s);

}  // namespace autstr
