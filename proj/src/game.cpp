#include "autstr/game.hpp"

#include <algorithm>

#include "autstr/graph.hpp"

namespace autstr {

void ParityGame::check_well_formed() const {
  if (static_cast<int>(owner.size()) != num_vertices ||
      static_cast<int>(priority.size()) != num_vertices ||
      static_cast<int>(succ.size()) != num_vertices)
    throw InputError("parity game: field sizes disagree");
  for (int v = 0; v < num_vertices; ++v) {
    if (owner[v] != 0 && owner[v] != 1) throw InputError("parity game: owner must be 0 or 1");
    if (priority[v] < 0) throw InputError("parity game: negative priority");
    if (succ[v].empty()) throw InputError("parity game: vertex without successor");
    for (int w : succ[v])
      if (w < 0 || w >= num_vertices) throw InputError("parity game: edge out of range");
  }
  if (num_vertices > 0 && (start < 0 || start >= num_vertices))
    throw InputError("parity game: start out of range");
}

namespace {

struct Solver {
  const ParityGame& g;
  std::vector<std::vector<int>> pred;
  std::vector<int> winner, strategy;

  explicit Solver(const ParityGame& game) : g(game) {
    pred.resize(g.num_vertices);
    for (int v = 0; v < g.num_vertices; ++v)
      for (int w : g.succ[v]) pred[w].push_back(v);
    winner.assign(g.num_vertices, -1);
    strategy.assign(g.num_vertices, -1);
  }

  // Attractor of `targets` for player p within `alive`; records an attractor
  // move for p-owned vertices pulled in.  Deterministic: queue order by
  // insertion, successor scan ascending.
  std::vector<bool> attractor(int p, const std::vector<bool>& alive,
                              const std::vector<bool>& targets, std::vector<int>& strat) {
    int n = g.num_vertices;
    std::vector<bool> in_attr(n, false);
    std::vector<int> out_degree(n, 0), queue;
    for (int v = 0; v < n; ++v) {
      if (!alive[v]) continue;
      for (int w : g.succ[v])
        if (alive[w]) ++out_degree[v];
      if (targets[v]) {
        in_attr[v] = true;
        queue.push_back(v);
      }
    }
    for (std::size_t head = 0; head < queue.size(); ++head) {
      int w = queue[head];
      for (int v : pred[w]) {
        if (!alive[v] || in_attr[v]) continue;
        if (g.owner[v] == p) {
          in_attr[v] = true;
          if (strat[v] < 0) strat[v] = w;
          queue.push_back(v);
        } else {
          if (--out_degree[v] == 0) {
            in_attr[v] = true;
            queue.push_back(v);
          }
        }
      }
    }
    return in_attr;
  }

  void solve(const std::vector<bool>& alive) {
    int n = g.num_vertices;
    int top = -1;
    for (int v = 0; v < n; ++v)
      if (alive[v]) top = std::max(top, g.priority[v]);
    if (top < 0) return;  // empty subgame
    int p = top % 2;

    std::vector<bool> targets(n, false);
    for (int v = 0; v < n; ++v) targets[v] = alive[v] && g.priority[v] == top;
    std::vector<int> attr_strat(n, -1);
    std::vector<bool> a = attractor(p, alive, targets, attr_strat);

    std::vector<bool> rest(n, false);
    bool any_rest = false;
    for (int v = 0; v < n; ++v) {
      rest[v] = alive[v] && !a[v];
      any_rest |= rest[v];
    }
    if (any_rest) solve(rest);

    bool opponent_pocket = false;
    for (int v = 0; v < n; ++v)
      if (rest[v] && winner[v] == 1 - p) opponent_pocket = true;

    if (!opponent_pocket) {
      // p wins the whole subgame: attractor moves towards the top priority,
      // any internal move on the top vertices, recursive strategy elsewhere.
      for (int v = 0; v < n; ++v) {
        if (!alive[v]) continue;
        if (rest[v]) continue;  // keeps winner/strategy from recursion
        winner[v] = p;
        if (g.owner[v] != p) continue;
        if (targets[v]) {
          for (int w : g.succ[v])
            if (alive[w]) {
              strategy[v] = w;
              break;
            }
        } else {
          strategy[v] = attr_strat[v];
        }
      }
      return;
    }

    // Opponent wins part of the rest: remove their attractor and re-solve.
    std::vector<bool> opp_targets(n, false);
    for (int v = 0; v < n; ++v) opp_targets[v] = rest[v] && winner[v] == 1 - p;
    std::vector<int> opp_strat(n, -1);
    std::vector<bool> b = attractor(1 - p, alive, opp_targets, opp_strat);

    for (int v = 0; v < n; ++v) {
      if (!b[v]) continue;
      if (opp_targets[v]) continue;  // winner/strategy already set by recursion
      winner[v] = 1 - p;
      if (g.owner[v] == 1 - p) strategy[v] = opp_strat[v];
    }
    std::vector<bool> remaining(n, false);
    bool any_remaining = false;
    for (int v = 0; v < n; ++v) {
      remaining[v] = alive[v] && !b[v];
      any_remaining |= remaining[v];
      if (remaining[v]) {
        winner[v] = -1;
        strategy[v] = -1;
      }
    }
    if (any_remaining) solve(remaining);
  }
};

}  // namespace

GameSolution solve_parity_game(const ParityGame& g) {
  g.check_well_formed();
  Solver s(g);
  std::vector<bool> alive(g.num_vertices, true);
  if (g.num_vertices > 0) s.solve(alive);
  for (int v = 0; v < g.num_vertices; ++v) {
    if (s.winner[v] < 0) throw InvariantError("parity solver left a vertex unassigned");
    if (g.owner[v] == s.winner[v] && s.strategy[v] < 0)
      throw InvariantError("parity solver missing a winning move");
    if (g.owner[v] != s.winner[v]) s.strategy[v] = -1;
  }
  return {s.winner, s.strategy};
}

std::vector<int> solve_parity_game_brute(const ParityGame& g) {
  g.check_well_formed();
  int n = g.num_vertices;
  std::vector<int> even_vertices;
  for (int v = 0; v < n; ++v)
    if (g.owner[v] == 0) even_vertices.push_back(v);

  // For a fixed Even strategy, Odd wins exactly from vertices that can reach
  // a cycle whose maximum priority is odd in the restricted graph.
  std::vector<bool> even_wins(n, false);
  std::vector<int> choice(even_vertices.size(), 0);
  while (true) {
    std::vector<std::vector<int>> succ(n);
    for (int v = 0; v < n; ++v) {
      if (g.owner[v] == 0) {
        int idx = static_cast<int>(std::lower_bound(even_vertices.begin(), even_vertices.end(), v) -
                                   even_vertices.begin());
        succ[v] = {g.succ[v][choice[idx]]};
      } else {
        succ[v] = g.succ[v];
      }
    }
    std::vector<bool> bad_cycle_vertex(n, false);
    int max_pri = 0;
    for (int v = 0; v < n; ++v) max_pri = std::max(max_pri, g.priority[v]);
    for (int p = 1; p <= max_pri; p += 2) {
      // Subgraph with priorities <= p; cycles through a priority-p vertex.
      std::vector<std::vector<int>> sub(n);
      for (int v = 0; v < n; ++v)
        if (g.priority[v] <= p)
          for (int w : succ[v])
            if (g.priority[w] <= p) sub[v].push_back(w);
      int ncomp = 0;
      std::vector<int> comp = strongly_connected_components(sub, &ncomp);
      std::vector<bool> internal(ncomp, false);
      for (int v = 0; v < n; ++v)
        if (g.priority[v] <= p)
          for (int w : sub[v])
            if (comp[v] == comp[w]) internal[comp[v]] = true;
      for (int v = 0; v < n; ++v)
        if (g.priority[v] == p && internal[comp[v]]) bad_cycle_vertex[v] = true;
    }
    std::vector<bool> loses = can_reach(succ, bad_cycle_vertex);
    for (int v = 0; v < n; ++v)
      if (!loses[v]) even_wins[v] = true;

    std::size_t i = 0;
    for (; i < even_vertices.size(); ++i) {
      if (++choice[i] < static_cast<int>(g.succ[even_vertices[i]].size())) break;
      choice[i] = 0;
    }
    if (i == even_vertices.size()) break;
    if (even_vertices.empty()) break;
  }
  std::vector<int> winner(n);
  for (int v = 0; v < n; ++v) winner[v] = even_wins[v] ? 0 : 1;
  return winner;
}

void check_game_solution(const ParityGame& g, const GameSolution& s) {
  g.check_well_formed();
  int n = g.num_vertices;
  if (static_cast<int>(s.winner.size()) != n || static_cast<int>(s.strategy.size()) != n)
    throw InvariantError("game solution: field sizes disagree");
  for (int v = 0; v < n; ++v)
    if (s.winner[v] != 0 && s.winner[v] != 1)
      throw InvariantError("game solution: regions do not partition the vertices");

  for (int p = 0; p <= 1; ++p) {
    // Within p's region, p moves by strategy and the opponent moves freely;
    // the region must be closed and every cycle must have parity p.
    std::vector<std::vector<int>> succ(n);
    for (int v = 0; v < n; ++v) {
      if (s.winner[v] != p) continue;
      if (g.owner[v] == p) {
        int w = s.strategy[v];
        if (w < 0 || w >= n || std::find(g.succ[v].begin(), g.succ[v].end(), w) == g.succ[v].end())
          throw InvariantError("game solution: strategy move is not an edge");
        if (s.winner[w] != p) throw InvariantError("game solution: strategy leaves the region");
        succ[v] = {w};
      } else {
        for (int w : g.succ[v]) {
          if (s.winner[w] != p) throw InvariantError("game solution: region not closed");
          succ[v].push_back(w);
        }
      }
    }
    int max_pri = 0;
    for (int v = 0; v < n; ++v) max_pri = std::max(max_pri, g.priority[v]);
    for (int top = 0; top <= max_pri; ++top) {
      if (top % 2 == p % 2) continue;  // cycles of p's parity are fine
      std::vector<std::vector<int>> sub(n);
      for (int v = 0; v < n; ++v)
        if (s.winner[v] == p && g.priority[v] <= top)
          for (int w : succ[v])
            if (g.priority[w] <= top) sub[v].push_back(w);
      int ncomp = 0;
      std::vector<int> comp = strongly_connected_components(sub, &ncomp);
      std::vector<bool> internal(ncomp, false);
      for (int v = 0; v < n; ++v)
        for (int w : sub[v])
          if (comp[v] == comp[w]) internal[comp[v]] = true;
      for (int v = 0; v < n; ++v)
        if (s.winner[v] == p && g.priority[v] == top && internal[comp[v]])
          throw InvariantError("game solution: opposing cycle inside a winning region");
    }
  }
}

}  // namespace autstr
