#pragma once

#include <algorithm>
#include <deque>
#include <vector>

namespace autstr {

/// Adjacency-list digraph helpers shared by the automaton and game code.
/// All routines are deterministic: ties are broken by ascending vertex id.

/// Tarjan strongly connected components (iterative).  Returns the component
/// id per vertex; ids are assigned in reverse topological order.
inline std::vector<int> strongly_connected_components(const std::vector<std::vector<int>>& succ,
                                                      int* num_components = nullptr) {
  int n = static_cast<int>(succ.size());
  std::vector<int> comp(n, -1), low(n, 0), disc(n, -1), stck;
  std::vector<bool> on_stack(n, false);
  int timer = 0, ncomp = 0;
  struct Frame {
    int v;
    std::size_t edge;
  };
  for (int root = 0; root < n; ++root) {
    if (disc[root] != -1) continue;
    std::vector<Frame> frames{{root, 0}};
    disc[root] = low[root] = timer++;
    stck.push_back(root);
    on_stack[root] = true;
    while (!frames.empty()) {
      Frame& f = frames.back();
      if (f.edge < succ[f.v].size()) {
        int w = succ[f.v][f.edge++];
        if (disc[w] == -1) {
          disc[w] = low[w] = timer++;
          stck.push_back(w);
          on_stack[w] = true;
          frames.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], disc[w]);
        }
      } else {
        if (low[f.v] == disc[f.v]) {
          while (true) {
            int w = stck.back();
            stck.pop_back();
            on_stack[w] = false;
            comp[w] = ncomp;
            if (w == f.v) break;
          }
          ++ncomp;
        }
        int v = f.v;
        frames.pop_back();
        if (!frames.empty()) low[frames.back().v] = std::min(low[frames.back().v], low[v]);
      }
    }
  }
  if (num_components) *num_components = ncomp;
  return comp;
}

/// Set of vertices reachable from the given sources.
inline std::vector<bool> reachable_from(const std::vector<std::vector<int>>& succ,
                                        const std::vector<int>& sources) {
  std::vector<bool> seen(succ.size(), false);
  std::deque<int> queue;
  for (int s : sources)
    if (!seen[s]) {
      seen[s] = true;
      queue.push_back(s);
    }
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    for (int w : succ[v])
      if (!seen[w]) {
        seen[w] = true;
        queue.push_back(w);
      }
  }
  return seen;
}

/// Vertices from which some vertex of `targets` is reachable.
inline std::vector<bool> can_reach(const std::vector<std::vector<int>>& succ,
                                   const std::vector<bool>& targets) {
  int n = static_cast<int>(succ.size());
  std::vector<std::vector<int>> pred(n);
  for (int v = 0; v < n; ++v)
    for (int w : succ[v]) pred[w].push_back(v);
  std::vector<int> sources;
  for (int v = 0; v < n; ++v)
    if (targets[v]) sources.push_back(v);
  return reachable_from(pred, sources);
}

/// Shortest path from any source to `target` as a vertex sequence
/// (source ... target), BFS with ascending-id tie-breaks.  Empty if
/// unreachable.
inline std::vector<int> shortest_path(const std::vector<std::vector<int>>& succ,
                                      const std::vector<int>& sources, int target) {
  int n = static_cast<int>(succ.size());
  std::vector<int> prev(n, -2);
  std::deque<int> queue;
  std::vector<int> srt = sources;
  std::sort(srt.begin(), srt.end());
  for (int s : srt)
    if (prev[s] == -2) {
      prev[s] = -1;
      queue.push_back(s);
    }
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    if (v == target) {
      std::vector<int> path;
      for (int x = v; x != -1; x = prev[x]) path.push_back(x);
      std::reverse(path.begin(), path.end());
      return path;
    }
    std::vector<int> nb = succ[v];
    std::sort(nb.begin(), nb.end());
    for (int w : nb)
      if (prev[w] == -2) {
        prev[w] = v;
        queue.push_back(w);
      }
  }
  return {};
}

}  // namespace autstr
