#include "autstr/tree.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

#include "autstr/graph.hpp"

namespace autstr {

namespace {

void check_state(StateId q, int num_states, const char* what) {
  if (q < 0 || q >= num_states) throw InputError(std::string(what) + " out of range");
}

void check_letter(int letter, const Alphabet& alphabet) {
  if (letter < 0 || letter >= alphabet.size()) throw InputError("letter out of range");
}

}  // namespace

void MullerTreeAutomaton::normalize() {
  std::sort(transitions.begin(), transitions.end());
  transitions.erase(std::unique(transitions.begin(), transitions.end()), transitions.end());
  for (auto& f : designated) {
    std::sort(f.begin(), f.end());
    f.erase(std::unique(f.begin(), f.end()), f.end());
  }
  std::sort(designated.begin(), designated.end());
  designated.erase(std::unique(designated.begin(), designated.end()), designated.end());
}

void MullerTreeAutomaton::check_well_formed() const {
  check_state(initial, num_states, "initial state");
  for (const auto& t : transitions) {
    check_state(t.from, num_states, "transition source");
    check_state(t.left, num_states, "transition left target");
    check_state(t.right, num_states, "transition right target");
    check_letter(t.letter, alphabet);
  }
  for (const auto& f : designated) {
    if (!std::is_sorted(f.begin(), f.end())) throw InputError("designated set not sorted");
    if (std::adjacent_find(f.begin(), f.end()) != f.end())
      throw InputError("designated set has duplicates");
    for (StateId q : f) check_state(q, num_states, "designated state");
  }
}

void ParityTreeAutomaton::normalize() {
  std::sort(transitions.begin(), transitions.end());
  transitions.erase(std::unique(transitions.begin(), transitions.end()), transitions.end());
}

void ParityTreeAutomaton::check_well_formed() const {
  check_state(initial, num_states, "initial state");
  if (static_cast<int>(priority.size()) != num_states)
    throw InputError("priority map size disagrees with state count");
  for (int p : priority)
    if (p < 0) throw InputError("negative priority");
  for (const auto& t : transitions) {
    check_state(t.from, num_states, "transition source");
    check_state(t.left, num_states, "transition left target");
    check_state(t.right, num_states, "transition right target");
    check_letter(t.letter, alphabet);
  }
}

void RegularTree::check_well_formed() const {
  if (num_nodes <= 0) throw InputError("regular tree needs at least one node");
  if (static_cast<int>(label.size()) != num_nodes || static_cast<int>(left.size()) != num_nodes ||
      static_cast<int>(right.size()) != num_nodes)
    throw InputError("regular tree field sizes disagree");
  check_state(root, num_nodes, "tree root");
  for (int v = 0; v < num_nodes; ++v) {
    check_letter(label[v], alphabet);
    check_state(left[v], num_nodes, "left successor");
    check_state(right[v], num_nodes, "right successor");
  }
}

int RegularTree::node_at(const std::string& path) const {
  int v = root;
  for (char c : path) {
    if (c == 'l')
      v = left[v];
    else if (c == 'r')
      v = right[v];
    else
      throw InputError("tree path must consist of 'l' and 'r'");
  }
  return v;
}

bool trees_equal(const RegularTree& a, const RegularTree& b) {
  a.check_well_formed();
  b.check_well_formed();
  if (a.alphabet != b.alphabet) return false;
  // Bisimulation on the disjoint union: refine classes by (label, left class,
  // right class) until stable; the trees unfold equally iff the roots share a
  // class.
  int n = a.num_nodes + b.num_nodes;
  auto lab = [&](int v) { return v < a.num_nodes ? a.label[v] : b.label[v - a.num_nodes]; };
  auto go_l = [&](int v) {
    return v < a.num_nodes ? a.left[v] : b.left[v - a.num_nodes] + a.num_nodes;
  };
  auto go_r = [&](int v) {
    return v < a.num_nodes ? a.right[v] : b.right[v - a.num_nodes] + a.num_nodes;
  };
  std::vector<int> cls(n);
  for (int v = 0; v < n; ++v) cls[v] = lab(v);
  while (true) {
    std::map<std::tuple<int, int, int>, int> sig_class;
    std::vector<int> next(n);
    for (int v = 0; v < n; ++v) {
      auto sig = std::make_tuple(cls[v], cls[go_l(v)], cls[go_r(v)]);
      auto [it, inserted] = sig_class.emplace(sig, static_cast<int>(sig_class.size()));
      next[v] = it->second;
    }
    if (next == cls) break;
    cls = next;
  }
  return cls[a.root] == cls[b.root + a.num_nodes];
}

// ---------------------------------------------------------------------------
// Latest-appearance-record conversion.

namespace {

/// Move-to-front record over a fixed color set plus the hit position of the
/// last step.  Priority convention: with P the record prefix up to the hit,
/// 2*hit+2 when P is a designated state set, else 2*hit+1; the junk color in
/// P forces odd.  Along a path the maximal prefix hit after stabilization is
/// exactly the set of colors seen infinitely often, which makes the maximal
/// recurring priority even iff that set is designated.
struct LarState {
  StateId q;
  std::vector<int> record;  // color ids: state id, or `junk` sentinel
  int hit;
  friend bool operator<(const LarState& a, const LarState& b) {
    return std::tie(a.q, a.record, a.hit) < std::tie(b.q, b.record, b.hit);
  }
};

}  // namespace

ParityTreeAutomaton muller_to_parity(const MullerTreeAutomaton& input, const Budget& budget) {
  MullerTreeAutomaton a = input;
  a.normalize();
  a.check_well_formed();
  int n = a.num_states;
  const int junk = n;

  // Step graph: q -> child states; records are reset on entering a new
  // strongly connected component, because infinity sets live inside one.
  std::vector<std::vector<int>> step(n);
  for (const auto& t : a.transitions) {
    step[t.from].push_back(t.left);
    step[t.from].push_back(t.right);
  }
  int ncomp = 0;
  std::vector<int> comp = strongly_connected_components(step, &ncomp);

  // Per component, individually tracked colors: states of designated sets
  // contained in that component.  A designated set straddling components can
  // never be an infinity set, so its states need no color of their own.
  std::vector<std::vector<int>> comp_states(ncomp);
  for (int q = 0; q < n; ++q) comp_states[comp[q]].push_back(q);
  std::vector<std::vector<int>> comp_colors(ncomp);
  std::vector<int> color(n, junk);
  for (int c = 0; c < ncomp; ++c) {
    std::set<int> rel;
    for (const auto& f : a.designated) {
      bool inside = !f.empty();
      for (StateId q : f) inside = inside && comp[q] == c;
      if (inside)
        for (StateId q : f) rel.insert(q);
    }
    for (int q : rel) color[q] = q;
    comp_colors[c].assign(rel.begin(), rel.end());
    bool has_junk = false;
    for (int q : comp_states[c]) has_junk = has_junk || !rel.count(q);
    if (has_junk) comp_colors[c].push_back(junk);
  }

  auto enter = [&](StateId q) {
    LarState s;
    s.q = q;
    s.record = comp_colors[comp[q]];
    int c = color[q];
    s.record.erase(std::find(s.record.begin(), s.record.end(), c));
    s.record.insert(s.record.begin(), c);
    s.hit = static_cast<int>(s.record.size()) - 1;
    return s;
  };
  auto advance = [&](const LarState& cur, StateId q) {
    if (comp[q] != comp[cur.q]) return enter(q);
    LarState s;
    s.q = q;
    s.record = cur.record;
    int c = color[q];
    auto it = std::find(s.record.begin(), s.record.end(), c);
    s.hit = static_cast<int>(it - s.record.begin());
    s.record.erase(it);
    s.record.insert(s.record.begin(), c);
    return s;
  };
  auto state_priority = [&](const LarState& s) {
    std::vector<int> prefix(s.record.begin(), s.record.begin() + s.hit + 1);
    std::sort(prefix.begin(), prefix.end());
    if (!prefix.empty() && prefix.back() == junk) return 2 * s.hit + 1;
    bool good = std::binary_search(a.designated.begin(), a.designated.end(), prefix);
    return good ? 2 * s.hit + 2 : 2 * s.hit + 1;
  };

  ParityTreeAutomaton out;
  out.alphabet = a.alphabet;
  std::map<LarState, int> index;
  std::vector<LarState> states;
  auto intern = [&](const LarState& s) {
    auto [it, inserted] = index.emplace(s, static_cast<int>(states.size()));
    if (inserted) {
      states.push_back(s);
      if (states.size() > budget.max_states) throw CapacityError("record construction too large");
    }
    return it->second;
  };

  std::vector<std::vector<const TreeTransition*>> by_state(n);
  for (const auto& t : a.transitions) by_state[t.from].push_back(&t);

  out.initial = intern(enter(a.initial));
  for (std::size_t i = 0; i < states.size(); ++i) {
    LarState cur = states[i];
    for (const TreeTransition* t : by_state[cur.q]) {
      int l = intern(advance(cur, t->left));
      int r = intern(advance(cur, t->right));
      out.transitions.push_back({static_cast<StateId>(i), t->letter, l, r});
    }
  }
  out.num_states = static_cast<int>(states.size());
  out.priority.resize(out.num_states);
  for (int i = 0; i < out.num_states; ++i) out.priority[i] = state_priority(states[i]);
  out.normalize();
  return out;
}

// ---------------------------------------------------------------------------
// Acceptance games.

namespace {

/// Shared kernel for membership and emptiness: Even (the automaton) picks a
/// transition, Odd (the pathfinder) picks a direction.  Game vertices are
/// interned on the fly; stuck automaton vertices get an edge to a losing
/// sink.  Returns the winner at the start plus enough bookkeeping to read a
/// witness strategy back.
struct AcceptanceGame {
  // Vertex keys: kind 0 = (state, node), kind 1 = (transition index, node).
  std::map<std::tuple<int, int, int>, int> index;
  std::vector<std::tuple<int, int, int>> keys;
  ParityGame game;
  GameSolution solution;
  int sink = -1;

  int intern(int kind, int x, int node, int priority, int owner) {
    auto [it, inserted] =
        index.emplace(std::make_tuple(kind, x, node), static_cast<int>(keys.size()));
    if (inserted) {
      keys.push_back(std::make_tuple(kind, x, node));
      game.owner.push_back(owner);
      game.priority.push_back(priority);
      game.succ.emplace_back();
    }
    return it->second;
  }

  int losing_sink() {
    if (sink < 0) {
      sink = static_cast<int>(keys.size());
      keys.push_back(std::make_tuple(2, 0, 0));
      game.owner.push_back(0);
      game.priority.push_back(1);
      game.succ.emplace_back();
      game.succ.back().push_back(sink);
    }
    return sink;
  }
};

/// Builds and solves the game for the parity automaton `a`; with `tree` null
/// this is the emptiness game (node slot fixed to 0), otherwise the
/// membership game on the tree graph.
AcceptanceGame play_acceptance(const ParityTreeAutomaton& a, const RegularTree* tree) {
  std::vector<std::vector<int>> by_state(a.num_states);
  for (std::size_t i = 0; i < a.transitions.size(); ++i)
    by_state[a.transitions[i].from].push_back(static_cast<int>(i));

  AcceptanceGame g;
  int root = tree ? tree->root : 0;
  g.game.start = g.intern(0, a.initial, root, a.priority[a.initial], 0);
  for (std::size_t i = 0; i < g.keys.size(); ++i) {
    auto [kind, x, node] = g.keys[i];
    if (kind == 2) continue;
    if (kind == 0) {
      std::vector<int> moves;
      for (int ti : by_state[x]) {
        const TreeTransition& t = a.transitions[ti];
        if (tree && t.letter != tree->label[node]) continue;
        moves.push_back(g.intern(1, ti, node, a.priority[x], 1));
      }
      if (moves.empty()) moves.push_back(g.losing_sink());
      g.game.succ[i] = moves;
    } else {
      const TreeTransition& t = a.transitions[x];
      int nl = tree ? tree->left[node] : 0;
      int nr = tree ? tree->right[node] : 0;
      int vl = g.intern(0, t.left, nl, a.priority[t.left], 0);
      int vr = g.intern(0, t.right, nr, a.priority[t.right], 0);
      g.game.succ[i] = {vl, vr};
    }
  }
  g.game.num_vertices = static_cast<int>(g.keys.size());
  g.solution = solve_parity_game(g.game);
  return g;
}

}  // namespace

bool tree_membership(const ParityTreeAutomaton& a, const RegularTree& t) {
  a.check_well_formed();
  t.check_well_formed();
  if (a.alphabet != t.alphabet) throw InputError("automaton and tree alphabets disagree");
  AcceptanceGame g = play_acceptance(a, &t);
  return g.solution.winner[g.game.start] == 0;
}

bool tree_membership(const MullerTreeAutomaton& a, const RegularTree& t, const Budget& budget) {
  return tree_membership(muller_to_parity(a, budget), t);
}

std::optional<RegularTree> tree_emptiness(const ParityTreeAutomaton& a) {
  a.check_well_formed();
  AcceptanceGame g = play_acceptance(a, nullptr);
  if (g.solution.winner[g.game.start] != 0) return std::nullopt;

  // Read the witness off Even's strategy: winning automaton vertices become
  // tree nodes, the chosen transition supplies label and children.
  RegularTree w;
  w.alphabet = a.alphabet;
  std::map<int, int> node_of;  // game vertex (kind 0) -> witness node
  std::vector<int> work;
  auto node_for = [&](int v) {
    auto [it, inserted] = node_of.emplace(v, static_cast<int>(node_of.size()));
    if (inserted) {
      w.label.push_back(-1);
      w.left.push_back(-1);
      w.right.push_back(-1);
      work.push_back(v);
    }
    return it->second;
  };
  w.root = node_for(g.game.start);
  while (!work.empty()) {
    int v = work.back();
    work.pop_back();
    int here = node_of.at(v);
    int choice = g.solution.strategy[v];
    if (choice < 0 || std::get<0>(g.keys[choice]) != 1)
      throw InvariantError("emptiness witness: strategy does not pick a transition");
    const TreeTransition& t = a.transitions[std::get<1>(g.keys[choice])];
    int nl = node_for(g.game.succ[choice][0]);
    int nr = node_for(g.game.succ[choice][1]);
    w.label[here] = t.letter;
    w.left[here] = nl;
    w.right[here] = nr;
  }
  w.num_nodes = static_cast<int>(node_of.size());
  w.check_well_formed();
  if (!tree_membership(a, w)) throw InvariantError("emptiness witness failed re-verification");
  return w;
}

std::optional<RegularTree> tree_emptiness(const MullerTreeAutomaton& a, const Budget& budget) {
  return tree_emptiness(muller_to_parity(a, budget));
}

// ---------------------------------------------------------------------------
// Boolean operations.

MullerTreeAutomaton tree_product(const MullerTreeAutomaton& a, const MullerTreeAutomaton& b,
                                 const Budget& budget) {
  a.check_well_formed();
  b.check_well_formed();
  if (a.alphabet != b.alphabet) throw InputError("product factors need equal alphabets");

  std::vector<std::vector<const TreeTransition*>> b_by_state(b.num_states);
  for (const auto& t : b.transitions) b_by_state[t.from].push_back(&t);

  MullerTreeAutomaton out;
  out.alphabet = a.alphabet;
  std::map<std::pair<StateId, StateId>, int> index;
  std::vector<std::pair<StateId, StateId>> pairs;
  auto intern = [&](StateId qa, StateId qb) {
    auto [it, inserted] = index.emplace(std::make_pair(qa, qb), static_cast<int>(pairs.size()));
    if (inserted) {
      pairs.emplace_back(qa, qb);
      if (pairs.size() > budget.max_states) throw CapacityError("tree product too large");
    }
    return it->second;
  };
  out.initial = intern(a.initial, b.initial);

  std::vector<std::vector<const TreeTransition*>> a_by_state(a.num_states);
  for (const auto& t : a.transitions) a_by_state[t.from].push_back(&t);
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    auto [qa, qb] = pairs[i];
    for (const TreeTransition* ta : a_by_state[qa])
      for (const TreeTransition* tb : b_by_state[qb]) {
        if (ta->letter != tb->letter) continue;
        int l = intern(ta->left, tb->left);
        int r = intern(ta->right, tb->right);
        out.transitions.push_back({static_cast<StateId>(i), ta->letter, l, r});
      }
  }
  out.num_states = static_cast<int>(pairs.size());

  // A set of pairs is designated iff its two projections are designated.  The
  // infinity set of a product path projects to the factors' infinity sets, so
  // enumerating, per designated pair, the reachable pair sets with onto
  // projections is exact.
  std::set<std::vector<StateId>> fam;
  for (const auto& fa : a.designated)
    for (const auto& fb : b.designated) {
      std::vector<int> candidates;
      for (StateId qa : fa)
        for (StateId qb : fb) {
          auto it = index.find(std::make_pair(qa, qb));
          if (it != index.end()) candidates.push_back(it->second);
        }
      if (candidates.size() > 16) throw CapacityError("designated product set too large");
      for (std::uint32_t mask = 1; mask < (1u << candidates.size()); ++mask) {
        std::set<StateId> pa, pb;
        std::vector<StateId> chosen;
        for (std::size_t j = 0; j < candidates.size(); ++j)
          if (mask & (1u << j)) {
            chosen.push_back(candidates[j]);
            pa.insert(pairs[candidates[j]].first);
            pb.insert(pairs[candidates[j]].second);
          }
        if (std::vector<StateId>(pa.begin(), pa.end()) != fa) continue;
        if (std::vector<StateId>(pb.begin(), pb.end()) != fb) continue;
        fam.insert(chosen);
      }
    }
  out.designated.assign(fam.begin(), fam.end());
  out.normalize();
  return out;
}

MullerTreeAutomaton tree_union(const MullerTreeAutomaton& a, const MullerTreeAutomaton& b) {
  a.check_well_formed();
  b.check_well_formed();
  if (a.alphabet != b.alphabet) throw InputError("union arms need equal alphabets");
  MullerTreeAutomaton out;
  out.alphabet = a.alphabet;
  out.num_states = 1 + a.num_states + b.num_states;
  out.initial = 0;
  auto sa = [&](StateId q) { return q + 1; };
  auto sb = [&](StateId q) { return q + 1 + a.num_states; };
  for (const auto& t : a.transitions) {
    out.transitions.push_back({sa(t.from), t.letter, sa(t.left), sa(t.right)});
    if (t.from == a.initial) out.transitions.push_back({0, t.letter, sa(t.left), sa(t.right)});
  }
  for (const auto& t : b.transitions) {
    out.transitions.push_back({sb(t.from), t.letter, sb(t.left), sb(t.right)});
    if (t.from == b.initial) out.transitions.push_back({0, t.letter, sb(t.left), sb(t.right)});
  }
  for (const auto& f : a.designated) {
    std::vector<StateId> g;
    for (StateId q : f) g.push_back(sa(q));
    out.designated.push_back(g);
  }
  for (const auto& f : b.designated) {
    std::vector<StateId> g;
    for (StateId q : f) g.push_back(sb(q));
    out.designated.push_back(g);
  }
  out.normalize();
  return out;
}

MullerTreeAutomaton tree_project(const MullerTreeAutomaton& a, std::size_t track) {
  a.check_well_formed();
  if (track >= static_cast<std::size_t>(a.alphabet.arity()))
    throw InputError("projection track out of range");
  MullerTreeAutomaton out = a;
  out.alphabet = a.alphabet.drop_track(static_cast<int>(track));
  for (auto& t : out.transitions) {
    std::vector<int> comps = a.alphabet.components(t.letter);
    comps.erase(comps.begin() + track);
    t.letter = out.alphabet.letter_of(comps);
  }
  out.normalize();
  return out;
}

MullerTreeAutomaton tree_relabel(const MullerTreeAutomaton& a, const LetterMap& map) {
  a.check_well_formed();
  if (static_cast<int>(map.to_source.size()) != map.target.size())
    throw InputError("letter map must be total on the target alphabet");
  for (int s : map.to_source)
    if (s < 0 || s >= a.alphabet.size()) throw InputError("letter map image out of range");
  std::vector<std::vector<const TreeTransition*>> by_letter(a.alphabet.size());
  for (const auto& t : a.transitions) by_letter[t.letter].push_back(&t);
  MullerTreeAutomaton out;
  out.alphabet = map.target;
  out.num_states = a.num_states;
  out.initial = a.initial;
  out.designated = a.designated;
  for (int tl = 0; tl < map.target.size(); ++tl)
    for (const TreeTransition* t : by_letter[map.to_source[tl]])
      out.transitions.push_back({t->from, tl, t->left, t->right});
  out.normalize();
  return out;
}

MullerTreeAutomaton lift_word_automaton_leftmost(const BuchiAutomaton& input) {
  BuchiAutomaton b = input;
  b.normalize();
  b.check_well_formed();
  if (b.num_states > 16) throw CapacityError("leftmost lift: word automaton too large");
  if (b.initial.size() != 1)
    throw InputError("leftmost lift expects a single initial state");
  MullerTreeAutomaton out;
  out.alphabet = b.alphabet;
  int u = b.num_states;  // unconstrained subtree state
  out.num_states = b.num_states + 1;
  out.initial = b.initial[0];
  for (const auto& t : b.transitions) out.transitions.push_back({t.from, t.letter, t.to, u});
  for (int l = 0; l < b.alphabet.size(); ++l) out.transitions.push_back({u, l, u, u});
  // Paths that leave the leftmost branch settle on {u}; the leftmost path
  // itself must realize a set meeting the word acceptance set.
  out.designated.push_back({u});
  for (std::uint32_t mask = 1; mask < (1u << b.num_states); ++mask) {
    bool hits = false;
    std::vector<StateId> set;
    for (int q = 0; q < b.num_states; ++q)
      if (mask & (1u << q)) {
        set.push_back(q);
        hits = hits || b.is_accepting(q);
      }
    if (hits) out.designated.push_back(set);
  }
  out.normalize();
  return out;
}

LassoWord leftmost_lasso(const RegularTree& t) {
  t.check_well_formed();
  std::vector<int> pos(t.num_nodes, -1), seq;
  int v = t.root;
  while (pos[v] < 0) {
    pos[v] = static_cast<int>(seq.size());
    seq.push_back(v);
    v = t.left[v];
  }
  LassoWord w;
  w.alphabet = t.alphabet;
  for (int i = 0; i < pos[v]; ++i) w.stem.push_back(t.label[seq[i]]);
  for (std::size_t i = pos[v]; i < seq.size(); ++i) w.loop.push_back(t.label[seq[i]]);
  return w;
}

RegularTree convolve_trees(const RegularTree& a, const RegularTree& b, const Budget& budget) {
  a.check_well_formed();
  b.check_well_formed();
  RegularTree out;
  out.alphabet = Alphabet::product({a.alphabet, b.alphabet}, budget);
  std::map<std::pair<int, int>, int> index;
  std::vector<std::pair<int, int>> nodes;
  auto intern = [&](int na, int nb) {
    auto [it, inserted] = index.emplace(std::make_pair(na, nb), static_cast<int>(nodes.size()));
    if (inserted) nodes.emplace_back(na, nb);
    return it->second;
  };
  out.root = intern(a.root, b.root);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    auto [na, nb] = nodes[i];
    std::vector<int> comps = a.alphabet.components(a.label[na]);
    std::vector<int> more = b.alphabet.components(b.label[nb]);
    comps.insert(comps.end(), more.begin(), more.end());
    out.label.push_back(out.alphabet.letter_of(comps));
    out.left.push_back(intern(a.left[na], b.left[nb]));
    out.right.push_back(intern(a.right[na], b.right[nb]));
  }
  out.num_nodes = static_cast<int>(nodes.size());
  return out;
}

RegularTree tree_track(const RegularTree& t, std::size_t track) {
  t.check_well_formed();
  if (track >= static_cast<std::size_t>(t.alphabet.arity()))
    throw InputError("track out of range");
  RegularTree out = t;
  out.alphabet = Alphabet::single(t.alphabet.tracks()[track]);
  for (int v = 0; v < t.num_nodes; ++v)
    out.label[v] = t.alphabet.component(t.label[v], static_cast<int>(track));
  return out;
}

MullerTreeAutomaton tree_diagonal(const MullerTreeAutomaton& a, const Budget& budget) {
  a.check_well_formed();
  MullerTreeAutomaton out = a;
  out.alphabet = Alphabet::product({a.alphabet, a.alphabet}, budget);
  for (auto& t : out.transitions) {
    std::vector<int> comps = a.alphabet.components(t.letter);
    std::vector<int> twice = comps;
    twice.insert(twice.end(), comps.begin(), comps.end());
    t.letter = out.alphabet.letter_of(twice);
  }
  out.normalize();
  return out;
}

MullerTreeAutomaton universal_tree_automaton(const Alphabet& alphabet) {
  MullerTreeAutomaton out;
  out.alphabet = alphabet;
  out.num_states = 1;
  out.initial = 0;
  for (int l = 0; l < alphabet.size(); ++l) out.transitions.push_back({0, l, 0, 0});
  out.designated.push_back({0});
  return out;
}

RegularTree constant_tree(const Alphabet& alphabet, int letter) {
  check_letter(letter, alphabet);
  RegularTree t;
  t.alphabet = alphabet;
  t.num_nodes = 1;
  t.root = 0;
  t.label = {letter};
  t.left = {0};
  t.right = {0};
  return t;
}

}  // namespace autstr
