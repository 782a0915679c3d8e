#include "autstr/structures.hpp"

#include <algorithm>
#include <deque>

#include "autstr/graph.hpp"

namespace autstr {

std::uint64_t node_index(const std::string& address) {
  std::uint64_t value = 0;
  for (char c : address) {
    if (c != 'l' && c != 'r') throw InputError("address must consist of 'l' and 'r'");
    value = 2 * value + (c == 'r' ? 1 : 0);
  }
  // length-then-lexicographic: all shorter addresses come first.
  return ((std::uint64_t{1} << address.size()) - 1) + value;
}

std::string node_unindex(std::uint64_t n) {
  int len = 0;
  while (((std::uint64_t{1} << (len + 1)) - 1) <= n) ++len;
  std::uint64_t value = n - ((std::uint64_t{1} << len) - 1);
  std::string address(len, 'l');
  for (int i = len - 1; i >= 0; --i) {
    if (value & 1) address[i] = 'r';
    value >>= 1;
  }
  return address;
}

BuchiAutomaton build_fin_automaton() {
  BuchiAutomaton a;
  a.alphabet = Alphabet::binary();
  a.num_states = 2;  // 0 = unconstrained, 1 = committed to reading 0 forever
  a.initial = {0};
  a.accepting = {1};
  a.transitions = {{0, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 0, 1}};
  a.normalize();
  return a;
}

BuchiAutomaton build_fin_k_automaton(int k) {
  if (k < 0) throw InputError("bound must be non-negative");
  BuchiAutomaton a;
  a.alphabet = Alphabet::binary();
  a.num_states = k + 1;  // state = number of 1s read so far
  a.initial = {0};
  for (int i = 0; i <= k; ++i) {
    a.accepting.push_back(i);
    a.transitions.push_back({i, 0, i});
    if (i < k) a.transitions.push_back({i, 1, i + 1});
  }
  a.normalize();
  return a;
}

MullerTreeAutomaton build_antichain_automaton() {
  // States: 0 = on the guessed branch (plain step), 1 = on the branch and
  // entered by a departure event, 2 = seeking a 1 below an abandoned sibling,
  // 3 = idle subtree.  A branch must take infinitely many departures (sets
  // {0,1} and {1}); seekers must discharge at a 1-labeled node, after which
  // everything idles ({3}).
  MullerTreeAutomaton t;
  t.alphabet = Alphabet::binary();
  t.num_states = 4;
  t.initial = 0;
  for (StateId m : {0, 1})
    for (int a : {0, 1}) {
      t.transitions.push_back({m, a, 0, 3});  // branch left, no claim
      t.transitions.push_back({m, a, 3, 0});  // branch right, no claim
      t.transitions.push_back({m, a, 1, 2});  // branch left, claim right
      t.transitions.push_back({m, a, 2, 1});  // branch right, claim left
    }
  t.transitions.push_back({2, 0, 2, 3});
  t.transitions.push_back({2, 0, 3, 2});
  t.transitions.push_back({2, 1, 3, 3});  // discharge at the first 1
  for (int a : {0, 1}) t.transitions.push_back({3, a, 3, 3});
  t.designated = {{0, 1}, {1}, {3}};
  t.normalize();
  return t;
}

namespace {

// State layout for the ideal automaton: 0 = root; then guess z (subtree has
// no 1), p (contains a 1, witness pending), d (contains a 1, discharged at
// this node), each doubled by the sibling flag.
constexpr StateId kZ = 1, kP = 3, kD = 5;

StateId guessed(StateId base, bool sibling_has_one) { return base + (sibling_has_one ? 1 : 0); }

}  // namespace

MullerTreeAutomaton build_no_antichain_automaton() {
  MullerTreeAutomaton t;
  t.alphabet = Alphabet::binary();
  t.num_states = 7;
  t.initial = 0;
  const std::vector<StateId> guesses = {kZ, kP, kD};
  auto child_pair = [&](StateId gl, StateId gr) {
    return std::make_pair(guessed(gl, gr != kZ), guessed(gr, gl != kZ));
  };
  // z: the subtree is 1-free — label 0, both children 1-free.
  for (int f = 0; f <= 1; ++f) t.transitions.push_back({kZ + f, 0, kZ, kZ});
  // p: pending claim — label 0 and at least one child continues a claim.
  for (int f = 0; f <= 1; ++f)
    for (StateId gl : guesses)
      for (StateId gr : guesses) {
        if (gl == kZ && gr == kZ) continue;
        auto [l, r] = child_pair(gl, gr);
        t.transitions.push_back({kP + f, 0, l, r});
      }
  // d: claim discharged here — label 1, children guessed freely.
  for (int f = 0; f <= 1; ++f)
    for (StateId gl : guesses)
      for (StateId gr : guesses) {
        auto [l, r] = child_pair(gl, gr);
        t.transitions.push_back({kD + f, 1, l, r});
      }
  // Root behaves as a fresh guess of any kind.
  t.transitions.push_back({0, 0, kZ, kZ});
  for (StateId gl : guesses)
    for (StateId gr : guesses) {
      auto [l, r] = child_pair(gl, gr);
      if (!(gl == kZ && gr == kZ)) t.transitions.push_back({0, 0, l, r});
      t.transitions.push_back({0, 1, l, r});
    }
  // Flag-free infinity sets only: pending claims must keep discharging and
  // departures (sibling-contains-1 flags) must stop on every path.
  t.designated = {{kZ}, {kD}, {kP, kD}};
  t.normalize();
  return t;
}

namespace {

struct OracleData {
  int one_letter;
  std::vector<std::vector<int>> succ;
  std::vector<bool> reachable;
  std::vector<bool> contains1;
  std::vector<int> comp;
};

OracleData oracle_data(const RegularTree& t) {
  t.check_well_formed();
  if (t.alphabet != Alphabet::binary()) throw InputError("antichain oracle expects a {0,1} tree");
  OracleData d;
  d.one_letter = 1;
  d.succ.resize(t.num_nodes);
  for (int v = 0; v < t.num_nodes; ++v) d.succ[v] = {t.left[v], t.right[v]};
  d.reachable = reachable_from(d.succ, {t.root});
  std::vector<bool> ones(t.num_nodes, false);
  for (int v = 0; v < t.num_nodes; ++v) ones[v] = t.label[v] == d.one_letter;
  d.contains1 = can_reach(d.succ, ones);
  d.comp = strongly_connected_components(d.succ);
  return d;
}

bool departure_at(const RegularTree& t, const OracleData& d, int u, char dir) {
  int taken = dir == 'l' ? t.left[u] : t.right[u];
  int sibling = dir == 'l' ? t.right[u] : t.left[u];
  return d.comp[u] == d.comp[taken] && d.contains1[sibling];
}

}  // namespace

AntichainVerdict antichain_oracle(const RegularTree& t) {
  OracleData d = oracle_data(t);
  for (int u = 0; u < t.num_nodes; ++u) {
    if (!d.reachable[u]) continue;
    if (departure_at(t, d, u, 'l') || departure_at(t, d, u, 'r')) return {true, 0};
  }
  // Finite case: Kleene fixpoint for the maximum antichain below each node.
  std::vector<long long> width(t.num_nodes, 0);
  long long cap = static_cast<long long>(t.num_nodes) * 65;
  for (long long it = 0;; ++it) {
    if (it > cap)
      throw InvariantError("width fixpoint diverged although the classification is finite");
    bool changed = false;
    for (int v = 0; v < t.num_nodes; ++v) {
      if (!d.reachable[v]) continue;
      long long w = width[t.left[v]] + width[t.right[v]];
      if (t.label[v] == d.one_letter) w = std::max(w, 1LL);
      if (w > (1LL << 62)) throw InvariantError("width fixpoint overflow");
      if (w != width[v]) {
        width[v] = w;
        changed = true;
      }
    }
    if (!changed) break;
  }
  return {false, width[t.root]};
}

namespace {

std::string letters_along(const RegularTree& t, const std::vector<int>& path) {
  std::string out;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    if (t.left[path[i]] == path[i + 1])
      out.push_back('l');
    else if (t.right[path[i]] == path[i + 1])
      out.push_back('r');
    else
      throw InvariantError("path step is not an edge");
  }
  return out;
}

/// BFS from `source` to the nearest 1-labeled node, preferring left steps.
std::string path_to_one(const RegularTree& t, int source) {
  std::vector<int> prev(t.num_nodes, -2), prev_dir(t.num_nodes, 0);
  std::deque<int> queue;
  prev[source] = -1;
  queue.push_back(source);
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    if (t.label[v] == 1) {
      std::string out;
      for (int x = v; prev[x] != -1; x = prev[x]) out.push_back(prev_dir[x] == 0 ? 'l' : 'r');
      std::reverse(out.begin(), out.end());
      return out;
    }
    for (int dir = 0; dir <= 1; ++dir) {
      int w = dir == 0 ? t.left[v] : t.right[v];
      if (prev[w] == -2) {
        prev[w] = v;
        prev_dir[w] = dir;
        queue.push_back(w);
      }
    }
  }
  throw InvariantError("no 1-labeled node reachable from the claimed side");
}

}  // namespace

AntichainWitness antichain_witness(const RegularTree& t) {
  OracleData d = oracle_data(t);
  for (int u = 0; u < t.num_nodes; ++u) {
    if (!d.reachable[u]) continue;
    for (char dir : {'l', 'r'}) {
      if (!departure_at(t, d, u, dir)) continue;
      int taken = dir == 'l' ? t.left[u] : t.right[u];
      int sibling = dir == 'l' ? t.right[u] : t.left[u];
      AntichainWitness w;
      w.to_cycle = letters_along(t, shortest_path(d.succ, {t.root}, u));
      w.cycle = std::string(1, dir) + letters_along(t, shortest_path(d.succ, {taken}, u));
      w.depart = dir == 'l' ? 'r' : 'l';
      w.to_one = path_to_one(t, sibling);
      return w;
    }
  }
  throw InputError("tree has no infinite antichain witness");
}

long long max_truncated_antichain(const RegularTree& t, int depth) {
  t.check_well_formed();
  std::vector<std::string> ones;
  std::vector<std::pair<int, std::string>> stack{{t.root, ""}};
  while (!stack.empty()) {
    auto [v, addr] = stack.back();
    stack.pop_back();
    if (t.label[v] == 1) ones.push_back(addr);
    if (static_cast<int>(addr.size()) < depth) {
      stack.push_back({t.left[v], addr + "l"});
      stack.push_back({t.right[v], addr + "r"});
    }
  }
  // In a finite prefix-ordered set the maximal elements form a maximum
  // antichain: any antichain injects into them by extension.
  long long count = 0;
  for (const auto& a : ones) {
    bool maximal = true;
    for (const auto& b : ones)
      if (b.size() > a.size() && b.compare(0, a.size(), a) == 0) maximal = false;
    if (maximal) ++count;
  }
  return count;
}

RegularTree chain_tree(int n) {
  if (n < 0) throw InputError("chain depth must be non-negative");
  RegularTree t;
  t.alphabet = Alphabet::binary();
  int chain = n + 1, dead = n + 2;
  t.num_nodes = n + 3;
  t.root = 0;
  t.label.assign(t.num_nodes, 0);
  t.left.assign(t.num_nodes, dead);
  t.right.assign(t.num_nodes, dead);
  for (int i = 0; i < n; ++i) t.left[i] = i + 1;
  t.right[n] = chain;
  t.label[chain] = 1;
  t.right[chain] = chain;
  return t;
}

RegularTree antichain_tree() {
  RegularTree t;
  t.alphabet = Alphabet::binary();
  t.num_nodes = 3;  // 0 = left spine, 1 = the 1-labeled member, 2 = dead
  t.root = 0;
  t.label = {0, 1, 0};
  t.left = {0, 2, 2};
  t.right = {1, 2, 2};
  return t;
}

LetterMap boolean_letter_map(int arity,
                             const std::function<bool(const std::vector<bool>&)>& fn) {
  LetterMap map;
  map.target = Alphabet::product(std::vector<Alphabet>(arity, Alphabet::binary()));
  for (int letter = 0; letter < map.target.size(); ++letter) {
    std::vector<int> comps = map.target.components(letter);
    std::vector<bool> bits(comps.size());
    for (std::size_t i = 0; i < comps.size(); ++i) bits[i] = comps[i] == 1;
    map.to_source.push_back(fn(bits) ? 1 : 0);
  }
  return map;
}

LetterMap eq_letter_map() {
  return boolean_letter_map(2, [](const std::vector<bool>& b) { return b[0] != b[1]; });
}
LetterMap subset_letter_map() {
  return boolean_letter_map(2, [](const std::vector<bool>& b) { return b[0] && !b[1]; });
}
LetterMap cap_letter_map() {
  return boolean_letter_map(3, [](const std::vector<bool>& b) { return (b[0] && b[1]) != b[2]; });
}
LetterMap cup_letter_map() {
  return boolean_letter_map(3, [](const std::vector<bool>& b) { return (b[0] || b[1]) != b[2]; });
}
LetterMap neg_letter_map() {
  return boolean_letter_map(2, [](const std::vector<bool>& b) { return !b[0] != b[1]; });
}
LetterMap zero_letter_map() {
  return boolean_letter_map(1, [](const std::vector<bool>& b) { return b[0]; });
}
LetterMap one_letter_map() {
  return boolean_letter_map(1, [](const std::vector<bool>& b) { return !b[0]; });
}

Presentation build_B1_presentation() {
  BuchiAutomaton fin = build_fin_automaton();
  Presentation p;
  p.kind = PresentationKind::word;
  p.word.base = Alphabet::binary();
  p.word.domain = universal_buchi(p.word.base);
  p.word.equality = word_relabel(fin, eq_letter_map());
  p.word.relations = {
      {"subset", 2, RelationKind::relation, word_relabel(fin, subset_letter_map())},
      {"cap", 3, RelationKind::function_graph, word_relabel(fin, cap_letter_map())},
      {"cup", 3, RelationKind::function_graph, word_relabel(fin, cup_letter_map())},
      {"neg", 2, RelationKind::function_graph, word_relabel(fin, neg_letter_map())},
      {"zero", 1, RelationKind::constant_graph, word_relabel(fin, zero_letter_map())},
      {"one", 1, RelationKind::constant_graph, word_relabel(fin, one_letter_map())},
  };
  p.check_well_formed();
  return p;
}

Presentation build_B2_presentation() {
  MullerTreeAutomaton ideal = build_no_antichain_automaton();
  MullerTreeAutomaton anti = build_antichain_automaton();
  Presentation p;
  p.kind = PresentationKind::tree;
  p.tree.base = Alphabet::binary();
  p.tree.domain = universal_tree_automaton(p.tree.base);
  p.tree.equality = tree_relabel(ideal, eq_letter_map());
  p.tree.relations = {
      {"subset", 2, RelationKind::relation, tree_relabel(ideal, subset_letter_map())},
      {"cap", 3, RelationKind::function_graph, tree_relabel(ideal, cap_letter_map())},
      {"cup", 3, RelationKind::function_graph, tree_relabel(ideal, cup_letter_map())},
      {"neg", 2, RelationKind::function_graph, tree_relabel(ideal, neg_letter_map())},
      {"zero", 1, RelationKind::constant_graph, tree_relabel(ideal, zero_letter_map())},
      {"one", 1, RelationKind::constant_graph, tree_relabel(ideal, one_letter_map())},
  };
  p.tree.complements["eq"] = tree_relabel(anti, eq_letter_map());
  p.tree.complements["subset"] = tree_relabel(anti, subset_letter_map());
  p.tree.complements["cap"] = tree_relabel(anti, cap_letter_map());
  p.tree.complements["cup"] = tree_relabel(anti, cup_letter_map());
  p.tree.complements["neg"] = tree_relabel(anti, neg_letter_map());
  p.tree.complements["zero"] = tree_relabel(anti, zero_letter_map());
  p.tree.complements["one"] = tree_relabel(anti, one_letter_map());
  p.check_well_formed();
  return p;
}

LassoWord atomless_split_word(const LassoWord& input) {
  LassoWord x = normalize_lasso(input);
  if (x.alphabet != Alphabet::binary()) throw InputError("split expects a {0,1} word");
  BuchiAutomaton fin = build_fin_automaton();
  if (word_membership(fin, x)) throw InputError("split of a zero element");

  int loop_ones = 0;
  for (int b : x.loop) loop_ones += b;
  LassoWord z;
  z.alphabet = x.alphabet;
  z.stem = x.stem;
  z.loop = x.loop;
  if (loop_ones % 2 == 1) z.loop.insert(z.loop.end(), x.loop.begin(), x.loop.end());
  // Keep the 1st, 3rd, 5th, ... occurrence of 1; the doubled loop makes the
  // parity pattern periodic.
  long long seen = 0;
  for (auto part : {&z.stem, &z.loop})
    for (int& b : *part)
      if (b == 1) b = (seen++ % 2 == 0) ? 1 : 0;

  if (word_membership(fin, z)) throw InvariantError("split result collapsed to zero");
  LassoWord zx = convolve_lassos({z, x});
  if (!word_membership(word_relabel(fin, subset_letter_map()), zx))
    throw InvariantError("split result is not below the input");
  if (word_membership(word_relabel(fin, eq_letter_map()), zx))
    throw InvariantError("split result equals the input");
  return z;
}

RegularTree atomless_split_tree(const RegularTree& x) {
  x.check_well_formed();
  if (x.alphabet != Alphabet::binary()) throw InputError("split expects a {0,1} tree");
  if (!antichain_oracle(x).infinite) throw InputError("split of a zero element");
  AntichainWitness wit = antichain_witness(x);

  // 1-set of the result: to_cycle · cycle^{2m} · depart · to_one, m >= 0 —
  // every other member of the extracted antichain.
  int nw = static_cast<int>(wit.to_cycle.size());
  int nc = static_cast<int>(wit.cycle.size());
  int np = static_cast<int>(wit.to_one.size());
  RegularTree z;
  z.alphabet = x.alphabet;
  int base_k = nw, base_p = nw + 2 * nc, one = base_p + np, dead = one + 1;
  z.num_nodes = dead + 1;
  z.root = 0;
  z.label.assign(z.num_nodes, 0);
  z.label[one] = 1;
  z.left.assign(z.num_nodes, dead);
  z.right.assign(z.num_nodes, dead);
  auto set_child = [&](int node, char dir, int to) {
    (dir == 'l' ? z.left[node] : z.right[node]) = to;
  };
  for (int j = 0; j < nw; ++j)
    set_child(j, wit.to_cycle[j], j + 1 < nw ? j + 1 : base_k);
  for (int i = 0; i < 2 * nc; ++i)
    set_child(base_k + i, wit.cycle[i % nc], base_k + (i + 1) % (2 * nc));
  set_child(base_k, wit.depart, np > 0 ? base_p : one);
  for (int j = 0; j < np; ++j)
    set_child(base_p + j, wit.to_one[j], j + 1 < np ? base_p + j + 1 : one);

  MullerTreeAutomaton ideal = build_no_antichain_automaton();
  MullerTreeAutomaton anti = build_antichain_automaton();
  RegularTree zero = constant_tree(z.alphabet, 0);
  if (!tree_membership(tree_relabel(anti, eq_letter_map()), convolve_trees(z, zero)))
    throw InvariantError("split result collapsed to zero");
  if (!tree_membership(tree_relabel(ideal, subset_letter_map()), convolve_trees(z, x)))
    throw InvariantError("split result is not below the input");
  if (!tree_membership(tree_relabel(anti, eq_letter_map()), convolve_trees(z, x)))
    throw InvariantError("split result equals the input");
  return z;
}

}  // namespace autstr
