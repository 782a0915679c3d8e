#include "autstr/buchi.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "autstr/graph.hpp"

namespace autstr {

namespace {

// Successor lists indexed by state, sorted by (letter, target).
std::vector<std::vector<std::pair<int, StateId>>> successor_index(const BuchiAutomaton& a) {
  std::vector<std::vector<std::pair<int, StateId>>> succ(a.num_states);
  for (const auto& t : a.transitions) succ[t.from].push_back({t.letter, t.to});
  for (auto& v : succ) std::sort(v.begin(), v.end());
  return succ;
}

std::vector<std::vector<int>> state_graph(const BuchiAutomaton& a) {
  std::vector<std::vector<int>> succ(a.num_states);
  for (const auto& t : a.transitions) succ[t.from].push_back(t.to);
  return succ;
}

}  // namespace

void BuchiAutomaton::normalize() {
  auto dedupe = [](std::vector<StateId>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  };
  dedupe(initial);
  dedupe(accepting);
  std::sort(transitions.begin(), transitions.end());
  transitions.erase(std::unique(transitions.begin(), transitions.end()), transitions.end());
}

void BuchiAutomaton::check_well_formed() const {
  if (alphabet.arity() == 0) throw InputError("automaton has no alphabet");
  auto check_state = [&](StateId q) {
    if (q < 0 || q >= num_states) throw InputError("state index out of range");
  };
  for (StateId q : initial) check_state(q);
  for (StateId q : accepting) check_state(q);
  for (const auto& t : transitions) {
    check_state(t.from);
    check_state(t.to);
    if (t.letter < 0 || t.letter >= alphabet.size()) throw InputError("letter index out of range");
  }
}

bool BuchiAutomaton::is_accepting(StateId q) const {
  return std::binary_search(accepting.begin(), accepting.end(), q);
}

void LassoWord::check_well_formed() const {
  if (loop.empty()) throw InputError("lasso loop must be non-empty");
  for (int c : stem)
    if (c < 0 || c >= alphabet.size()) throw InputError("lasso letter out of range");
  for (int c : loop)
    if (c < 0 || c >= alphabet.size()) throw InputError("lasso letter out of range");
}

LassoWord normalize_lasso(const LassoWord& w) {
  w.check_well_formed();
  LassoWord out = w;
  // Reduce the loop to its primitive period.
  int p = static_cast<int>(out.loop.size());
  for (int d = 1; d <= p / 2; ++d) {
    if (p % d != 0) continue;
    bool periodic = true;
    for (int i = d; i < p && periodic; ++i) periodic = out.loop[i] == out.loop[i - d];
    if (periodic) {
      out.loop.resize(d);
      break;
    }
  }
  // Absorb stem letters matching the loop tail into a rotation.
  while (!out.stem.empty() && out.stem.back() == out.loop.back()) {
    out.stem.pop_back();
    std::rotate(out.loop.begin(), out.loop.end() - 1, out.loop.end());
  }
  return out;
}

bool word_membership(const BuchiAutomaton& a, const LassoWord& w) {
  a.check_well_formed();
  if (a.alphabet != w.alphabet) throw InputError("membership: alphabet mismatch");
  LassoWord v = normalize_lasso(w);
  int s = static_cast<int>(v.stem.size());
  int p = static_cast<int>(v.loop.size());
  int period_len = s + p;
  auto letter_at = [&](int pos) { return pos < s ? v.stem[pos] : v.loop[pos - s]; };
  auto next_pos = [&](int pos) { return pos + 1 < period_len ? pos + 1 : s; };

  auto succ = successor_index(a);
  auto vid = [&](StateId q, int pos) { return q * period_len + pos; };
  std::vector<std::vector<int>> graph(static_cast<std::size_t>(a.num_states) * period_len);
  for (StateId q = 0; q < a.num_states; ++q)
    for (int pos = 0; pos < period_len; ++pos) {
      int letter = letter_at(pos);
      for (auto [l, to] : succ[q])
        if (l == letter) graph[vid(q, pos)].push_back(vid(to, next_pos(pos)));
    }
  std::vector<int> sources;
  for (StateId q : a.initial) sources.push_back(vid(q, 0));
  std::vector<bool> reach = reachable_from(graph, sources);

  int ncomp = 0;
  std::vector<int> comp = strongly_connected_components(graph, &ncomp);
  std::vector<bool> has_internal_edge(ncomp, false);
  for (int vtx = 0; vtx < static_cast<int>(graph.size()); ++vtx)
    for (int to : graph[vtx])
      if (comp[vtx] == comp[to]) has_internal_edge[comp[vtx]] = true;
  for (StateId q : a.accepting)
    for (int pos = 0; pos < period_len; ++pos) {
      int vtx = vid(q, pos);
      if (reach[vtx] && has_internal_edge[comp[vtx]]) return true;
    }
  return false;
}

std::optional<LassoWord> word_emptiness(const BuchiAutomaton& a) {
  a.check_well_formed();
  if (a.initial.empty()) return std::nullopt;
  auto graph = state_graph(a);
  std::vector<bool> reach = reachable_from(graph, a.initial);
  int ncomp = 0;
  std::vector<int> comp = strongly_connected_components(graph, &ncomp);
  std::vector<bool> has_internal_edge(ncomp, false);
  for (int v = 0; v < a.num_states; ++v)
    for (int w : graph[v])
      if (comp[v] == comp[w]) has_internal_edge[comp[v]] = true;

  StateId target = -1;
  for (StateId q : a.accepting)
    if (reach[q] && has_internal_edge[comp[q]]) {
      target = q;
      break;  // accepting is sorted: lowest index first
    }
  if (target < 0) return std::nullopt;

  auto succ = successor_index(a);
  // Shortest stem: BFS from the initial set, prev-pointers with letters.
  std::vector<int> prev(a.num_states, -2), prev_letter(a.num_states, -1);
  std::vector<int> queue;
  for (StateId q : a.initial) {
    prev[q] = -1;
    queue.push_back(q);
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    int v = queue[head];
    if (v == target) break;
    for (auto [l, to] : succ[v])
      if (prev[to] == -2) {
        prev[to] = v;
        prev_letter[to] = l;
        queue.push_back(to);
      }
  }
  std::vector<int> stem;
  for (int x = target; prev[x] != -1; x = prev[x]) stem.push_back(prev_letter[x]);
  std::reverse(stem.begin(), stem.end());

  // Shortest loop target -> target with at least one edge.
  std::vector<int> lprev(a.num_states, -2), lprev_letter(a.num_states, -1);
  std::vector<int> lqueue;
  std::vector<int> loop;
  for (auto [l, to] : succ[target]) {
    if (to == target) {
      loop = {l};
      break;
    }
    if (lprev[to] == -2 && to != target) {
      lprev[to] = -1;
      lprev_letter[to] = l;
      lqueue.push_back(to);
    }
  }
  if (loop.empty()) {
    int last_letter = -1, last_from = -1;
    for (std::size_t head = 0; head < lqueue.size() && last_from < 0; ++head) {
      int v = lqueue[head];
      for (auto [l, to] : succ[v]) {
        if (to == target) {
          last_from = v;
          last_letter = l;
          break;
        }
        if (lprev[to] == -2) {
          lprev[to] = v;
          lprev_letter[to] = l;
          lqueue.push_back(to);
        }
      }
    }
    if (last_from < 0) throw InvariantError("emptiness: cycle through accepting state vanished");
    for (int x = last_from; x != -1; x = lprev[x]) loop.push_back(lprev_letter[x]);
    std::reverse(loop.begin(), loop.end());
    loop.push_back(last_letter);
  }

  LassoWord witness{a.alphabet, stem, loop};
  if (!word_membership(a, witness)) throw InvariantError("emptiness witness failed verification");
  return witness;
}

BuchiAutomaton word_product_many(const std::vector<BuchiAutomaton>& parts, const Budget& budget) {
  if (parts.empty()) throw InputError("product of zero automata");
  int k = static_cast<int>(parts.size());
  for (const auto& p : parts) {
    p.check_well_formed();
    if (p.alphabet != parts[0].alphabet) throw InputError("product: alphabet mismatch");
  }
  const Alphabet& alphabet = parts[0].alphabet;
  std::vector<std::vector<std::vector<std::pair<int, StateId>>>> succ;
  for (const auto& p : parts) succ.push_back(successor_index(p));

  // State: factor states plus round-robin counter awaiting factor c's
  // acceptance.  Accepting: counter wraps, i.e. c = k-1 with factor k-1
  // accepting.
  struct Key {
    std::vector<StateId> qs;
    int c;
    auto operator<=>(const Key&) const = default;
  };
  std::map<Key, int> index;
  std::vector<Key> keys;
  BuchiAutomaton out;
  out.alphabet = alphabet;
  auto intern = [&](const Key& key) {
    auto it = index.find(key);
    if (it != index.end()) return it->second;
    if (keys.size() >= budget.max_states) throw CapacityError("product exceeds state budget");
    int id = static_cast<int>(keys.size());
    index.emplace(key, id);
    keys.push_back(key);
    return id;
  };

  // Seed with all combinations of initial states (counter 0).
  std::vector<std::vector<StateId>> seeds{{}};
  for (const auto& p : parts) {
    std::vector<std::vector<StateId>> next;
    for (const auto& pre : seeds)
      for (StateId q : p.initial) {
        auto ext = pre;
        ext.push_back(q);
        next.push_back(ext);
      }
    seeds = std::move(next);
  }
  for (const auto& qs : seeds) out.initial.push_back(intern(Key{qs, 0}));

  for (std::size_t head = 0; head < keys.size(); ++head) {
    Key cur = keys[head];
    bool cur_accepts = cur.c == k - 1 && parts[k - 1].is_accepting(cur.qs[k - 1]);
    int next_c = parts[cur.c].is_accepting(cur.qs[cur.c]) ? (cur.c + 1) % k : cur.c;
    if (cur_accepts) out.accepting.push_back(static_cast<int>(head));
    for (int letter = 0; letter < alphabet.size(); ++letter) {
      // Cartesian product of per-factor successors on this letter.
      std::vector<std::vector<StateId>> opts(k);
      bool dead = false;
      for (int i = 0; i < k && !dead; ++i) {
        for (auto [l, to] : succ[i][cur.qs[i]])
          if (l == letter) opts[i].push_back(to);
        if (opts[i].empty()) dead = true;
      }
      if (dead) continue;
      std::vector<int> pick(k, 0);
      while (true) {
        Key nxt;
        nxt.c = next_c;
        nxt.qs.resize(k);
        for (int i = 0; i < k; ++i) nxt.qs[i] = opts[i][pick[i]];
        int to_id = intern(nxt);
        out.transitions.push_back({static_cast<int>(head), letter, to_id});
        int i = k - 1;
        while (i >= 0 && ++pick[i] == static_cast<int>(opts[i].size())) pick[i--] = 0;
        if (i < 0) break;
      }
    }
  }
  out.num_states = static_cast<int>(keys.size());
  out.normalize();
  return out;
}

BuchiAutomaton word_product(const BuchiAutomaton& a, const BuchiAutomaton& b,
                            const Budget& budget) {
  return word_product_many({a, b}, budget);
}

BuchiAutomaton word_union(const BuchiAutomaton& a, const BuchiAutomaton& b) {
  a.check_well_formed();
  b.check_well_formed();
  if (a.alphabet != b.alphabet) throw InputError("union: alphabet mismatch");
  BuchiAutomaton out;
  out.alphabet = a.alphabet;
  out.num_states = a.num_states + b.num_states;
  int off = a.num_states;
  out.initial = a.initial;
  out.accepting = a.accepting;
  out.transitions = a.transitions;
  for (StateId q : b.initial) out.initial.push_back(q + off);
  for (StateId q : b.accepting) out.accepting.push_back(q + off);
  for (const auto& t : b.transitions) out.transitions.push_back({t.from + off, t.letter, t.to + off});
  out.normalize();
  return out;
}

BuchiAutomaton word_project(const BuchiAutomaton& a, int track) {
  a.check_well_formed();
  if (a.alphabet.arity() < 2) throw InputError("project: automaton has a single track");
  Alphabet target = a.alphabet.drop_track(track);
  BuchiAutomaton out;
  out.alphabet = target;
  out.num_states = a.num_states;
  out.initial = a.initial;
  out.accepting = a.accepting;
  for (const auto& t : a.transitions) {
    std::vector<int> comps = a.alphabet.components(t.letter);
    comps.erase(comps.begin() + track);
    out.transitions.push_back({t.from, target.letter_of(comps), t.to});
  }
  out.normalize();
  return out;
}

BuchiAutomaton word_relabel(const BuchiAutomaton& a, const LetterMap& map) {
  a.check_well_formed();
  if (static_cast<int>(map.to_source.size()) != map.target.size())
    throw InputError("relabel: letter map is not total on the target alphabet");
  for (int src : map.to_source)
    if (src < 0 || src >= a.alphabet.size())
      throw InputError("relabel: letter map image out of range");
  auto succ = successor_index(a);
  BuchiAutomaton out;
  out.alphabet = map.target;
  out.num_states = a.num_states;
  out.initial = a.initial;
  out.accepting = a.accepting;
  for (int t = 0; t < map.target.size(); ++t) {
    int src = map.to_source[t];
    for (StateId q = 0; q < a.num_states; ++q)
      for (auto [l, to] : succ[q])
        if (l == src) out.transitions.push_back({q, t, to});
  }
  out.normalize();
  return out;
}

BuchiAutomaton word_cylindrify(const BuchiAutomaton& a, int position,
                               std::vector<std::string> track_letters) {
  a.check_well_formed();
  Alphabet target = a.alphabet.insert_track(position, track_letters);
  LetterMap map;
  map.target = target;
  map.to_source.resize(target.size());
  for (int t = 0; t < target.size(); ++t) {
    std::vector<int> comps = target.components(t);
    comps.erase(comps.begin() + position);
    map.to_source[t] = a.alphabet.letter_of(comps);
  }
  return word_relabel(a, map);
}

BuchiAutomaton trim_useful(const BuchiAutomaton& a) {
  a.check_well_formed();
  auto graph = state_graph(a);
  std::vector<bool> reach = reachable_from(graph, a.initial);
  int ncomp = 0;
  std::vector<int> comp = strongly_connected_components(graph, &ncomp);
  std::vector<bool> has_internal_edge(ncomp, false);
  for (int v = 0; v < a.num_states; ++v)
    for (int w : graph[v])
      if (comp[v] == comp[w]) has_internal_edge[comp[v]] = true;
  std::vector<bool> core(a.num_states, false);
  for (StateId q : a.accepting) core[q] = has_internal_edge[comp[q]];
  std::vector<bool> to_core = can_reach(graph, core);
  std::vector<bool> useful(a.num_states, false);
  for (int q = 0; q < a.num_states; ++q) useful[q] = reach[q] && to_core[q];

  // Renumber in BFS discovery order over the useful subgraph.
  auto succ = successor_index(a);
  std::vector<int> order(a.num_states, -1);
  std::vector<int> queue;
  int next_id = 0;
  for (StateId q : a.initial)
    if (useful[q] && order[q] < 0) {
      order[q] = next_id++;
      queue.push_back(q);
    }
  for (std::size_t head = 0; head < queue.size(); ++head)
    for (auto [l, to] : succ[queue[head]])
      if (useful[to] && order[to] < 0) {
        order[to] = next_id++;
        queue.push_back(to);
      }

  BuchiAutomaton out;
  out.alphabet = a.alphabet;
  out.num_states = next_id;
  for (StateId q : a.initial)
    if (order[q] >= 0) out.initial.push_back(order[q]);
  for (StateId q : a.accepting)
    if (order[q] >= 0) out.accepting.push_back(order[q]);
  for (const auto& t : a.transitions)
    if (order[t.from] >= 0 && order[t.to] >= 0)
      out.transitions.push_back({order[t.from], t.letter, order[t.to]});
  out.normalize();
  return out;
}

namespace {

/// Direct-simulation preorder: sim[s][t] iff t simulates s, i.e. acceptance
/// of s implies acceptance of t and every move of s is matched by a move of
/// t to a simulating successor.  Greatest-fixpoint refinement over the
/// sorted transition list (no per-letter table, so wide alphabets are fine).
std::vector<std::vector<bool>> direct_simulation(const BuchiAutomaton& a) {
  int n = a.num_states;
  auto succ = successor_index(a);  // per state, sorted (letter, to)
  std::vector<std::vector<bool>> sim(n, std::vector<bool>(n));
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t) sim[s][t] = !a.is_accepting(s) || a.is_accepting(t);
  bool changed = true;
  while (changed) {
    changed = false;
    for (int s = 0; s < n; ++s)
      for (int t = 0; t < n; ++t) {
        if (!sim[s][t]) continue;
        bool ok = true;
        std::size_t ti = 0;
        for (std::size_t si = 0; ok && si < succ[s].size(); ++si) {
          int letter = succ[s][si].first;
          while (ti < succ[t].size() && succ[t][ti].first < letter) ++ti;
          bool matched = false;
          for (std::size_t tj = ti; tj < succ[t].size() && succ[t][tj].first == letter; ++tj)
            matched = matched || sim[succ[s][si].second][succ[t][tj].second];
          ok = matched;
        }
        if (!ok) {
          sim[s][t] = false;
          changed = true;
        }
      }
  }
  return sim;
}

/// Drops transitions (and initial states) that are strictly dominated by a
/// sibling under direct simulation; language-preserving.
BuchiAutomaton prune_little_brothers(const BuchiAutomaton& a,
                                     const std::vector<std::vector<bool>>& sim) {
  auto strictly_below = [&](StateId s, StateId t) { return sim[s][t] && !sim[t][s]; };
  BuchiAutomaton out = a;
  out.transitions.clear();
  // Transitions are sorted, so siblings (same source and letter) form runs.
  for (std::size_t begin = 0; begin < a.transitions.size();) {
    std::size_t end = begin;
    while (end < a.transitions.size() &&
           a.transitions[end].from == a.transitions[begin].from &&
           a.transitions[end].letter == a.transitions[begin].letter)
      ++end;
    for (std::size_t i = begin; i < end; ++i) {
      bool dominated = false;
      for (std::size_t j = begin; j < end; ++j)
        if (strictly_below(a.transitions[i].to, a.transitions[j].to)) dominated = true;
      if (!dominated) out.transitions.push_back(a.transitions[i]);
    }
    begin = end;
  }
  out.initial.clear();
  for (StateId s : a.initial) {
    bool dominated = false;
    for (StateId t : a.initial) dominated = dominated || strictly_below(s, t);
    if (!dominated) out.initial.push_back(s);
  }
  out.normalize();
  return out;
}

/// Merges mutually simulating states.
BuchiAutomaton quotient_mutual_simulation(const BuchiAutomaton& a,
                                          const std::vector<std::vector<bool>>& sim) {
  int n = a.num_states;
  std::vector<int> rep(n);
  for (int q = 0; q < n; ++q) {
    rep[q] = q;
    for (int r = 0; r < q; ++r)
      if (sim[q][r] && sim[r][q]) {
        rep[q] = rep[r];
        break;
      }
  }
  std::vector<int> renumber(n, -1);
  int count = 0;
  for (int q = 0; q < n; ++q)
    if (rep[q] == q) renumber[q] = count++;
  BuchiAutomaton out;
  out.alphabet = a.alphabet;
  out.num_states = count;
  for (StateId q : a.initial) out.initial.push_back(renumber[rep[q]]);
  for (StateId q : a.accepting) out.accepting.push_back(renumber[rep[q]]);
  for (const auto& t : a.transitions)
    out.transitions.push_back({renumber[rep[t.from]], t.letter, renumber[rep[t.to]]});
  out.normalize();
  return out;
}

}  // namespace

BuchiAutomaton reduce_simulation(const BuchiAutomaton& a, int max_input_states) {
  BuchiAutomaton cur = quotient_bisimulation(trim_useful(a));
  for (int round = 0; round < 4; ++round) {
    if (cur.num_states == 0 || cur.num_states > max_input_states) return cur;
    int before_states = cur.num_states;
    std::size_t before_trans = cur.transitions.size();
    cur = trim_useful(prune_little_brothers(cur, direct_simulation(cur)));
    if (cur.num_states > 0)
      cur = trim_useful(quotient_mutual_simulation(cur, direct_simulation(cur)));
    if (cur.num_states == before_states && cur.transitions.size() == before_trans) break;
  }
  return cur;
}

BuchiAutomaton quotient_bisimulation(const BuchiAutomaton& a) {
  a.check_well_formed();
  if (a.num_states == 0) return a;
  auto succ = successor_index(a);
  std::vector<int> cls(a.num_states);
  for (int q = 0; q < a.num_states; ++q) cls[q] = a.is_accepting(q) ? 1 : 0;
  while (true) {
    // Signature: own class + set of (letter, successor class).
    std::map<std::pair<int, std::vector<std::pair<int, int>>>, int> sig_index;
    std::vector<int> next_cls(a.num_states);
    for (int q = 0; q < a.num_states; ++q) {
      std::vector<std::pair<int, int>> moves;
      for (auto [l, to] : succ[q]) moves.push_back({l, cls[to]});
      std::sort(moves.begin(), moves.end());
      moves.erase(std::unique(moves.begin(), moves.end()), moves.end());
      auto key = std::make_pair(cls[q], std::move(moves));
      auto [it, fresh] = sig_index.emplace(std::move(key), static_cast<int>(sig_index.size()));
      next_cls[q] = it->second;
      (void)fresh;
    }
    bool changed = false;
    for (int q = 0; q < a.num_states; ++q) changed |= next_cls[q] != cls[q];
    cls = std::move(next_cls);
    if (!changed) break;
  }
  // Renumber classes by their smallest member for determinism.
  std::map<int, int> first_member;
  for (int q = 0; q < a.num_states; ++q)
    if (!first_member.count(cls[q])) first_member[cls[q]] = q;
  std::vector<std::pair<int, int>> reps;  // (smallest member, class)
  for (auto [c, q] : first_member) reps.push_back({q, c});
  std::sort(reps.begin(), reps.end());
  std::vector<int> renumber(reps.size());
  std::map<int, int> class_to_new;
  for (std::size_t i = 0; i < reps.size(); ++i) class_to_new[reps[i].second] = static_cast<int>(i);

  BuchiAutomaton out;
  out.alphabet = a.alphabet;
  out.num_states = static_cast<int>(reps.size());
  for (StateId q : a.initial) out.initial.push_back(class_to_new[cls[q]]);
  for (StateId q : a.accepting) out.accepting.push_back(class_to_new[cls[q]]);
  for (const auto& t : a.transitions)
    out.transitions.push_back({class_to_new[cls[t.from]], t.letter, class_to_new[cls[t.to]]});
  out.normalize();
  return out;
}

BuchiAutomaton universal_buchi(const Alphabet& alphabet) {
  BuchiAutomaton out;
  out.alphabet = alphabet;
  out.num_states = 1;
  out.initial = {0};
  out.accepting = {0};
  for (int l = 0; l < alphabet.size(); ++l) out.transitions.push_back({0, l, 0});
  return out;
}

BuchiAutomaton word_diagonal(const BuchiAutomaton& a) {
  a.check_well_formed();
  Alphabet target = Alphabet::product({a.alphabet, a.alphabet});
  BuchiAutomaton out;
  out.alphabet = target;
  out.num_states = a.num_states;
  out.initial = a.initial;
  out.accepting = a.accepting;
  for (const auto& t : a.transitions) {
    std::vector<int> comps = a.alphabet.components(t.letter);
    std::vector<int> doubled = comps;
    doubled.insert(doubled.end(), comps.begin(), comps.end());
    out.transitions.push_back({t.from, target.letter_of(doubled), t.to});
  }
  out.normalize();
  return out;
}

LassoWord convolve_lassos(const std::vector<LassoWord>& parts) {
  if (parts.empty()) throw InputError("convolution of zero lassos");
  for (const auto& p : parts) p.check_well_formed();
  std::vector<Alphabet> alphabets;
  for (const auto& p : parts) alphabets.push_back(p.alphabet);
  Alphabet target = Alphabet::product(alphabets);
  std::size_t stem_len = 0, loop_len = 1;
  for (const auto& p : parts) {
    stem_len = std::max(stem_len, p.stem.size());
    loop_len = std::lcm(loop_len, p.loop.size());
  }
  auto letter_at = [](const LassoWord& p, std::size_t pos) {
    if (pos < p.stem.size()) return p.stem[pos];
    return p.loop[(pos - p.stem.size()) % p.loop.size()];
  };
  LassoWord out;
  out.alphabet = target;
  for (std::size_t pos = 0; pos < stem_len + loop_len; ++pos) {
    std::vector<int> comps;
    for (const auto& p : parts) {
      std::vector<int> c = p.alphabet.components(letter_at(p, pos));
      comps.insert(comps.end(), c.begin(), c.end());
    }
    int letter = target.letter_of(comps);
    if (pos < stem_len)
      out.stem.push_back(letter);
    else
      out.loop.push_back(letter);
  }
  return out;
}

LassoWord lasso_track(const LassoWord& w, int track) {
  w.check_well_formed();
  if (track < 0 || track >= w.alphabet.arity()) throw InputError("track index out of range");
  LassoWord out;
  out.alphabet = Alphabet::single(w.alphabet.tracks()[track]);
  for (int l : w.stem) out.stem.push_back(w.alphabet.component(l, track));
  for (int l : w.loop) out.loop.push_back(w.alphabet.component(l, track));
  return out;
}

}  // namespace autstr
