#include <algorithm>
#include <climits>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "autstr/buchi.hpp"

namespace autstr {

// Complementation through determinization.  The input is determinized into a
// parity automaton over history trees: each tree node holds a set of input
// states and a name; names are dense and ordered by node age, so the smallest
// name touched by a tree event yields a parity priority.  A node spawns a
// youngest child carrying the accepting part of its label every step; a state
// appearing in two sibling subtrees survives only in the older one; nodes
// with empty labels are deleted (an odd event on the smallest deleted name);
// a node whose children cover its label sheds all descendants (an even event
// on its name).  A word is accepted by the input iff some node is eventually
// never deleted and sheds its descendants infinitely often, which is exactly
// "the least priority seen infinitely often is even".  The complement shifts
// every priority by one and converts the parity condition back to a Büchi
// condition by guessing the least recurring even priority.

namespace {

struct SNode {
  int name = 0;
  std::vector<int> states;   // sorted label
  std::vector<SNode> children;  // age order, names increasing
};

void encode_tree(const SNode& v, std::vector<int>& out) {
  out.push_back(v.name);
  out.push_back(static_cast<int>(v.states.size()));
  for (int q : v.states) out.push_back(q);
  out.push_back(static_cast<int>(v.children.size()));
  for (const SNode& c : v.children) encode_tree(c, out);
}

/// Deterministic min-parity automaton with transition priorities; state -1 is
/// the dead sink reached once the input has no surviving run.
struct DetParity {
  int num_states = 0;
  int initial = -1;
  std::vector<std::vector<int>> next;      // [state][letter], -1 = sink
  std::vector<std::vector<int>> priority;  // [state][letter]
  int neutral = 1;                         // odd priority emitted by the sink
};

class Determinizer {
 public:
  Determinizer(const BuchiAutomaton& in, const Budget& budget)
      : in_(in), budget_(budget), n_(in.num_states), acc_(n_, false),
        delta_(n_, std::vector<std::vector<int>>(in.alphabet.size())) {
    for (StateId q : in_.accepting) acc_[q] = true;
    for (const auto& t : in_.transitions) delta_[t.from][t.letter].push_back(t.to);
    for (auto& per_state : delta_)
      for (auto& v : per_state) std::sort(v.begin(), v.end());
  }

  DetParity run() {
    DetParity out;
    out.neutral = 2 * n_ + 3;
    SNode root;
    root.name = 1;
    for (StateId q : in_.initial) root.states.push_back(q);
    std::sort(root.states.begin(), root.states.end());
    root.states.erase(std::unique(root.states.begin(), root.states.end()), root.states.end());
    out.initial = intern(root);
    int letters = in_.alphabet.size();
    for (std::size_t head = 0; head < trees_.size(); ++head) {
      out.next.emplace_back(letters, -1);
      out.priority.emplace_back(letters, out.neutral);
      for (int letter = 0; letter < letters; ++letter) {
        SNode t = trees_[head];  // copy: step mutates
        int p = step(t, letter);
        out.priority[head][letter] = p;
        out.next[head][letter] = t.states.empty() ? -1 : intern(t);
      }
    }
    out.num_states = static_cast<int>(trees_.size());
    return out;
  }

 private:
  int intern(const SNode& t) {
    std::vector<int> key;
    encode_tree(t, key);
    auto it = index_.find(key);
    if (it != index_.end()) return it->second;
    if (trees_.size() >= budget_.max_states)
      throw CapacityError("determinization exceeds state budget");
    int id = static_cast<int>(trees_.size());
    index_.emplace(std::move(key), id);
    trees_.push_back(t);
    return id;
  }

  /// Advances every label one letter and spawns the accepting part of each
  /// node as its youngest child.
  void advance(SNode& v, int letter, int& fresh) {
    std::vector<char> mark(n_, 0);
    for (int q : v.states)
      for (int to : delta_[q][letter]) mark[to] = 1;
    v.states.clear();
    for (int q = 0; q < n_; ++q)
      if (mark[q]) v.states.push_back(q);
    for (SNode& c : v.children) advance(c, letter, fresh);
    std::vector<int> seed;
    for (int q : v.states)
      if (acc_[q]) seed.push_back(q);
    if (!seed.empty()) {
      SNode child;
      child.name = fresh++;
      child.states = std::move(seed);
      v.children.push_back(std::move(child));
    }
  }

  void strip(SNode& v, const std::vector<char>& taken) {
    std::erase_if(v.states, [&](int q) { return taken[q]; });
    for (SNode& c : v.children) strip(c, taken);
  }

  /// A state claimed by an older sibling subtree is removed from all younger
  /// ones.
  void dedup(SNode& v) {
    std::vector<char> taken(n_, 0);
    for (SNode& c : v.children) {
      strip(c, taken);
      for (int q : c.states) taken[q] = 1;
      dedup(c);
    }
  }

  /// Deletes empty-labeled children; a deleted node's descendants are empty
  /// too, and its own name is the smallest in the subtree.
  void prune(SNode& v, int& bad) {
    std::vector<SNode> keep;
    for (SNode& c : v.children) {
      if (c.states.empty()) {
        bad = std::min(bad, c.name);
      } else {
        prune(c, bad);
        keep.push_back(std::move(c));
      }
    }
    v.children = std::move(keep);
  }

  /// Sheds the descendants of every node whose children cover its label.
  void merge(SNode& v, int& good) {
    std::vector<char> seen(n_, 0);
    int covered = 0;
    for (const SNode& c : v.children)
      for (int q : c.states)
        if (!seen[q]) {
          seen[q] = 1;
          ++covered;
        }
    if (!v.children.empty() && covered == static_cast<int>(v.states.size())) {
      good = std::min(good, v.name);
      v.children.clear();
      return;
    }
    for (SNode& c : v.children) merge(c, good);
  }

  void collect_names(const SNode& v, std::vector<int>& names) {
    names.push_back(v.name);
    for (const SNode& c : v.children) collect_names(c, names);
  }

  void rename(SNode& v, const std::map<int, int>& to_dense) {
    v.name = to_dense.at(v.name);
    for (SNode& c : v.children) rename(c, to_dense);
  }

  int max_name(const SNode& v) {
    int m = v.name;
    for (const SNode& c : v.children) m = std::max(m, max_name(c));
    return m;
  }

  /// One deterministic step; mutates the tree in place (empty root = dead)
  /// and returns the emitted priority.
  int step(SNode& root, int letter) {
    int fresh = max_name(root) + 1;
    int bad = INT_MAX;
    int good = INT_MAX;
    advance(root, letter, fresh);
    dedup(root);
    if (root.states.empty()) {
      bad = root.name;
    } else {
      prune(root, bad);
      merge(root, good);
      std::vector<int> names;
      collect_names(root, names);
      std::sort(names.begin(), names.end());
      std::map<int, int> to_dense;
      for (std::size_t i = 0; i < names.size(); ++i)
        to_dense[names[i]] = static_cast<int>(i) + 1;
      rename(root, to_dense);
    }
    // A deletion of name e outranks that very name's future greens (2e-1 <
    // 2e): a green certifies progress only for a continuously alive node,
    // not for a later node renamed into e.
    int p = 2 * n_ + 3;
    if (bad != INT_MAX) p = std::min(p, 2 * bad - 1);
    if (good != INT_MAX) p = std::min(p, 2 * good);
    return p;
  }

  const BuchiAutomaton& in_;
  Budget budget_;
  int n_;
  std::vector<bool> acc_;
  std::vector<std::vector<std::vector<int>>> delta_;
  std::map<std::vector<int>, int> index_;
  std::vector<SNode> trees_;
};

}  // namespace

BuchiAutomaton word_complement(const BuchiAutomaton& a, const Budget& budget) {
  a.check_well_formed();
  BuchiAutomaton in = reduce_simulation(a);
  const Alphabet& alphabet = a.alphabet;
  int n = in.num_states;
  if (n == 0 || in.initial.empty()) return universal_buchi(alphabet);
  if (n > 60)
    throw CapacityError("complement input too large after reduction (" +
                        std::to_string(n) + " states)");

  DetParity det = Determinizer(in, budget).run();
  int letters = alphabet.size();

  // Complemented priorities: shift by one, so the complement accepts iff the
  // least priority seen infinitely often is even.  The Büchi automaton below
  // guesses that least even priority g: a waiting copy follows the
  // deterministic run, then jumps to a g-copy that dies on any priority
  // below g and flags the visits at exactly g.
  std::set<int> guesses;
  for (int d = 0; d < det.num_states; ++d)
    for (int letter = 0; letter < letters; ++letter) {
      int p = det.priority[d][letter] + 1;
      if (!(p & 1)) guesses.insert(p);
    }
  int sink_p = det.neutral + 1;  // even after the shift: the sink accepts
  guesses.insert(sink_p);

  // State layout: waiting copies 0..D (D = dead sink), then per guess g a
  // block of (state, flag) pairs.
  int D = det.num_states;  // waiting sink index
  int wait_count = D + 1;
  std::vector<int> guess_list(guesses.begin(), guesses.end());
  auto block_base = [&](std::size_t gi) {
    return wait_count + static_cast<int>(gi) * 2 * (D + 1);
  };
  auto run_state = [&](std::size_t gi, int d, int flag) {
    int idx = d < 0 ? D : d;
    return block_base(gi) + 2 * idx + flag;
  };

  BuchiAutomaton out;
  out.alphabet = alphabet;
  out.num_states = wait_count + static_cast<int>(guess_list.size()) * 2 * (D + 1);
  if (static_cast<std::size_t>(out.num_states) > budget.max_states)
    throw CapacityError("complement exceeds state budget");
  out.initial = {det.initial};
  for (int d = 0; d <= D; ++d) {
    for (int letter = 0; letter < letters; ++letter) {
      int d2 = d == D ? -1 : det.next[d][letter];
      int p = (d == D ? det.neutral : det.priority[d][letter]) + 1;
      int wait_to = d2 < 0 ? D : d2;
      out.transitions.push_back({d, letter, wait_to});
      for (std::size_t gi = 0; gi < guess_list.size(); ++gi) {
        int g = guess_list[gi];
        if (p < g) continue;
        out.transitions.push_back({d, letter, run_state(gi, d2, p == g ? 1 : 0)});
      }
    }
  }
  for (std::size_t gi = 0; gi < guess_list.size(); ++gi) {
    int g = guess_list[gi];
    for (int d = 0; d <= D; ++d) {
      for (int letter = 0; letter < letters; ++letter) {
        int d2 = d == D ? -1 : det.next[d][letter];
        int p = (d == D ? det.neutral : det.priority[d][letter]) + 1;
        if (p < g) continue;
        for (int flag = 0; flag < 2; ++flag)
          out.transitions.push_back(
              {run_state(gi, d == D ? -1 : d, flag), letter, run_state(gi, d2, p == g ? 1 : 0)});
      }
    }
  }
  for (std::size_t gi = 0; gi < guess_list.size(); ++gi)
    for (int d = 0; d <= D; ++d) out.accepting.push_back(run_state(gi, d, 1));
  out.normalize();
  // Complement outputs feed into products, so they are simulation-minimized.
  return reduce_simulation(trim_useful(out));
}

}  // namespace autstr
