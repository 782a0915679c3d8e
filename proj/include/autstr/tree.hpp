#pragma once

#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "autstr/alphabet.hpp"
#include "autstr/buchi.hpp"
#include "autstr/errors.hpp"
#include "autstr/game.hpp"

namespace autstr {

/// Transition of a top-down tree automaton on infinite binary trees: in state
/// `from`, reading `letter`, send `left` to the left child and `right` to the
/// right child.
struct TreeTransition {
  StateId from = 0;
  int letter = 0;
  StateId left = 0;
  StateId right = 0;
  friend auto operator<=>(const TreeTransition&, const TreeTransition&) = default;
};

/// Nondeterministic Muller tree automaton: a run labels every node of the
/// input tree consistently with the transitions; it is accepting when along
/// every infinite path the set of states visited infinitely often is one of
/// the designated sets.  The automaton accepts when some accepting run exists.
struct MullerTreeAutomaton {
  Alphabet alphabet;
  int num_states = 0;
  StateId initial = 0;
  std::vector<TreeTransition> transitions;
  std::vector<std::vector<StateId>> designated;  // each sorted ascending

  void normalize();
  void check_well_formed() const;
};

/// Parity tree automaton (max-parity): a run is accepting when along every
/// infinite path the maximum priority visited infinitely often is even.
struct ParityTreeAutomaton {
  Alphabet alphabet;
  int num_states = 0;
  StateId initial = 0;
  std::vector<TreeTransition> transitions;
  std::vector<int> priority;  // one per state, >= 0

  void normalize();
  void check_well_formed() const;
};

/// Finite presentation of a regular infinite binary tree: a labeled graph in
/// which every node has explicit left and right successors; the denoted tree
/// is the unfolding from the root.
struct RegularTree {
  Alphabet alphabet;
  int num_nodes = 0;
  int root = 0;
  std::vector<int> label;
  std::vector<int> left;
  std::vector<int> right;

  void check_well_formed() const;
  /// Node reached from the root along a path of 'l'/'r' steps.
  int node_at(const std::string& path) const;
};

/// Unfolding equality (bisimulation on the two graphs), not node identity.
bool trees_equal(const RegularTree& a, const RegularTree& b);

/// Latest-appearance-record conversion.  Records are kept per strongly
/// connected component of the state step graph and track only the states
/// belonging to designated sets contained in that component (everything else
/// shares one junk color), which keeps the construction desk-sized.
ParityTreeAutomaton muller_to_parity(const MullerTreeAutomaton& a, const Budget& budget = {});

bool tree_membership(const ParityTreeAutomaton& a, const RegularTree& t);
bool tree_membership(const MullerTreeAutomaton& a, const RegularTree& t, const Budget& budget = {});

/// Empty-language test; a non-empty answer is a regular tree extracted from a
/// positional winning strategy in the acceptance game and re-verified by
/// tree_membership before being returned.
std::optional<RegularTree> tree_emptiness(const ParityTreeAutomaton& a);
std::optional<RegularTree> tree_emptiness(const MullerTreeAutomaton& a, const Budget& budget = {});

/// Intersection via synchronized pairing.  A designated set of the product is
/// any reachable set of pairs whose two projections are designated in the
/// respective factors.
MullerTreeAutomaton tree_product(const MullerTreeAutomaton& a, const MullerTreeAutomaton& b,
                                 const Budget& budget = {});

/// Union via an initial nondeterministic choice between the two automata.
MullerTreeAutomaton tree_union(const MullerTreeAutomaton& a, const MullerTreeAutomaton& b);

/// Existential projection: drop one track from every letter.
MullerTreeAutomaton tree_project(const MullerTreeAutomaton& a, std::size_t track);

/// Inverse-image relabeling along a letter map, as in the word module.
MullerTreeAutomaton tree_relabel(const MullerTreeAutomaton& a, const LetterMap& map);

/// Trees whose leftmost branch (labels along l, ll, lll, ...) spells a word
/// accepted by `b`; all other labels are unconstrained.
MullerTreeAutomaton lift_word_automaton_leftmost(const BuchiAutomaton& b);

/// The leftmost branch of a regular tree as an ultimately periodic word.
LassoWord leftmost_lasso(const RegularTree& t);

/// Pair tree: node labels are the convolution of the two input labels over
/// the product alphabet.
RegularTree convolve_trees(const RegularTree& a, const RegularTree& b, const Budget& budget = {});

/// Single track of a multi-track regular tree.
RegularTree tree_track(const RegularTree& t, std::size_t track);

/// Pairs (t,t) with t accepted by `a`: same states, transitions moved to the
/// diagonal letters of the squared alphabet.
MullerTreeAutomaton tree_diagonal(const MullerTreeAutomaton& a, const Budget& budget = {});

/// One-state automaton accepting every tree over the alphabet.
MullerTreeAutomaton universal_tree_automaton(const Alphabet& alphabet);

/// The regular tree with every node labeled `letter`.
RegularTree constant_tree(const Alphabet& alphabet, int letter);

}  // namespace autstr
