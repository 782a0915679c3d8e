#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "autstr/buchi.hpp"
#include "autstr/presentation.hpp"
#include "autstr/tree.hpp"

namespace autstr {

/// Enumeration of tree addresses {l,r}* in length-then-lexicographic order
/// (l before r): "" -> 0, "l" -> 1, "r" -> 2, "ll" -> 3, ...
std::uint64_t node_index(const std::string& address);
std::string node_unindex(std::uint64_t n);

/// Büchi automaton for the ω-words over {0,1} with finitely many 1s.
BuchiAutomaton build_fin_automaton();

/// Büchi automaton for the ω-words with at most k letters 1.
BuchiAutomaton build_fin_k_automaton(int k);

/// Muller tree automaton for the trees t_B over {0,1} whose 1-labeled set B
/// has an infinite antichain under the prefix order.  Tracks a guessed branch
/// with infinitely many departure events; each departure claims a 1 below the
/// abandoned sibling, discharged by a guessed finite path.
MullerTreeAutomaton build_antichain_automaton();

/// Muller tree automaton for the complementary class (B has no infinite
/// antichain, i.e. B lies in the ideal I).  Constructed directly: every node
/// carries a verified guess "subtree 1-free" / "contains a 1" plus a flag
/// marking that the sibling's subtree contains a 1; acceptance forbids
/// perpetually pending contains-1 claims and infinitely many flags per path.
MullerTreeAutomaton build_no_antichain_automaton();

/// Maximum-antichain classification of the 1-labeled set of a regular tree.
struct AntichainVerdict {
  bool infinite = false;
  long long width = 0;  // meaningful only when !infinite
};

/// Pure graph-algorithm oracle, no automata: infinite iff some reachable
/// cycle departs from a side whose subtree contains a 1; the finite width is
/// a capped Kleene fixpoint of width(u) = max(width(l)+width(r), [label 1]).
AntichainVerdict antichain_oracle(const RegularTree& t);

/// Witness for an infinite verdict: the addresses to_cycle · cycleᵐ ·
/// depart · to_one, m ≥ 0, are pairwise incomparable members of the 1-set.
/// `cycle` starts with the branch step, `depart` is the abandoned direction.
struct AntichainWitness {
  std::string to_cycle;
  std::string cycle;
  char depart = 'l';
  std::string to_one;
};
AntichainWitness antichain_witness(const RegularTree& t);

/// Maximum antichain among the 1-labeled addresses of length <= depth,
/// computed by brute force on the unfolding (count of prefix-maximal
/// members).
long long max_truncated_antichain(const RegularTree& t, int depth);

/// The chain {lⁿrᵏ | k >= 1} as a labeled regular tree.
RegularTree chain_tree(int n);

/// The infinite antichain {lⁿr | n >= 0} as a labeled regular tree.
RegularTree antichain_tree();

/// Letter map into the binary alphabet: the target is the `arity`-fold
/// product of {0,1} and each target letter maps to fn(bits).
LetterMap boolean_letter_map(int arity, const std::function<bool(const std::vector<bool>&)>& fn);

/// The letter maps realizing the boolean-algebra relations over a binary
/// base: eq = XOR, subset = b and not b', graphs of cap/cup/neg by XOR with
/// the result track, constants zero/one by identity/negation.
LetterMap eq_letter_map();
LetterMap subset_letter_map();
LetterMap cap_letter_map();
LetterMap cup_letter_map();
LetterMap neg_letter_map();
LetterMap zero_letter_map();
LetterMap one_letter_map();

/// P(ℕ) modulo finite sets as an automatic presentation over ω-words:
/// representatives are characteristic words, every relation is a relabeling
/// of the finitely-many-1s automaton.
Presentation build_B1_presentation();

/// P({l,r}*) modulo the no-infinite-antichain ideal as a tree-automatic
/// presentation; relations are relabelings of the direct ideal automaton,
/// with their complements (relabelings of the antichain automaton)
/// registered for the formula compiler.
Presentation build_B2_presentation();

/// Splits a non-zero element of the word algebra: returns z with
/// 0 < [z] < [x] (both strict), obtained by keeping every other 1.  Verifies
/// the strict inclusions through the relation automata; rejects zero inputs.
LassoWord atomless_split_word(const LassoWord& x);

/// Tree counterpart: extracts an infinite regular antichain inside x from the
/// oracle witness and keeps every other member.
RegularTree atomless_split_tree(const RegularTree& x);

}  // namespace autstr
