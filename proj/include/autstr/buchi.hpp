#pragma once

#include <compare>
#include <optional>
#include <vector>

#include "autstr/alphabet.hpp"
#include "autstr/errors.hpp"

namespace autstr {

using StateId = int;

struct BuchiTransition {
  StateId from;
  int letter;
  StateId to;
  auto operator<=>(const BuchiTransition&) const = default;
};

/// Nondeterministic Büchi automaton over ω-words.  States are 0..num_states-1;
/// `initial` and `accepting` are sorted index sets; `transitions` is sorted and
/// duplicate-free.  A run is accepting iff it visits `accepting` infinitely
/// often.
struct BuchiAutomaton {
  Alphabet alphabet;
  int num_states = 0;
  std::vector<StateId> initial;
  std::vector<StateId> accepting;
  std::vector<BuchiTransition> transitions;

  void normalize();            // sort + dedupe index sets and transitions
  void check_well_formed() const;
  bool is_accepting(StateId q) const;

  bool operator==(const BuchiAutomaton&) const = default;
};

/// Ultimately periodic ω-word stem·loop^ω.  Letters are indices into
/// `alphabet`; the loop must be non-empty.
struct LassoWord {
  Alphabet alphabet;
  std::vector<int> stem;
  std::vector<int> loop;

  void check_well_formed() const;
  bool operator==(const LassoWord&) const = default;
};

/// Canonical form denoting the same ω-word: the loop is reduced to its
/// primitive period and stem letters equal to the tail of the loop are
/// absorbed into the rotation.
LassoWord normalize_lasso(const LassoWord& w);

/// Does the automaton accept stem·loop^ω?  Decided by an accepting-cycle
/// search on the product of the automaton with the lasso positions.
bool word_membership(const BuchiAutomaton& a, const LassoWord& w);

/// Lasso witness if the language is non-empty.  Deterministic tie-breaks:
/// lowest-index accepting state on a reachable cycle, then BFS-shortest stem
/// and loop.  The returned witness always satisfies word_membership.
std::optional<LassoWord> word_emptiness(const BuchiAutomaton& a);

/// Intersection via the standard phased product (states x states x phase).
BuchiAutomaton word_product(const BuchiAutomaton& a, const BuchiAutomaton& b,
                            const Budget& budget = {});

/// n-ary intersection with a round-robin acceptance counter; used by the
/// formula compiler to avoid stacking pairwise phase bits.
BuchiAutomaton word_product_many(const std::vector<BuchiAutomaton>& parts,
                                 const Budget& budget = {});

/// Union by disjoint sum.
BuchiAutomaton word_union(const BuchiAutomaton& a, const BuchiAutomaton& b);

/// Complement via determinization: a history-tree parity automaton for the
/// input language, priorities shifted by one, re-encoded as a Büchi automaton
/// guessing the least priority seen infinitely often.  Raises CapacityError
/// if the state budget is exceeded; never returns a wrong automaton.
BuchiAutomaton word_complement(const BuchiAutomaton& a, const Budget& budget = {});

/// Existential projection: delete one track of a product alphabet.
BuchiAutomaton word_project(const BuchiAutomaton& a, int track);

/// Insert an unconstrained track at `position`.
BuchiAutomaton word_cylindrify(const BuchiAutomaton& a, int position,
                               std::vector<std::string> track_letters);

/// Inverse image under a letter map: the result reads a letter t of
/// map.target and behaves like `a` reading map.to_source[t].
BuchiAutomaton word_relabel(const BuchiAutomaton& a, const LetterMap& map);

/// Restrict to states both reachable from the initial set and able to reach
/// an accepting cycle; language-preserving.  States are renumbered in BFS
/// discovery order.
BuchiAutomaton trim_useful(const BuchiAutomaton& a);

/// Quotient by direct bisimulation (accepting-status-respecting partition
/// refinement).  Language-preserving size reduction applied before expensive
/// constructions.
BuchiAutomaton quotient_bisimulation(const BuchiAutomaton& a);

/// Stronger language-preserving reduction: alternating rounds of
/// little-brother transition pruning and quotienting by mutual direct
/// simulation.  Skipped (input returned bisimulation-quotiented) above
/// `max_input_states`.  Applied before complementation, whose cost is
/// exponential in the input size.
BuchiAutomaton reduce_simulation(const BuchiAutomaton& a, int max_input_states = 400);

/// One-state automaton accepting every ω-word over the alphabet.
BuchiAutomaton universal_buchi(const Alphabet& alphabet);

/// Pairs (u,u) with u accepted by `a`: same states, transitions restricted to
/// diagonal letters of the squared alphabet.
BuchiAutomaton word_diagonal(const BuchiAutomaton& a);

/// Pointwise convolution of lassos into one multi-track lasso (loop lengths
/// are aligned by taking the lcm).
LassoWord convolve_lassos(const std::vector<LassoWord>& parts);

/// The single-track lasso carried by track `track` of a product lasso.
LassoWord lasso_track(const LassoWord& w, int track);

}  // namespace autstr
