#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "autstr/buchi.hpp"
#include "autstr/rng.hpp"
#include "autstr/tree.hpp"

namespace autstr {

/// How a named relation participates in term syntax: plain relations are
/// usable only as atoms; a function graph of arity r+1 (result on the last
/// track) backs an r-ary function symbol; a constant graph is a unary
/// function graph backing a nullary symbol.
enum class RelationKind { relation, function_graph, constant_graph };

struct WordRelation {
  std::string name;
  int arity = 1;
  RelationKind kind = RelationKind::relation;
  BuchiAutomaton automaton;  // over base^arity
};

struct TreeRelation {
  std::string name;
  int arity = 1;
  RelationKind kind = RelationKind::relation;
  MullerTreeAutomaton automaton;
};

/// Automatic presentation of a structure: representatives are the domain
/// language, the structure is the quotient by the equality language, and
/// every relation is read on convolved representative tuples.
struct WordPresentation {
  Alphabet base;
  BuchiAutomaton domain;    // arity 1
  BuchiAutomaton equality;  // arity 2
  std::vector<WordRelation> relations;

  const WordRelation* find(const std::string& name) const;
  void check_well_formed() const;
};

struct TreePresentation {
  Alphabet base;
  MullerTreeAutomaton domain;
  MullerTreeAutomaton equality;
  std::vector<TreeRelation> relations;
  /// Atom-complement automata by relation name ("eq" for equality).  Needed
  /// because the tree engine has no generic complementation.
  std::map<std::string, MullerTreeAutomaton> complements;

  const TreeRelation* find(const std::string& name) const;
  void check_well_formed() const;
};

enum class PresentationKind { word, tree };

struct Presentation {
  PresentationKind kind = PresentationKind::word;
  WordPresentation word;
  TreePresentation tree;

  void check_well_formed() const;
};

/// One validation line: exact checks are automata-theoretic decisions,
/// sampled checks test a fixed number of random tuples.  Failures carry a
/// counterexample tuple as a convolved lasso or regular tree.
struct ValidationCheck {
  std::string name;
  bool exact = true;
  bool passed = false;
  std::optional<LassoWord> word_witness;
  std::optional<RegularTree> tree_witness;
};

struct ValidationReport {
  std::uint64_t seed = 0;
  int samples = 0;
  std::vector<ValidationCheck> checks;

  bool all_passed() const;
  std::string to_text() const;
};

/// Checks that the equality language is an equivalence on the domain and that
/// every relation is invariant under it.  Word presentations are decided
/// exactly through product/complement/emptiness; tree presentations decide
/// reflexivity and symmetry exactly through the registered complements and
/// sample the rest.
ValidationReport validate_presentation(const Presentation& p, std::uint64_t seed = 1,
                                       int samples = 200, const Budget& budget = {});

/// Random regular tree over the given alphabet: node count uniform in
/// [1, max_nodes], labels and successors independent and uniform.
RegularTree random_regular_tree(Rng& rng, const Alphabet& alphabet, int max_nodes);

/// Random lasso with stem and loop lengths uniform in [0, max_stem] and
/// [1, max_loop].
LassoWord random_lasso(Rng& rng, const Alphabet& alphabet, int max_stem, int max_loop);

}  // namespace autstr
