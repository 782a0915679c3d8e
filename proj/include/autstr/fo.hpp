#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "autstr/presentation.hpp"

namespace autstr {

/// Term over a presentation signature: a bare identifier (variable, or
/// constant symbol once resolved against a signature) or an application of a
/// function symbol backed by a function graph.
struct Term {
  std::string name;
  std::vector<Term> args;
  bool application = false;  // written with parentheses

  bool operator==(const Term&) const = default;
};

Term term_var(std::string name);
Term term_apply(std::string name, std::vector<Term> args);
Term term_const(std::string name);  // nullary application

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

/// First-order formula over atoms R(t̄); "eq" names the presentation
/// equality. Implication is desugared at construction.
struct Formula {
  enum class Kind { atom, negation, conjunction, disjunction, exists, forall };
  Kind kind = Kind::atom;
  std::string relation;         // atom
  std::vector<Term> args;       // atom
  std::string variable;         // quantifiers
  std::vector<FormulaPtr> children;
};

FormulaPtr fo_atom(std::string relation, std::vector<Term> args);
FormulaPtr fo_eq(Term a, Term b);
FormulaPtr fo_not(FormulaPtr f);
FormulaPtr fo_and(FormulaPtr a, FormulaPtr b);
FormulaPtr fo_or(FormulaPtr a, FormulaPtr b);
FormulaPtr fo_implies(FormulaPtr a, FormulaPtr b);
FormulaPtr fo_exists(std::string variable, FormulaPtr f);
FormulaPtr fo_forall(std::string variable, FormulaPtr f);

/// Free identifiers in sorted order.  Purely syntactic: constant symbols
/// count as variables until flatten_formula resolves them.
std::vector<std::string> free_variables(const FormulaPtr& f);

/// Surface syntax: `forall x. exists z. (subset(z,x) & !eq(z,x))`.
/// Precedence ! > & > | > ->, quantifier bodies extend maximally,
/// `t1 = t2` abbreviates eq(t1,t2).  Raises ParseError with a position.
FormulaPtr parse_formula(const std::string& text);
std::string format_formula(const FormulaPtr& f);

/// Resolves identifiers against the presentation signature and eliminates
/// function/constant terms: every atom argument becomes a plain variable,
/// with graph atoms for the introduced values bound by fresh existentials.
/// A negated atom keeps the negation on the relation atom only (sound
/// because function graphs are total and equality-compatible).
FormulaPtr flatten_formula(const Presentation& p, const FormulaPtr& f);

/// Same flattening against a bare signature (name -> arity and symbol kind,
/// "eq"/2 implied); used where no automata exist yet, e.g. for formulas over
/// an interpreted signature.
struct SignatureEntry {
  int arity = 0;
  RelationKind kind = RelationKind::relation;
};
FormulaPtr flatten_with_signature(const std::map<std::string, SignatureEntry>& symbols,
                                  const FormulaPtr& f);

/// Negation normal form: negations pushed down to atoms.
FormulaPtr to_nnf(const FormulaPtr& f);

/// Compilation result: an automaton over one track per free variable in
/// sorted name order.  Closed formulas use a single dummy track carrying the
/// domain language (true) or nothing (false).
struct CompiledFormula {
  std::vector<std::string> variables;
  BuchiAutomaton word;
  MullerTreeAutomaton tree;
};

/// Compiles a formula to an automaton accepting exactly the satisfying
/// representative tuples (relativized to the domain).  Word presentations
/// support full FO; tree presentations support the fragment where, after
/// negation normal form, negations sit on atoms with registered complements
/// and no universal quantifier remains — otherwise
/// UnsupportedFragmentError.
CompiledFormula compile_formula(const Presentation& p, const FormulaPtr& f,
                                const Budget& budget = {});

struct SentenceVerdict {
  bool truth = false;
  /// Witness for the outermost quantifier when one was produced: a member
  /// for a true existential, a counterexample for a false universal.
  std::optional<LassoWord> word_witness;
  std::optional<RegularTree> tree_witness;
};

/// Decides a closed formula by peeling the boolean/quantifier structure at
/// the closed level and testing emptiness of compiled one-variable bodies.
SentenceVerdict decide_sentence(const Presentation& p, const FormulaPtr& sentence,
                                const Budget& budget = {});

/// Explicit finite structure, used as a brute-force oracle for the formula
/// compiler.  Elements are 0..size-1; "eq" is native element equality.
struct FiniteRelation {
  std::string name;
  int arity = 1;
  RelationKind kind = RelationKind::relation;
  std::set<std::vector<int>> tuples;
};

struct FiniteModel {
  int size = 0;
  std::vector<FiniteRelation> relations;

  const FiniteRelation* find(const std::string& name) const;
};

/// Direct model evaluation with the same term/atom semantics as the
/// compiler (function graphs must determine unique values).
bool finite_model_eval(const FiniteModel& m, const FormulaPtr& f,
                       const std::map<std::string, int>& assignment = {});

/// A word presentation together with the finite model it presents and the
/// representative lasso of each element; compiler answers must match
/// finite_model_eval exactly.
struct ToyStructure {
  Presentation presentation;
  FiniteModel model;
  std::vector<LassoWord> elements;
};

/// Three elements with a unary and a binary relation (r1, r2).
ToyStructure toy_word_structure();

/// Two elements with a unary relation (mark); small enough for
/// interpretation round-trip tests.
ToyStructure toy_pair_structure();

}  // namespace autstr
