#pragma once

#include <string>
#include <vector>

#include "autstr/fo.hpp"

namespace autstr {

/// Symbol of an interpreted structure with its defining formula over the
/// source signature.  The formula's free variables follow the
/// component-variable convention (see component_variable).
struct InterpretedSymbol {
  std::string name;
  int arity = 1;
  RelationKind kind = RelationKind::relation;
  FormulaPtr formula;
};

/// n-dimensional first-order interpretation without parameters: elements of
/// the interpreted structure are n-tuples satisfying the domain formula,
/// identified by the equality formula.
struct Interpretation {
  int dimension = 1;
  FormulaPtr domain;    // over element 0
  FormulaPtr equality;  // over elements 0 and 1
  std::vector<InterpretedSymbol> symbols;
};

/// The variable carrying component `component` of interpreted element
/// `element`: "e<element>_<component>" with two digits each, so the sorted
/// variable order equals the element-major track layout of the compiled
/// automata.
std::string component_variable(int element, int component);

/// Compiles every formula of the interpretation over `p` and assembles the
/// presentation of the interpreted structure over base^dimension (relations
/// conjoined with the interpreted domain on every element block).  The
/// required alphabets are checked up front, so an over-budget interpretation
/// aborts with CapacityError before any compilation work.
Presentation apply_interpretation(const Presentation& p, const Interpretation& i,
                                  const Budget& budget = {});

/// Rewrites a sentence over the interpreted signature into an equivalent
/// sentence over the source signature: variables split into component
/// variables, quantifiers relativized to the domain formula, atoms replaced
/// by their defining formulas.
FormulaPtr translate_sentence(const Interpretation& i, const FormulaPtr& sentence);

/// Dimension-1 interpretation mapping a presentation's signature to itself.
Interpretation identity_interpretation(const Presentation& p);

/// Boolean-algebra signature (subset, cap, cup, neg, zero, one) to a
/// commutative ring: add = symmetric difference, mul = intersection, with
/// zero/one carried over.
Interpretation ring_interpretation();

/// Ring signature (add, mul, zero, one) to the ring of n x n matrices,
/// n >= 2; components are row-major entries.
Interpretation matrix_interpretation(int n);

/// Ring signature to the group of upper unitriangular n x n matrices under
/// matrix multiplication, n >= 3 (domain: diagonal one, strictly lower
/// entries zero).
Interpretation unitriangular_interpretation(int n);

}  // namespace autstr
