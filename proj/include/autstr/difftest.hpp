#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "autstr/buchi.hpp"
#include "autstr/fo.hpp"
#include "autstr/game.hpp"
#include "autstr/rng.hpp"

namespace autstr {

/// Outcome of one differential-testing run.  Deterministic for a fixed seed,
/// so re-runs produce byte-identical reports.
struct DiffReport {
  std::string suite;
  std::uint64_t seed = 0;
  int cases = 0;
  int failed = 0;
  std::vector<std::string> failures;  // first mismatches, capped

  bool ok() const { return failed == 0; }
  std::string to_text() const;
};

/// Random Büchi automaton with 1..max_states states and transition density
/// about 1.5 successors per state-letter pair.
BuchiAutomaton random_buchi(Rng& rng, const Alphabet& alphabet, int max_states);

/// Random parity game with 1..max_vertices vertices, priorities in
/// [0, max_priority], out-degrees 1..3.
ParityGame random_parity_game(Rng& rng, int max_vertices, int max_priority);

/// Every sentence the toy-model suite checks: quantifier prefixes of depth
/// one and two over literals and pairwise and/or combinations of r1, r2 and
/// equality atoms on the quantified variables.
std::vector<FormulaPtr> toy_sentence_catalogue();

/// Complementation vs membership: for each random automaton and random lasso,
/// exactly one of the automaton and its complement accepts.
DiffReport run_complement_suite(std::uint64_t seed, int automata, int lassos_per_automaton,
                                const Budget& budget = {});

/// Zielonka solver vs strategy-enumeration oracle, winners compared on every
/// vertex; solutions are additionally re-verified independently.
DiffReport run_parity_suite(std::uint64_t seed, int games);

/// Infinite-antichain automaton pair vs the graph-theoretic oracle on random
/// regular trees: the positive automaton must match the oracle and the
/// negative automaton must complement it.
DiffReport run_antichain_suite(std::uint64_t seed, int trees, const Budget& budget = {});

/// Formula compiler vs brute-force evaluation over the three-element toy
/// structure.  `limit` caps the catalogue prefix; limit <= 0 runs all of it.
DiffReport run_fo_suite(std::uint64_t seed, int limit, const Budget& budget = {});

/// Dispatch by suite name: "complement", "parity", "antichain", "fo".
/// `count` is the number of automata / games / trees, or the fo limit;
/// count <= 0 picks the suite default (200 / 100 / 500 / full catalogue).
DiffReport run_suite(const std::string& name, std::uint64_t seed, int count,
                     const Budget& budget = {});

}  // namespace autstr
