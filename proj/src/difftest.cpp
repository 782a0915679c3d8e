#include "autstr/difftest.hpp"

#include <sstream>

#include "autstr/presentation.hpp"
#include "autstr/structures.hpp"
#include "autstr/tree.hpp"

namespace autstr {

namespace {

constexpr int kMaxStoredFailures = 20;

void record_failure(DiffReport& report, const std::string& description) {
  ++report.failed;
  if (static_cast<int>(report.failures.size()) < kMaxStoredFailures)
    report.failures.push_back(description);
}

}  // namespace

std::string DiffReport::to_text() const {
  std::ostringstream out;
  out << "difftest suite=" << suite << " seed=" << seed << " cases=" << cases
      << " failures=" << failed << "\n";
  for (const std::string& f : failures) out << "fail: " << f << "\n";
  if (failed > static_cast<int>(failures.size()))
    out << "(and " << failed - static_cast<int>(failures.size()) << " more failures)\n";
  out << (failed == 0 ? "result: pass" : "result: fail") << "\n";
  return out.str();
}

BuchiAutomaton random_buchi(Rng& rng, const Alphabet& alphabet, int max_states) {
  BuchiAutomaton a;
  a.alphabet = alphabet;
  a.num_states = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_states)));
  for (StateId q = 0; q < a.num_states; ++q) {
    if (rng.chance(1, 2)) a.initial.push_back(q);
    if (rng.chance(1, 2)) a.accepting.push_back(q);
    for (int letter = 0; letter < alphabet.size(); ++letter)
      for (StateId to = 0; to < a.num_states; ++to)
        if (rng.chance(3, 2 * static_cast<std::uint64_t>(a.num_states)))
          a.transitions.push_back({q, letter, to});
  }
  if (a.initial.empty())
    a.initial.push_back(static_cast<StateId>(rng.below(static_cast<std::uint64_t>(a.num_states))));
  a.normalize();
  return a;
}

ParityGame random_parity_game(Rng& rng, int max_vertices, int max_priority) {
  ParityGame g;
  g.num_vertices = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_vertices)));
  g.owner.resize(g.num_vertices);
  g.priority.resize(g.num_vertices);
  g.succ.resize(g.num_vertices);
  for (int v = 0; v < g.num_vertices; ++v) {
    g.owner[v] = static_cast<int>(rng.below(2));
    g.priority[v] = static_cast<int>(rng.below(static_cast<std::uint64_t>(max_priority + 1)));
    int degree = 1 + static_cast<int>(rng.below(3));
    for (int i = 0; i < degree; ++i) {
      int to = static_cast<int>(rng.below(static_cast<std::uint64_t>(g.num_vertices)));
      bool seen = false;
      for (int s : g.succ[v]) seen = seen || s == to;
      if (!seen) g.succ[v].push_back(to);
    }
  }
  g.start = 0;
  return g;
}

DiffReport run_complement_suite(std::uint64_t seed, int automata, int lassos_per_automaton,
                                const Budget& budget) {
  DiffReport report;
  report.suite = "complement";
  report.seed = seed;
  Rng rng(seed);
  Alphabet alphabet = Alphabet::binary();
  for (int i = 0; i < automata; ++i) {
    BuchiAutomaton a = random_buchi(rng, alphabet, 5);
    BuchiAutomaton comp;
    try {
      comp = word_complement(a, budget);
    } catch (const CapacityError& e) {
      report.cases += lassos_per_automaton;
      record_failure(report, "automaton " + std::to_string(i) + ": " + e.what());
      continue;
    }
    for (int j = 0; j < lassos_per_automaton; ++j) {
      LassoWord w = random_lasso(rng, alphabet, 6, 6);
      ++report.cases;
      bool in_a = word_membership(a, w);
      bool in_comp = word_membership(comp, w);
      if (in_a == in_comp)
        record_failure(report, "automaton " + std::to_string(i) + " lasso " + std::to_string(j) +
                                   ": membership " + (in_a ? "true" : "false") +
                                   " in both the automaton and its complement");
    }
  }
  return report;
}

DiffReport run_parity_suite(std::uint64_t seed, int games) {
  DiffReport report;
  report.suite = "parity";
  report.seed = seed;
  Rng rng(seed);
  for (int i = 0; i < games; ++i) {
    ParityGame g = random_parity_game(rng, 8, 4);
    ++report.cases;
    GameSolution solution = solve_parity_game(g);
    try {
      check_game_solution(g, solution);
    } catch (const InvariantError& e) {
      record_failure(report, "game " + std::to_string(i) + ": " + e.what());
      continue;
    }
    std::vector<int> brute = solve_parity_game_brute(g);
    for (int v = 0; v < g.num_vertices; ++v) {
      if (solution.winner[v] != brute[v]) {
        record_failure(report, "game " + std::to_string(i) + " vertex " + std::to_string(v) +
                                   ": solver says player " + std::to_string(solution.winner[v]) +
                                   ", oracle says player " + std::to_string(brute[v]));
        break;
      }
    }
  }
  return report;
}

DiffReport run_antichain_suite(std::uint64_t seed, int trees, const Budget& budget) {
  DiffReport report;
  report.suite = "antichain";
  report.seed = seed;
  Rng rng(seed);
  ParityTreeAutomaton has_infinite = muller_to_parity(build_antichain_automaton(), budget);
  ParityTreeAutomaton lacks_infinite = muller_to_parity(build_no_antichain_automaton(), budget);
  Alphabet binary = Alphabet::binary();
  for (int i = 0; i < trees; ++i) {
    RegularTree t = random_regular_tree(rng, binary, 6);
    ++report.cases;
    bool oracle_infinite = antichain_oracle(t).infinite;
    bool positive = tree_membership(has_infinite, t);
    bool negative = tree_membership(lacks_infinite, t);
    if (positive != oracle_infinite)
      record_failure(report, "tree " + std::to_string(i) + ": positive automaton says " +
                                 (positive ? "true" : "false") + ", oracle says " +
                                 (oracle_infinite ? "true" : "false"));
    else if (negative == oracle_infinite)
      record_failure(report, "tree " + std::to_string(i) +
                                 ": negative automaton fails to complement the oracle verdict " +
                                 (oracle_infinite ? "true" : "false"));
  }
  return report;
}

namespace {

/// Literals (relation atoms and their negations) over the given variables:
/// r1 on each variable, r2 on each ordered pair, and eq across the pair.
std::vector<FormulaPtr> toy_literals(const std::vector<std::string>& vars) {
  std::vector<FormulaPtr> atoms;
  for (const std::string& v : vars) atoms.push_back(fo_atom("r1", {term_var(v)}));
  for (const std::string& a : vars)
    for (const std::string& b : vars) atoms.push_back(fo_atom("r2", {term_var(a), term_var(b)}));
  if (vars.size() >= 2) atoms.push_back(fo_eq(term_var(vars[0]), term_var(vars[1])));
  else atoms.push_back(fo_eq(term_var(vars[0]), term_var(vars[0])));
  std::vector<FormulaPtr> literals;
  for (const FormulaPtr& a : atoms) {
    literals.push_back(a);
    literals.push_back(fo_not(a));
  }
  return literals;
}

/// Single literals plus pairwise conjunctions and disjunctions.
std::vector<FormulaPtr> toy_matrices(const std::vector<FormulaPtr>& literals) {
  std::vector<FormulaPtr> out(literals);
  for (std::size_t i = 0; i < literals.size(); ++i)
    for (std::size_t j = 0; j < literals.size(); ++j) {
      if (i == j) continue;
      out.push_back(fo_and(literals[i], literals[j]));
      out.push_back(fo_or(literals[i], literals[j]));
    }
  return out;
}

}  // namespace

std::vector<FormulaPtr> toy_sentence_catalogue() {
  std::vector<FormulaPtr> sentences;
  for (const FormulaPtr& m : toy_matrices(toy_literals({"x"}))) {
    sentences.push_back(fo_forall("x", m));
    sentences.push_back(fo_exists("x", m));
  }
  for (const FormulaPtr& m : toy_matrices(toy_literals({"x", "y"}))) {
    sentences.push_back(fo_forall("x", fo_forall("y", m)));
    sentences.push_back(fo_forall("x", fo_exists("y", m)));
    sentences.push_back(fo_exists("x", fo_forall("y", m)));
    sentences.push_back(fo_exists("x", fo_exists("y", m)));
  }
  return sentences;
}

DiffReport run_fo_suite(std::uint64_t seed, int limit, const Budget& budget) {
  DiffReport report;
  report.suite = "fo";
  report.seed = seed;
  ToyStructure toy = toy_word_structure();
  std::vector<FormulaPtr> sentences = toy_sentence_catalogue();
  if (limit > 0 && limit < static_cast<int>(sentences.size())) sentences.resize(limit);
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    ++report.cases;
    bool expected = finite_model_eval(toy.model, sentences[i]);
    bool actual = decide_sentence(toy.presentation, sentences[i], budget).truth;
    if (expected != actual)
      record_failure(report, format_formula(sentences[i]) + ": compiler says " +
                                 (actual ? "true" : "false") + ", model evaluation says " +
                                 (expected ? "true" : "false"));
  }
  return report;
}

DiffReport run_suite(const std::string& name, std::uint64_t seed, int count, const Budget& budget) {
  if (name == "complement") return run_complement_suite(seed, count > 0 ? count : 200, 50, budget);
  if (name == "parity") return run_parity_suite(seed, count > 0 ? count : 100);
  if (name == "antichain") return run_antichain_suite(seed, count > 0 ? count : 500, budget);
  if (name == "fo") return run_fo_suite(seed, count, budget);
  throw InputError("unknown difftest suite '" + name +
                   "' (expected complement, parity, antichain or fo)");
}

}  // namespace autstr
