#include "autstr/presentation.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace autstr {

namespace {

void check_relation_shape(const std::string& name, int arity, RelationKind kind,
                          const Alphabet& automaton_alphabet, const Alphabet& base,
                          const Budget& budget) {
  if (name.empty()) throw InputError("relation name must be non-empty");
  if (arity < 1) throw InputError("relation '" + name + "' has arity < 1");
  if (kind == RelationKind::function_graph && arity < 2)
    throw InputError("function graph '" + name + "' needs arity >= 2");
  if (kind == RelationKind::constant_graph && arity != 1)
    throw InputError("constant graph '" + name + "' needs arity 1");
  if (automaton_alphabet != power_alphabet(base, arity, budget))
    throw InputError("relation '" + name + "' is not over base^" + std::to_string(arity));
}

template <typename PresT>
void check_presentation_common(const PresT& p) {
  Budget budget;
  if (p.base.arity() < 1) throw InputError("presentation base alphabet is empty");
  if (p.domain.alphabet != p.base) throw InputError("domain automaton is not over the base");
  if (p.equality.alphabet != power_alphabet(p.base, 2, budget))
    throw InputError("equality automaton is not over base^2");
  std::set<std::string> names{"eq"};
  for (const auto& r : p.relations) {
    if (!names.insert(r.name).second) throw InputError("duplicate relation name '" + r.name + "'");
    check_relation_shape(r.name, r.arity, r.kind, r.automaton.alphabet, p.base, budget);
    r.automaton.check_well_formed();
  }
  p.domain.check_well_formed();
  p.equality.check_well_formed();
}

}  // namespace

const WordRelation* WordPresentation::find(const std::string& name) const {
  for (const auto& r : relations)
    if (r.name == name) return &r;
  return nullptr;
}

const TreeRelation* TreePresentation::find(const std::string& name) const {
  for (const auto& r : relations)
    if (r.name == name) return &r;
  return nullptr;
}

void WordPresentation::check_well_formed() const { check_presentation_common(*this); }

void TreePresentation::check_well_formed() const {
  check_presentation_common(*this);
  for (const auto& [name, autom] : complements) {
    const Alphabet* expect = nullptr;
    if (name == "eq")
      expect = &equality.alphabet;
    else if (name == "domain")
      expect = &domain.alphabet;
    else {
      const TreeRelation* r = find(name);
      if (!r) throw InputError("complement registered for unknown relation '" + name + "'");
      expect = &r->automaton.alphabet;
    }
    if (autom.alphabet != *expect)
      throw InputError("complement '" + name + "' has a mismatched alphabet");
    autom.check_well_formed();
  }
}

void Presentation::check_well_formed() const {
  if (kind == PresentationKind::word)
    word.check_well_formed();
  else
    tree.check_well_formed();
}

bool ValidationReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const ValidationCheck& c) { return c.passed; });
}

std::string ValidationReport::to_text() const {
  std::ostringstream out;
  out << "validation seed=" << seed << " samples=" << samples << "\n";
  for (const auto& c : checks) {
    out << c.name << ": " << (c.exact ? "exact" : "sampled") << "-"
        << (c.passed ? "pass" : "fail");
    if (c.word_witness || c.tree_witness) out << " (counterexample attached)";
    out << "\n";
  }
  out << (all_passed() ? "result: pass" : "result: fail") << "\n";
  return out.str();
}

namespace {

/// Relabeling map that swaps the two base copies of a squared alphabet,
/// turning an automaton for R(x, y) into one for R(y, x).
LetterMap swap_map(const Alphabet& squared, const Alphabet& base, const Budget& budget) {
  return selection_letter_map(squared, base, 2, {1, 0}, budget);
}

BuchiAutomaton spread_word(const BuchiAutomaton& a, const Alphabet& base, int n,
                           const std::vector<int>& positions, const Budget& budget) {
  return word_relabel(a, selection_letter_map(a.alphabet, base, n, positions, budget));
}

void run_word_checks(const WordPresentation& p, ValidationReport& report, const Budget& budget) {
  const BuchiAutomaton& E = p.equality;
  BuchiAutomaton notE = word_complement(E, budget);

  auto record = [&](const std::string& name, std::optional<LassoWord> counterexample) {
    ValidationCheck c;
    c.name = name;
    c.exact = true;
    c.passed = !counterexample.has_value();
    c.word_witness = std::move(counterexample);
    report.checks.push_back(std::move(c));
  };

  record("equality-reflexive",
         word_emptiness(word_product(word_diagonal(p.domain), notE, budget)));
  record("equality-symmetric",
         word_emptiness(word_product(
             E, word_relabel(notE, swap_map(E.alphabet, p.base, budget)), budget)));
  record("equality-transitive",
         word_emptiness(word_product_many({spread_word(E, p.base, 3, {0, 1}, budget),
                                           spread_word(E, p.base, 3, {1, 2}, budget),
                                           spread_word(notE, p.base, 3, {0, 2}, budget)},
                                          budget)));
  for (const auto& r : p.relations) {
    int k = r.arity;
    std::vector<BuchiAutomaton> parts;
    std::vector<int> xs, ys;
    for (int i = 0; i < k; ++i) xs.push_back(i);
    for (int i = 0; i < k; ++i) ys.push_back(k + i);
    parts.push_back(spread_word(r.automaton, p.base, 2 * k, xs, budget));
    for (int i = 0; i < k; ++i) parts.push_back(spread_word(E, p.base, 2 * k, {i, k + i}, budget));
    parts.push_back(
        spread_word(word_complement(r.automaton, budget), p.base, 2 * k, ys, budget));
    record("compatibility-" + r.name, word_emptiness(word_product_many(parts, budget)));
  }
}

/// Small random rewiring that tends to keep the symmetric difference inside
/// the ideal (needed to hit the premises of the sampled implications).
RegularTree perturb_tree(Rng& rng, const RegularTree& t) {
  RegularTree u = t;
  int node = static_cast<int>(rng.below(u.num_nodes));
  switch (rng.below(3)) {
    case 0:
      u.label[node] = static_cast<int>(rng.below(u.alphabet.size()));
      break;
    case 1:
      u.left[node] = static_cast<int>(rng.below(u.num_nodes));
      break;
    default:
      u.right[node] = static_cast<int>(rng.below(u.num_nodes));
      break;
  }
  return u;
}

void run_tree_checks(const TreePresentation& p, ValidationReport& report, std::uint64_t seed,
                     int samples, const Budget& budget) {
  const MullerTreeAutomaton& E = p.equality;
  ParityTreeAutomaton parE = muller_to_parity(E, budget);
  ParityTreeAutomaton parD = muller_to_parity(p.domain, budget);
  auto comp_it = p.complements.find("eq");
  const MullerTreeAutomaton* notE = comp_it == p.complements.end() ? nullptr : &comp_it->second;

  auto record_exact = [&](const std::string& name, std::optional<RegularTree> counterexample) {
    ValidationCheck c;
    c.name = name;
    c.exact = true;
    c.passed = !counterexample.has_value();
    c.tree_witness = std::move(counterexample);
    report.checks.push_back(std::move(c));
  };
  auto record_sampled = [&](const std::string& name, std::optional<RegularTree> counterexample) {
    ValidationCheck c;
    c.name = name;
    c.exact = false;
    c.passed = !counterexample.has_value();
    c.tree_witness = std::move(counterexample);
    report.checks.push_back(std::move(c));
  };

  if (notE) {
    record_exact("equality-reflexive",
                 tree_emptiness(tree_product(tree_diagonal(p.domain, budget), *notE, budget),
                                budget));
    record_exact(
        "equality-symmetric",
        tree_emptiness(
            tree_product(E, tree_relabel(*notE, swap_map(E.alphabet, p.base, budget)), budget),
            budget));
  } else {
    Rng rng(seed * 2 + 1);
    std::optional<RegularTree> refl, symm;
    for (int i = 0; i < samples; ++i) {
      RegularTree t = random_regular_tree(rng, p.base, 6);
      if (!tree_membership(parD, t)) continue;
      if (!refl && !tree_membership(parE, convolve_trees(t, t, budget)))
        refl = convolve_trees(t, t, budget);
      RegularTree u = perturb_tree(rng, t);
      if (!symm && tree_membership(parE, convolve_trees(t, u, budget)) &&
          !tree_membership(parE, convolve_trees(u, t, budget)))
        symm = convolve_trees(t, u, budget);
    }
    record_sampled("equality-reflexive", std::move(refl));
    record_sampled("equality-symmetric", std::move(symm));
  }

  {
    Rng rng(seed);
    std::optional<RegularTree> bad;
    for (int i = 0; i < samples && !bad; ++i) {
      RegularTree x = random_regular_tree(rng, p.base, 6);
      RegularTree y = perturb_tree(rng, x);
      RegularTree z = perturb_tree(rng, y);
      if (tree_membership(parE, convolve_trees(x, y, budget)) &&
          tree_membership(parE, convolve_trees(y, z, budget)) &&
          !tree_membership(parE, convolve_trees(x, z, budget)))
        bad = convolve_trees(convolve_trees(x, y, budget), z, budget);
    }
    record_sampled("equality-transitive", std::move(bad));
  }

  for (const auto& r : p.relations) {
    ParityTreeAutomaton parR = muller_to_parity(r.automaton, budget);
    std::uint64_t name_salt = 1469598103934665603ull;
    for (char ch : r.name) name_salt = (name_salt ^ static_cast<unsigned char>(ch)) * 1099511628211ull;
    Rng rng(seed + name_salt);
    std::optional<RegularTree> bad;
    for (int i = 0; i < samples && !bad; ++i) {
      std::vector<RegularTree> xs, ys;
      bool premise = true;
      for (int j = 0; j < r.arity; ++j) {
        RegularTree x = random_regular_tree(rng, p.base, 5);
        RegularTree y = perturb_tree(rng, x);
        premise = premise && tree_membership(parE, convolve_trees(x, y, budget));
        xs.push_back(std::move(x));
        ys.push_back(std::move(y));
      }
      if (!premise) continue;
      auto fold = [&](const std::vector<RegularTree>& ts) {
        RegularTree acc = ts[0];
        for (std::size_t j = 1; j < ts.size(); ++j) acc = convolve_trees(acc, ts[j], budget);
        return acc;
      };
      if (tree_membership(parR, fold(xs)) != tree_membership(parR, fold(ys)))
        bad = convolve_trees(fold(xs), fold(ys), budget);
    }
    record_sampled("compatibility-" + r.name, std::move(bad));
  }
}

}  // namespace

ValidationReport validate_presentation(const Presentation& p, std::uint64_t seed, int samples,
                                       const Budget& budget) {
  p.check_well_formed();
  ValidationReport report;
  report.seed = seed;
  report.samples = samples;
  if (p.kind == PresentationKind::word)
    run_word_checks(p.word, report, budget);
  else
    run_tree_checks(p.tree, report, seed, samples, budget);
  return report;
}

RegularTree random_regular_tree(Rng& rng, const Alphabet& alphabet, int max_nodes) {
  RegularTree t;
  t.alphabet = alphabet;
  t.num_nodes = 1 + static_cast<int>(rng.below(max_nodes));
  t.root = 0;
  for (int v = 0; v < t.num_nodes; ++v) {
    t.label.push_back(static_cast<int>(rng.below(alphabet.size())));
    t.left.push_back(static_cast<int>(rng.below(t.num_nodes)));
    t.right.push_back(static_cast<int>(rng.below(t.num_nodes)));
  }
  return t;
}

LassoWord random_lasso(Rng& rng, const Alphabet& alphabet, int max_stem, int max_loop) {
  LassoWord w;
  w.alphabet = alphabet;
  int stem = static_cast<int>(rng.below(max_stem + 1));
  int loop = 1 + static_cast<int>(rng.below(max_loop));
  for (int i = 0; i < stem; ++i) w.stem.push_back(static_cast<int>(rng.below(alphabet.size())));
  for (int i = 0; i < loop; ++i) w.loop.push_back(static_cast<int>(rng.below(alphabet.size())));
  return w;
}

}  // namespace autstr
