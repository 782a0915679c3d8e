#include "autstr/interpretations.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <set>

namespace autstr {

std::string component_variable(int element, int component) {
  if (element < 0 || element > 99 || component < 0 || component > 99)
    throw InputError("component variable indices must be in [0, 99]");
  char buf[8];
  std::snprintf(buf, sizeof(buf), "e%02d_%02d", element, component);
  return buf;
}

namespace {

std::vector<std::string> grid_variables(int elements, int dimension) {
  std::vector<std::string> vars;
  for (int j = 0; j < elements; ++j)
    for (int c = 0; c < dimension; ++c) vars.push_back(component_variable(j, c));
  return vars;  // generated in sorted order by construction
}

void check_formula_scope(const FormulaPtr& f, int elements, int dimension,
                         const std::string& what) {
  std::vector<std::string> grid = grid_variables(elements, dimension);
  for (const auto& v : free_variables(f))
    if (std::find(grid.begin(), grid.end(), v) == grid.end())
      throw InputError("interpretation " + what + " uses unexpected variable '" + v + "'");
}

struct WordGridCompiler {
  const Presentation& p;
  const Interpretation& interp;
  Budget budget;

  const Alphabet& base() const { return p.word.base; }

  BuchiAutomaton reduce(const BuchiAutomaton& a) { return reduce_simulation(a, 800); }

  BuchiAutomaton spread(const BuchiAutomaton& a, const std::vector<int>& positions, int copies) {
    return word_relabel(a, selection_letter_map(a.alphabet, base(), copies, positions, budget));
  }

  /// Automaton over base^(elements*dimension) for a formula whose free
  /// variables lie in the corresponding grid; missing tracks are constrained
  /// to the source domain.
  BuchiAutomaton compile_grid(const FormulaPtr& f, int elements) {
    int copies = elements * interp.dimension;
    std::vector<std::string> grid = grid_variables(elements, interp.dimension);
    CompiledFormula c = compile_formula(p, f, budget);
    std::vector<BuchiAutomaton> parts;
    if (c.variables.empty()) {
      bool truth = word_emptiness(c.word).has_value();
      if (!truth) {
        BuchiAutomaton empty;
        empty.alphabet = power_alphabet(base(), copies, budget);
        empty.num_states = 1;
        empty.initial = {0};
        empty.normalize();
        return empty;
      }
      parts.push_back(spread(universal_buchi(base()), {0}, copies));
    } else {
      std::vector<int> positions;
      for (const auto& v : c.variables) {
        auto it = std::find(grid.begin(), grid.end(), v);
        if (it == grid.end()) throw InvariantError("compiled variable escaped the grid");
        positions.push_back(static_cast<int>(it - grid.begin()));
      }
      parts.push_back(spread(c.word, positions, copies));
    }
    // A universal source domain constrains nothing on the missing tracks.
    if (p.word.domain != universal_buchi(base()))
      for (int t = 0; t < copies; ++t) parts.push_back(spread(p.word.domain, {t}, copies));
    return reduce(word_product_many(parts, budget));
  }

  /// Conjoins the interpreted-domain automaton onto each element block.  A
  /// universal interpreted domain is skipped outright.
  BuchiAutomaton relativize_elements(BuchiAutomaton a, const BuchiAutomaton& delta,
                                     int elements) {
    if (delta == universal_buchi(delta.alphabet)) return a;
    int d = interp.dimension;
    std::vector<BuchiAutomaton> parts;
    parts.push_back(std::move(a));
    for (int j = 0; j < elements; ++j) {
      std::vector<int> positions;
      for (int c = 0; c < d; ++c) positions.push_back(j * d + c);
      parts.push_back(spread(delta, positions, elements * d));
    }
    return reduce(word_product_many(parts, budget));
  }
};

struct TreeGridCompiler {
  const Presentation& p;
  const Interpretation& interp;
  Budget budget;

  const Alphabet& base() const { return p.tree.base; }

  MullerTreeAutomaton spread(const MullerTreeAutomaton& a, const std::vector<int>& positions,
                             int copies) {
    return tree_relabel(a, selection_letter_map(a.alphabet, base(), copies, positions, budget));
  }

  MullerTreeAutomaton compile_grid(const FormulaPtr& f, int elements) {
    int copies = elements * interp.dimension;
    std::vector<std::string> grid = grid_variables(elements, interp.dimension);
    CompiledFormula c = compile_formula(p, f, budget);
    MullerTreeAutomaton acc;
    if (c.variables.empty()) {
      bool truth = tree_emptiness(c.tree, budget).has_value();
      if (!truth) {
        MullerTreeAutomaton empty;
        empty.alphabet = power_alphabet(base(), copies, budget);
        empty.num_states = 1;
        empty.initial = 0;
        empty.normalize();
        return empty;
      }
      acc = spread(universal_tree_automaton(base()), {0}, copies);
    } else {
      std::vector<int> positions;
      for (const auto& v : c.variables) {
        auto it = std::find(grid.begin(), grid.end(), v);
        if (it == grid.end()) throw InvariantError("compiled variable escaped the grid");
        positions.push_back(static_cast<int>(it - grid.begin()));
      }
      acc = spread(c.tree, positions, copies);
    }
    for (int t = 0; t < copies; ++t)
      acc = tree_product(acc, spread(p.tree.domain, {t}, copies), budget);
    return acc;
  }

  MullerTreeAutomaton relativize_elements(MullerTreeAutomaton a, const MullerTreeAutomaton& delta,
                                          int elements) {
    int d = interp.dimension;
    for (int j = 0; j < elements; ++j) {
      std::vector<int> positions;
      for (int c = 0; c < d; ++c) positions.push_back(j * d + c);
      a = tree_product(a, spread(delta, positions, elements * d), budget);
    }
    return a;
  }
};

}  // namespace

Presentation apply_interpretation(const Presentation& p, const Interpretation& i,
                                  const Budget& budget) {
  p.check_well_formed();
  if (i.dimension < 1) throw InputError("interpretation dimension must be positive");
  if (!i.domain || !i.equality) throw InputError("interpretation lacks domain or equality");
  check_formula_scope(i.domain, 1, i.dimension, "domain formula");
  check_formula_scope(i.equality, 2, i.dimension, "equality formula");
  int max_arity = 2;
  for (const auto& s : i.symbols) {
    if (s.arity < 1) throw InputError("interpreted symbol '" + s.name + "' has arity < 1");
    if (!s.formula) throw InputError("interpreted symbol '" + s.name + "' lacks a formula");
    check_formula_scope(s.formula, s.arity, i.dimension, "formula for '" + s.name + "'");
    max_arity = std::max(max_arity, s.arity);
  }
  const Alphabet& base = p.kind == PresentationKind::word ? p.word.base : p.tree.base;
  // Pre-flight the widest alphabet so over-budget interpretations abort
  // before any compilation work.
  power_alphabet(base, max_arity * i.dimension, budget);

  Presentation out;
  out.kind = p.kind;
  if (p.kind == PresentationKind::word) {
    WordGridCompiler gc{p, i, budget};
    BuchiAutomaton delta = gc.compile_grid(i.domain, 1);
    out.word.base = power_alphabet(base, i.dimension, budget);
    out.word.domain = delta;
    out.word.equality =
        gc.relativize_elements(gc.compile_grid(i.equality, 2), delta, 2);
    for (const auto& s : i.symbols)
      out.word.relations.push_back(
          {s.name, s.arity, s.kind,
           gc.relativize_elements(gc.compile_grid(s.formula, s.arity), delta, s.arity)});
  } else {
    TreeGridCompiler gc{p, i, budget};
    MullerTreeAutomaton delta = gc.compile_grid(i.domain, 1);
    out.tree.base = power_alphabet(base, i.dimension, budget);
    out.tree.domain = delta;
    out.tree.equality = gc.relativize_elements(gc.compile_grid(i.equality, 2), delta, 2);
    for (const auto& s : i.symbols)
      out.tree.relations.push_back(
          {s.name, s.arity, s.kind,
           gc.relativize_elements(gc.compile_grid(s.formula, s.arity), delta, s.arity)});
  }
  out.check_well_formed();
  return out;
}

namespace {

std::string split_variable(const std::string& var, int component) {
  return var + "~" + std::to_string(component);
}

Term rename_term(const Term& t, const std::map<std::string, std::string>& renames) {
  Term out = t;
  if (!t.application) {
    auto it = renames.find(t.name);
    if (it != renames.end()) out.name = it->second;
    return out;
  }
  out.args.clear();
  for (const Term& a : t.args) out.args.push_back(rename_term(a, renames));
  return out;
}

FormulaPtr rename_free(const FormulaPtr& f, const std::map<std::string, std::string>& renames) {
  switch (f->kind) {
    case Formula::Kind::atom: {
      std::vector<Term> args;
      for (const Term& t : f->args) args.push_back(rename_term(t, renames));
      return fo_atom(f->relation, std::move(args));
    }
    case Formula::Kind::negation:
      return fo_not(rename_free(f->children[0], renames));
    case Formula::Kind::conjunction:
      return fo_and(rename_free(f->children[0], renames), rename_free(f->children[1], renames));
    case Formula::Kind::disjunction:
      return fo_or(rename_free(f->children[0], renames), rename_free(f->children[1], renames));
    case Formula::Kind::exists:
    case Formula::Kind::forall: {
      if (renames.count(f->variable))
        throw InvariantError("binder shadows a renamed variable");
      for (const auto& [from, to] : renames)
        if (to == f->variable) throw InvariantError("renaming captured by a binder");
      FormulaPtr body = rename_free(f->children[0], renames);
      return f->kind == Formula::Kind::exists ? fo_exists(f->variable, std::move(body))
                                              : fo_forall(f->variable, std::move(body));
    }
  }
  throw InvariantError("unhandled formula kind");
}

struct Translator {
  const Interpretation& interp;

  /// Instantiates a defining formula at the given interpreted variables.
  FormulaPtr instantiate(const FormulaPtr& formula, const std::vector<std::string>& elements) {
    std::map<std::string, std::string> renames;
    for (std::size_t j = 0; j < elements.size(); ++j)
      for (int c = 0; c < interp.dimension; ++c)
        renames[component_variable(static_cast<int>(j), c)] = split_variable(elements[j], c);
    return rename_free(formula, renames);
  }

  FormulaPtr domain_of(const std::string& var) { return instantiate(interp.domain, {var}); }

  FormulaPtr run(const FormulaPtr& f) {
    switch (f->kind) {
      case Formula::Kind::atom: {
        std::vector<std::string> elements;
        for (const Term& t : f->args) {
          if (t.application) throw InvariantError("unflattened term reached the translator");
          elements.push_back(t.name);
        }
        if (f->relation == "eq") return instantiate(interp.equality, elements);
        for (const auto& s : interp.symbols)
          if (s.name == f->relation) return instantiate(s.formula, elements);
        throw InputError("unknown interpreted symbol '" + f->relation + "'");
      }
      case Formula::Kind::negation:
        return fo_not(run(f->children[0]));
      case Formula::Kind::conjunction:
        return fo_and(run(f->children[0]), run(f->children[1]));
      case Formula::Kind::disjunction:
        return fo_or(run(f->children[0]), run(f->children[1]));
      case Formula::Kind::exists:
      case Formula::Kind::forall: {
        bool universal = f->kind == Formula::Kind::forall;
        FormulaPtr body = run(f->children[0]);
        FormulaPtr guard = domain_of(f->variable);
        body = universal ? fo_implies(std::move(guard), std::move(body))
                         : fo_and(std::move(guard), std::move(body));
        for (int c = interp.dimension - 1; c >= 0; --c) {
          std::string v = split_variable(f->variable, c);
          body = universal ? fo_forall(v, std::move(body)) : fo_exists(v, std::move(body));
        }
        return body;
      }
    }
    throw InvariantError("unhandled formula kind");
  }
};

}  // namespace

FormulaPtr translate_sentence(const Interpretation& i, const FormulaPtr& sentence) {
  std::map<std::string, SignatureEntry> sig;
  for (const auto& s : i.symbols) sig[s.name] = {s.arity, s.kind};
  FormulaPtr flat = flatten_with_signature(sig, sentence);
  if (!free_variables(flat).empty())
    throw InputError("translate_sentence needs a closed formula");
  return Translator{i}.run(flat);
}

Interpretation identity_interpretation(const Presentation& p) {
  p.check_well_formed();
  Interpretation id;
  id.dimension = 1;
  Term x = term_var(component_variable(0, 0));
  id.domain = fo_eq(x, x);
  id.equality = fo_eq(x, term_var(component_variable(1, 0)));
  auto add_symbol = [&](const std::string& name, int arity, RelationKind kind) {
    std::vector<Term> args;
    for (int j = 0; j < arity; ++j) args.push_back(term_var(component_variable(j, 0)));
    id.symbols.push_back({name, arity, kind, fo_atom(name, std::move(args))});
  };
  if (p.kind == PresentationKind::word)
    for (const auto& r : p.word.relations) add_symbol(r.name, r.arity, r.kind);
  else
    for (const auto& r : p.tree.relations) add_symbol(r.name, r.arity, r.kind);
  return id;
}

Interpretation ring_interpretation() {
  Interpretation ring;
  ring.dimension = 1;
  Term x = term_var(component_variable(0, 0));
  Term y = term_var(component_variable(1, 0));
  Term z = term_var(component_variable(2, 0));
  ring.domain = fo_eq(x, x);
  ring.equality = fo_eq(x, y);
  // x + y = (x cup y) cap neg(x cap y), the symmetric difference.
  FormulaPtr add = fo_exists(
      "u", fo_exists(
               "v", fo_exists("w", fo_and(fo_atom("cup", {x, y, term_var("u")}),
                                          fo_and(fo_atom("cap", {x, y, term_var("v")}),
                                                 fo_and(fo_atom("neg", {term_var("v"),
                                                                        term_var("w")}),
                                                        fo_atom("cap", {term_var("u"),
                                                                        term_var("w"), z})))))));
  ring.symbols = {
      {"add", 3, RelationKind::function_graph, add},
      {"mul", 3, RelationKind::function_graph, fo_atom("cap", {x, y, z})},
      {"zero", 1, RelationKind::constant_graph, fo_atom("zero", {x})},
      {"one", 1, RelationKind::constant_graph, fo_atom("one", {x})},
  };
  return ring;
}

namespace {

FormulaPtr conjoin(std::vector<FormulaPtr> parts) {
  if (parts.empty()) throw InvariantError("empty conjunction");
  FormulaPtr acc = parts.back();
  for (auto it = parts.rbegin() + 1; it != parts.rend(); ++it) acc = fo_and(*it, acc);
  return acc;
}

/// z_{ik} = sum_t x_{it} * y_{tk} for every entry, with the sum folded
/// through fresh intermediates.
FormulaPtr matrix_product_formula(int n) {
  auto entry = [&](int element, int i, int k) {
    return term_var(component_variable(element, i * n + k));
  };
  std::vector<FormulaPtr> entries;
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      std::vector<FormulaPtr> atoms;
      std::vector<std::string> bound;
      auto product_var = [&](int t) { return "p" + std::to_string(t); };
      auto sum_var = [&](int t) { return "s" + std::to_string(t); };
      for (int t = 0; t < n; ++t) {
        bound.push_back(product_var(t));
        atoms.push_back(fo_atom("mul", {entry(0, i, t), entry(1, t, k),
                                        term_var(product_var(t))}));
      }
      for (int t = 1; t <= n - 2; ++t) bound.push_back(sum_var(t));
      if (n == 1) {
        atoms.push_back(fo_eq(term_var(product_var(0)), entry(2, i, k)));
      } else {
        for (int t = 1; t <= n - 1; ++t) {
          Term lhs = t == 1 ? term_var(product_var(0)) : term_var(sum_var(t - 1));
          Term result = t == n - 1 ? entry(2, i, k) : term_var(sum_var(t));
          atoms.push_back(fo_atom("add", {lhs, term_var(product_var(t)), result}));
        }
      }
      FormulaPtr block = conjoin(std::move(atoms));
      for (auto it = bound.rbegin(); it != bound.rend(); ++it)
        block = fo_exists(*it, std::move(block));
      entries.push_back(std::move(block));
    }
  return conjoin(std::move(entries));
}

FormulaPtr identity_matrix_formula(int n) {
  auto entry = [&](int i, int k) { return term_var(component_variable(0, i * n + k)); };
  std::vector<FormulaPtr> parts;
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      parts.push_back(fo_atom(i == k ? "one" : "zero", {entry(i, k)}));
  return conjoin(std::move(parts));
}

FormulaPtr entrywise_equality_formula(int n) {
  std::vector<FormulaPtr> parts;
  for (int c = 0; c < n * n; ++c)
    parts.push_back(fo_eq(term_var(component_variable(0, c)), term_var(component_variable(1, c))));
  return conjoin(std::move(parts));
}

}  // namespace

Interpretation matrix_interpretation(int n) {
  if (n < 2) throw InputError("matrix interpretation needs n >= 2");
  Interpretation m;
  m.dimension = n * n;
  Term first = term_var(component_variable(0, 0));
  m.domain = fo_eq(first, first);
  m.equality = entrywise_equality_formula(n);
  std::vector<FormulaPtr> adds, zeros;
  for (int c = 0; c < n * n; ++c) {
    adds.push_back(fo_atom("add", {term_var(component_variable(0, c)),
                                   term_var(component_variable(1, c)),
                                   term_var(component_variable(2, c))}));
    zeros.push_back(fo_atom("zero", {term_var(component_variable(0, c))}));
  }
  m.symbols = {
      {"add", 3, RelationKind::function_graph, conjoin(std::move(adds))},
      {"mul", 3, RelationKind::function_graph, matrix_product_formula(n)},
      {"zero", 1, RelationKind::constant_graph, conjoin(std::move(zeros))},
      {"one", 1, RelationKind::constant_graph, identity_matrix_formula(n)},
  };
  return m;
}

Interpretation unitriangular_interpretation(int n) {
  if (n < 3) throw InputError("unitriangular interpretation needs n >= 3");
  Interpretation ut;
  ut.dimension = n * n;
  auto entry = [&](int i, int k) { return term_var(component_variable(0, i * n + k)); };
  std::vector<FormulaPtr> shape;
  for (int i = 0; i < n; ++i) shape.push_back(fo_atom("one", {entry(i, i)}));
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < i; ++k) shape.push_back(fo_atom("zero", {entry(i, k)}));
  ut.domain = conjoin(std::move(shape));
  ut.equality = entrywise_equality_formula(n);
  ut.symbols = {
      {"mul", 3, RelationKind::function_graph, matrix_product_formula(n)},
      {"one", 1, RelationKind::constant_graph, identity_matrix_formula(n)},
  };
  return ut;
}

}  // namespace autstr
