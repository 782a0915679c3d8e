#include "autstr/fo.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace autstr {

Term term_var(std::string name) { return Term{std::move(name), {}, false}; }
Term term_apply(std::string name, std::vector<Term> args) {
  return Term{std::move(name), std::move(args), true};
}
Term term_const(std::string name) { return Term{std::move(name), {}, true}; }

namespace {

FormulaPtr make(Formula f) { return std::make_shared<const Formula>(std::move(f)); }

}  // namespace

FormulaPtr fo_atom(std::string relation, std::vector<Term> args) {
  Formula f;
  f.kind = Formula::Kind::atom;
  f.relation = std::move(relation);
  f.args = std::move(args);
  return make(std::move(f));
}

FormulaPtr fo_eq(Term a, Term b) { return fo_atom("eq", {std::move(a), std::move(b)}); }

FormulaPtr fo_not(FormulaPtr f) {
  Formula g;
  g.kind = Formula::Kind::negation;
  g.children = {std::move(f)};
  return make(std::move(g));
}

FormulaPtr fo_and(FormulaPtr a, FormulaPtr b) {
  Formula g;
  g.kind = Formula::Kind::conjunction;
  g.children = {std::move(a), std::move(b)};
  return make(std::move(g));
}

FormulaPtr fo_or(FormulaPtr a, FormulaPtr b) {
  Formula g;
  g.kind = Formula::Kind::disjunction;
  g.children = {std::move(a), std::move(b)};
  return make(std::move(g));
}

FormulaPtr fo_implies(FormulaPtr a, FormulaPtr b) {
  return fo_or(fo_not(std::move(a)), std::move(b));
}

FormulaPtr fo_exists(std::string variable, FormulaPtr f) {
  Formula g;
  g.kind = Formula::Kind::exists;
  g.variable = std::move(variable);
  g.children = {std::move(f)};
  return make(std::move(g));
}

FormulaPtr fo_forall(std::string variable, FormulaPtr f) {
  Formula g;
  g.kind = Formula::Kind::forall;
  g.variable = std::move(variable);
  g.children = {std::move(f)};
  return make(std::move(g));
}

namespace {

void term_idents(const Term& t, std::set<std::string>& out) {
  if (!t.application) out.insert(t.name);
  for (const Term& a : t.args) term_idents(a, out);
}

void collect_free(const FormulaPtr& f, std::set<std::string> bound, std::set<std::string>& out) {
  switch (f->kind) {
    case Formula::Kind::atom: {
      std::set<std::string> idents;
      for (const Term& t : f->args) term_idents(t, idents);
      for (const auto& v : idents)
        if (!bound.count(v)) out.insert(v);
      break;
    }
    case Formula::Kind::exists:
    case Formula::Kind::forall:
      bound.insert(f->variable);
      collect_free(f->children[0], std::move(bound), out);
      break;
    default:
      for (const auto& c : f->children) collect_free(c, bound, out);
  }
}

}  // namespace

std::vector<std::string> free_variables(const FormulaPtr& f) {
  std::set<std::string> out;
  collect_free(f, {}, out);
  return {out.begin(), out.end()};
}

// ---------------------------------------------------------------------------
// Surface syntax.

namespace {

struct Token {
  enum class Kind { ident, lparen, rparen, comma, dot, equal, amp, pipe, bang, arrow, end };
  Kind kind;
  std::string text;
  std::size_t pos;
};

std::vector<Token> lex_formula(const std::string& text) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto push = [&](Token::Kind k, std::string t, std::size_t p) {
    out.push_back({k, std::move(t), p});
  };
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    std::size_t start = i;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
        ++j;
      push(Token::Kind::ident, text.substr(i, j - i), start);
      i = j;
      continue;
    }
    switch (c) {
      case '(': push(Token::Kind::lparen, "(", start); break;
      case ')': push(Token::Kind::rparen, ")", start); break;
      case ',': push(Token::Kind::comma, ",", start); break;
      case '.': push(Token::Kind::dot, ".", start); break;
      case '=': push(Token::Kind::equal, "=", start); break;
      case '&': push(Token::Kind::amp, "&", start); break;
      case '|': push(Token::Kind::pipe, "|", start); break;
      case '!': push(Token::Kind::bang, "!", start); break;
      case '-':
        if (i + 1 >= text.size() || text[i + 1] != '>')
          throw ParseError(1, "expected '->' at offset " + std::to_string(start));
        push(Token::Kind::arrow, "->", start);
        ++i;
        break;
      default:
        throw ParseError(1, std::string("unexpected character '") + c + "' at offset " +
                         std::to_string(start));
    }
    ++i;
  }
  push(Token::Kind::end, "", text.size());
  return out;
}

struct FormulaParser {
  std::vector<Token> tokens;
  std::size_t at = 0;

  const Token& peek() const { return tokens[at]; }
  Token take() { return tokens[at++]; }
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(1, what + " at offset " + std::to_string(peek().pos));
  }
  bool accept(Token::Kind k) {
    if (peek().kind != k) return false;
    ++at;
    return true;
  }
  void expect(Token::Kind k, const std::string& what) {
    if (!accept(k)) fail("expected " + what);
  }

  std::string ident(const std::string& what) {
    if (peek().kind != Token::Kind::ident) fail("expected " + what);
    std::string name = take().text;
    if (name == "forall" || name == "exists") fail("keyword '" + name + "' used as " + what);
    return name;
  }

  Term term() {
    std::string name = ident("a term");
    if (!accept(Token::Kind::lparen)) return term_var(std::move(name));
    std::vector<Term> args;
    if (!accept(Token::Kind::rparen)) {
      args.push_back(term());
      while (accept(Token::Kind::comma)) args.push_back(term());
      expect(Token::Kind::rparen, "')'");
    }
    return term_apply(std::move(name), std::move(args));
  }

  FormulaPtr atom() {
    Term first = term();
    if (accept(Token::Kind::equal)) return fo_eq(std::move(first), term());
    if (!first.application) fail("bare identifier '" + first.name + "' is not a formula");
    return fo_atom(std::move(first.name), std::move(first.args));
  }

  FormulaPtr prefix() {
    if (accept(Token::Kind::bang)) return fo_not(prefix());
    if (peek().kind == Token::Kind::ident &&
        (peek().text == "forall" || peek().text == "exists")) {
      bool universal = take().text == "forall";
      std::string var = ident("a variable");
      expect(Token::Kind::dot, "'.' after the quantified variable");
      FormulaPtr body = implication();
      return universal ? fo_forall(std::move(var), std::move(body))
                       : fo_exists(std::move(var), std::move(body));
    }
    if (accept(Token::Kind::lparen)) {
      FormulaPtr f = implication();
      expect(Token::Kind::rparen, "')'");
      return f;
    }
    return atom();
  }

  FormulaPtr conjunction() {
    FormulaPtr f = prefix();
    while (accept(Token::Kind::amp)) f = fo_and(std::move(f), prefix());
    return f;
  }

  FormulaPtr disjunction() {
    FormulaPtr f = conjunction();
    while (accept(Token::Kind::pipe)) f = fo_or(std::move(f), conjunction());
    return f;
  }

  FormulaPtr implication() {
    FormulaPtr f = disjunction();
    if (accept(Token::Kind::arrow)) return fo_implies(std::move(f), implication());
    return f;
  }
};

std::string format_term(const Term& t) {
  if (!t.application) return t.name;
  std::string out = t.name + "(";
  for (std::size_t i = 0; i < t.args.size(); ++i) {
    if (i) out += ",";
    out += format_term(t.args[i]);
  }
  return out + ")";
}

}  // namespace

FormulaPtr parse_formula(const std::string& text) {
  FormulaParser parser{lex_formula(text)};
  FormulaPtr f = parser.implication();
  if (parser.peek().kind != Token::Kind::end) parser.fail("trailing input");
  return f;
}

std::string format_formula(const FormulaPtr& f) {
  switch (f->kind) {
    case Formula::Kind::atom: {
      std::string out = f->relation + "(";
      for (std::size_t i = 0; i < f->args.size(); ++i) {
        if (i) out += ",";
        out += format_term(f->args[i]);
      }
      return out + ")";
    }
    case Formula::Kind::negation:
      return "!" + format_formula(f->children[0]);
    case Formula::Kind::conjunction:
      return "(" + format_formula(f->children[0]) + " & " + format_formula(f->children[1]) + ")";
    case Formula::Kind::disjunction:
      return "(" + format_formula(f->children[0]) + " | " + format_formula(f->children[1]) + ")";
    case Formula::Kind::exists:
      return "exists " + f->variable + ". " + format_formula(f->children[0]);
    case Formula::Kind::forall:
      return "forall " + f->variable + ". " + format_formula(f->children[0]);
  }
  throw InvariantError("unhandled formula kind");
}

// ---------------------------------------------------------------------------
// Signature resolution and flattening.

namespace {

struct Signature {
  std::map<std::string, SignatureEntry> symbols;

  static Signature of(const Presentation& p) {
    Signature s;
    s.symbols["eq"] = {2, RelationKind::relation};
    if (p.kind == PresentationKind::word)
      for (const auto& r : p.word.relations) s.symbols[r.name] = {r.arity, r.kind};
    else
      for (const auto& r : p.tree.relations) s.symbols[r.name] = {r.arity, r.kind};
    return s;
  }

  const SignatureEntry* find(const std::string& name) const {
    auto it = symbols.find(name);
    return it == symbols.end() ? nullptr : &it->second;
  }
};

struct Flattener {
  const Signature& sig;

  /// Emits graph atoms for the non-variable parts of a term and returns the
  /// variable carrying its value.
  std::string emit(const Term& t, std::vector<FormulaPtr>& graphs,
                   std::vector<std::string>& fresh, int& counter) {
    const SignatureEntry* info = sig.find(t.name);
    if (!t.application) {
      if (!info) return t.name;  // plain variable
      if (info->kind != RelationKind::constant_graph)
        throw InputError("symbol '" + t.name + "' used as a variable");
      std::string u = "~" + std::to_string(counter++);
      fresh.push_back(u);
      graphs.push_back(fo_atom(t.name, {term_var(u)}));
      return u;
    }
    if (!info) throw InputError("unknown symbol '" + t.name + "'");
    if (info->kind == RelationKind::constant_graph) {
      if (!t.args.empty()) throw InputError("constant '" + t.name + "' applied to arguments");
      std::string u = "~" + std::to_string(counter++);
      fresh.push_back(u);
      graphs.push_back(fo_atom(t.name, {term_var(u)}));
      return u;
    }
    if (info->kind != RelationKind::function_graph)
      throw InputError("relation '" + t.name + "' used as a function");
    if (static_cast<int>(t.args.size()) + 1 != info->arity)
      throw InputError("function '" + t.name + "' expects " + std::to_string(info->arity - 1) +
                       " arguments");
    std::vector<Term> arg_vars;
    for (const Term& a : t.args) arg_vars.push_back(term_var(emit(a, graphs, fresh, counter)));
    std::string u = "~" + std::to_string(counter++);
    fresh.push_back(u);
    arg_vars.push_back(term_var(u));
    graphs.push_back(fo_atom(t.name, std::move(arg_vars)));
    return u;
  }

  FormulaPtr atom(const std::string& relation, const std::vector<Term>& args, bool negated) {
    const SignatureEntry* info = sig.find(relation);
    if (!info) throw InputError("unknown relation '" + relation + "'");
    if (static_cast<int>(args.size()) != info->arity)
      throw InputError("relation '" + relation + "' expects " + std::to_string(info->arity) +
                       " arguments");
    std::vector<FormulaPtr> graphs;
    std::vector<std::string> fresh;
    int counter = 0;
    std::vector<Term> vars;
    for (const Term& a : args) vars.push_back(term_var(emit(a, graphs, fresh, counter)));
    // The negation stays on the relation atom: since function graphs are
    // total and equality-compatible, the introduced values are unique up to
    // equality, so the existential block commutes with the negation.
    FormulaPtr core = fo_atom(relation, std::move(vars));
    if (negated) core = fo_not(std::move(core));
    for (const auto& g : graphs) core = fo_and(g, std::move(core));
    for (auto it = fresh.rbegin(); it != fresh.rend(); ++it)
      core = fo_exists(*it, std::move(core));
    return core;
  }

  FormulaPtr run(const FormulaPtr& f) {
    switch (f->kind) {
      case Formula::Kind::atom:
        return atom(f->relation, f->args, false);
      case Formula::Kind::negation:
        if (f->children[0]->kind == Formula::Kind::atom)
          return atom(f->children[0]->relation, f->children[0]->args, true);
        return fo_not(run(f->children[0]));
      case Formula::Kind::conjunction:
        return fo_and(run(f->children[0]), run(f->children[1]));
      case Formula::Kind::disjunction:
        return fo_or(run(f->children[0]), run(f->children[1]));
      case Formula::Kind::exists:
      case Formula::Kind::forall: {
        if (sig.find(f->variable))
          throw InputError("quantified variable '" + f->variable + "' shadows a symbol");
        FormulaPtr body = run(f->children[0]);
        return f->kind == Formula::Kind::exists ? fo_exists(f->variable, std::move(body))
                                                : fo_forall(f->variable, std::move(body));
      }
    }
    throw InvariantError("unhandled formula kind");
  }
};

}  // namespace

FormulaPtr flatten_formula(const Presentation& p, const FormulaPtr& f) {
  Signature sig = Signature::of(p);
  return Flattener{sig}.run(f);
}

FormulaPtr flatten_with_signature(const std::map<std::string, SignatureEntry>& symbols,
                                  const FormulaPtr& f) {
  Signature sig{symbols};
  sig.symbols["eq"] = {2, RelationKind::relation};
  return Flattener{sig}.run(f);
}

namespace {

FormulaPtr nnf(const FormulaPtr& f, bool positive);

/// Negates the body of a determined existential block ∃~k(G ∧ ψ) produced by
/// flattening: the graph atoms stay positive and only the core is negated.
/// Sound because each graph determines its fresh variable totally and
/// uniquely up to equality, so ¬∃~k(G ∧ ψ) ⟺ ∃~k(G ∧ ¬ψ).  Keeping the
/// quantifier existential spares the compiler a complementation.
FormulaPtr negate_block_body(const FormulaPtr& b) {
  if (b->kind == Formula::Kind::conjunction && b->children[0]->kind == Formula::Kind::atom)
    return fo_and(b->children[0], negate_block_body(b->children[1]));
  if (b->kind == Formula::Kind::exists && !b->variable.empty() && b->variable[0] == '~')
    return fo_exists(b->variable, negate_block_body(b->children[0]));
  return nnf(b, false);
}

/// Cost-aware negation normal form.  Negations are pushed through the
/// connectives (free) and into literals (a small relation complement), but a
/// negated existential is kept as an explicit ¬∃ node and a universal is
/// rewritten to ¬∃¬: the compiler realizes each ¬∃ as one automaton
/// complement applied after projection and reduction, whereas a native ∀
/// would cost two stacked complements.
FormulaPtr nnf(const FormulaPtr& f, bool positive) {
  switch (f->kind) {
    case Formula::Kind::atom:
      return positive ? f : fo_not(f);
    case Formula::Kind::negation:
      return nnf(f->children[0], !positive);
    case Formula::Kind::conjunction:
      return positive ? fo_and(nnf(f->children[0], true), nnf(f->children[1], true))
                      : fo_or(nnf(f->children[0], false), nnf(f->children[1], false));
    case Formula::Kind::disjunction:
      return positive ? fo_or(nnf(f->children[0], true), nnf(f->children[1], true))
                      : fo_and(nnf(f->children[0], false), nnf(f->children[1], false));
    case Formula::Kind::exists:
      if (positive) return fo_exists(f->variable, nnf(f->children[0], true));
      if (!f->variable.empty() && f->variable[0] == '~')
        return fo_exists(f->variable, negate_block_body(f->children[0]));
      return fo_not(fo_exists(f->variable, nnf(f->children[0], true)));
    case Formula::Kind::forall:
      if (positive) return fo_not(fo_exists(f->variable, nnf(f->children[0], false)));
      return fo_exists(f->variable, nnf(f->children[0], false));
  }
  throw InvariantError("unhandled formula kind");
}

}  // namespace

FormulaPtr to_nnf(const FormulaPtr& f) { return nnf(f, true); }

// ---------------------------------------------------------------------------
// Compilation.

namespace {

/// Reads the automaton over base^{args} on the tracks named by `args` inside
/// the track list `vars` (handles reordering, repetition and cylindrified
/// tracks in one relabeling).
LetterMap selection_map(const Alphabet& source, const Alphabet& base,
                        const std::vector<std::string>& vars,
                        const std::vector<std::string>& args, const Budget& budget) {
  std::vector<int> arg_pos;
  for (const auto& a : args) {
    auto it = std::find(vars.begin(), vars.end(), a);
    if (it == vars.end()) throw InvariantError("selection variable missing from track list");
    arg_pos.push_back(static_cast<int>(it - vars.begin()));
  }
  return selection_letter_map(source, base, static_cast<int>(vars.size()), arg_pos, budget);
}

std::vector<std::string> sorted_union(const std::vector<std::vector<std::string>>& parts) {
  std::set<std::string> all;
  for (const auto& p : parts) all.insert(p.begin(), p.end());
  return {all.begin(), all.end()};
}

struct CompileResult {
  std::vector<std::string> vars;
  BuchiAutomaton word;
  MullerTreeAutomaton tree;
  std::optional<bool> closed;  // set for variable-free subformulas
};

void collect_juncts(const FormulaPtr& f, Formula::Kind kind, std::vector<FormulaPtr>& out) {
  if (f->kind == kind) {
    collect_juncts(f->children[0], kind, out);
    collect_juncts(f->children[1], kind, out);
  } else {
    out.push_back(f);
  }
}

FormulaPtr fold_and(std::vector<FormulaPtr> parts) {
  FormulaPtr acc = std::move(parts.back());
  for (auto it = parts.rbegin() + 1; it != parts.rend(); ++it) acc = fo_and(*it, std::move(acc));
  return acc;
}

/// Pushes each existential below the conjuncts that do not mention its
/// variable, so products are taken over small track sets and each projection
/// happens as early as possible.  ∃v(A ∧ B) with v not free in A equals
/// A ∧ ∃vB (the domain constraint on v lives inside B's atoms).
FormulaPtr miniscope(const FormulaPtr& f) {
  switch (f->kind) {
    case Formula::Kind::atom:
      return f;
    case Formula::Kind::negation:
      return fo_not(miniscope(f->children[0]));
    case Formula::Kind::conjunction:
      return fo_and(miniscope(f->children[0]), miniscope(f->children[1]));
    case Formula::Kind::disjunction:
      return fo_or(miniscope(f->children[0]), miniscope(f->children[1]));
    case Formula::Kind::forall:
      return fo_forall(f->variable, miniscope(f->children[0]));
    case Formula::Kind::exists: {
      FormulaPtr body = miniscope(f->children[0]);
      if (body->kind == Formula::Kind::conjunction) {
        std::vector<FormulaPtr> juncts;
        collect_juncts(body, Formula::Kind::conjunction, juncts);
        std::vector<FormulaPtr> with, without;
        for (auto& j : juncts) {
          std::vector<std::string> frees = free_variables(j);
          bool mentions = std::find(frees.begin(), frees.end(), f->variable) != frees.end();
          (mentions ? with : without).push_back(std::move(j));
        }
        if (!without.empty() && !with.empty())
          return fo_and(fold_and(std::move(without)),
                        fo_exists(f->variable, fold_and(std::move(with))));
      }
      return fo_exists(f->variable, std::move(body));
    }
  }
  throw InvariantError("unhandled formula kind");
}

struct WordCompiler {
  const WordPresentation& p;
  Budget budget;
  std::optional<bool> domain_nonempty_;

  bool domain_nonempty() {
    if (!domain_nonempty_) domain_nonempty_ = word_emptiness(p.domain).has_value();
    return *domain_nonempty_;
  }

  BuchiAutomaton reduce(const BuchiAutomaton& a) { return reduce_simulation(a, 800); }

  BuchiAutomaton empty_language() {
    BuchiAutomaton a;
    a.alphabet = p.base;
    a.num_states = 1;
    a.initial = {0};
    a.normalize();
    return a;
  }

  BuchiAutomaton select(const BuchiAutomaton& a, const std::vector<std::string>& vars,
                        const std::vector<std::string>& args) {
    return word_relabel(a, selection_map(a.alphabet, p.base, vars, args, budget));
  }

  BuchiAutomaton domain_at(const std::vector<std::string>& vars, const std::string& v) {
    return select(p.domain, vars, {v});
  }

  /// Conjoins the domain constraint on every listed track.  A universal
  /// domain (every word is a representative) constrains nothing and is
  /// skipped, which keeps relativization from doubling state counts.
  BuchiAutomaton relativize(BuchiAutomaton a, const std::vector<std::string>& vars) {
    if (p.domain == universal_buchi(p.base)) return a;
    std::vector<BuchiAutomaton> parts;
    parts.push_back(std::move(a));
    for (const auto& v : vars) parts.push_back(domain_at(vars, v));
    return reduce(word_product_many(parts, budget));
  }

  CompileResult universal_over(const std::vector<std::string>& vars) {
    CompileResult r;
    r.vars = vars;
    r.word = relativize(select(universal_buchi(p.base), vars, {vars[0]}), vars);
    return r;
  }

  CompileResult compile(const FormulaPtr& f) {
    switch (f->kind) {
      case Formula::Kind::atom: {
        const BuchiAutomaton* rel;
        if (f->relation == "eq") {
          rel = &p.equality;
        } else {
          const WordRelation* r = p.find(f->relation);
          if (!r) throw InputError("unknown relation '" + f->relation + "'");
          rel = &r->automaton;
        }
        CompileResult out;
        std::vector<std::string> args;
        for (const Term& t : f->args) {
          if (t.application) throw InvariantError("unflattened term reached the compiler");
          args.push_back(t.name);
        }
        std::set<std::string> uniq(args.begin(), args.end());
        out.vars.assign(uniq.begin(), uniq.end());
        out.word = relativize(select(*rel, out.vars, args), out.vars);
        return out;
      }
      case Formula::Kind::negation: {
        CompileResult c = compile(f->children[0]);
        if (c.closed) {
          c.closed = !*c.closed;
          return c;
        }
        CompileResult out;
        out.vars = c.vars;
        out.word = relativize(word_complement(reduce(c.word), budget), out.vars);
        return out;
      }
      case Formula::Kind::conjunction: {
        std::vector<FormulaPtr> juncts;
        collect_juncts(f, Formula::Kind::conjunction, juncts);
        std::vector<CompileResult> open;
        for (const auto& j : juncts) {
          CompileResult c = compile(j);
          if (c.closed && !*c.closed) {
            // One false conjunct sinks the whole conjunction.
            std::vector<std::vector<std::string>> var_sets{{}};
            for (const auto& o : open) var_sets.push_back(o.vars);
            CompileResult out;
            out.vars = sorted_union(var_sets);
            if (out.vars.empty()) {
              out.closed = false;
            } else {
              out.word = select(empty_language(), out.vars, {out.vars[0]});
            }
            return out;
          }
          if (!c.closed) open.push_back(std::move(c));
        }
        if (open.empty()) {
          CompileResult out;
          out.closed = true;
          return out;
        }
        std::vector<std::vector<std::string>> var_sets;
        for (const auto& o : open) var_sets.push_back(o.vars);
        CompileResult out;
        out.vars = sorted_union(var_sets);
        std::vector<BuchiAutomaton> parts;
        for (const auto& o : open) parts.push_back(select(o.word, out.vars, o.vars));
        out.word = reduce(word_product_many(parts, budget));
        return out;
      }
      case Formula::Kind::disjunction: {
        std::vector<FormulaPtr> juncts;
        collect_juncts(f, Formula::Kind::disjunction, juncts);
        std::vector<CompileResult> open;
        bool closed_true = false;
        for (const auto& j : juncts) {
          CompileResult c = compile(j);
          if (c.closed) {
            closed_true = closed_true || *c.closed;
            continue;
          }
          open.push_back(std::move(c));
        }
        std::vector<std::vector<std::string>> var_sets;
        for (const auto& o : open) var_sets.push_back(o.vars);
        std::vector<std::string> vars = sorted_union(var_sets);
        if (closed_true) {
          if (vars.empty()) {
            CompileResult out;
            out.closed = true;
            return out;
          }
          return universal_over(vars);
        }
        if (open.empty()) {
          CompileResult out;
          out.closed = false;
          return out;
        }
        CompileResult out;
        out.vars = vars;
        BuchiAutomaton acc = relativize(select(open[0].word, vars, open[0].vars), vars);
        for (std::size_t i = 1; i < open.size(); ++i)
          acc = word_union(acc, relativize(select(open[i].word, vars, open[i].vars), vars));
        out.word = reduce(acc);
        return out;
      }
      case Formula::Kind::exists: {
        CompileResult body = compile(f->children[0]);
        if (body.closed) {
          CompileResult out;
          out.closed = *body.closed && domain_nonempty();
          return out;
        }
        auto it = std::find(body.vars.begin(), body.vars.end(), f->variable);
        if (it == body.vars.end()) {
          if (domain_nonempty()) return body;
          CompileResult out;
          out.vars = body.vars;
          out.word = select(empty_language(), out.vars, {out.vars[0]});
          return out;
        }
        int track = static_cast<int>(it - body.vars.begin());
        CompileResult out;
        out.vars = body.vars;
        out.vars.erase(out.vars.begin() + track);
        if (out.vars.empty()) {
          // Projecting the last track preserves emptiness, so skip it.
          out.closed = word_emptiness(body.word).has_value();
          return out;
        }
        out.word = reduce(word_project(body.word, track));
        return out;
      }
      case Formula::Kind::forall:
        // Unreachable after to_nnf, which rewrites universals to ¬∃¬.
        return compile(to_nnf(f));
    }
    throw InvariantError("unhandled formula kind");
  }
};

struct TreeCompiler {
  const TreePresentation& p;
  Budget budget;
  std::optional<bool> domain_nonempty_;

  bool domain_nonempty() {
    if (!domain_nonempty_) domain_nonempty_ = tree_emptiness(p.domain, budget).has_value();
    return *domain_nonempty_;
  }

  MullerTreeAutomaton empty_language() {
    MullerTreeAutomaton a;
    a.alphabet = p.base;
    a.num_states = 1;
    a.initial = 0;
    a.normalize();
    return a;
  }

  MullerTreeAutomaton select(const MullerTreeAutomaton& a, const std::vector<std::string>& vars,
                             const std::vector<std::string>& args) {
    return tree_relabel(a, selection_map(a.alphabet, p.base, vars, args, budget));
  }

  MullerTreeAutomaton relativize(MullerTreeAutomaton a, const std::vector<std::string>& vars) {
    for (const auto& v : vars) a = tree_product(a, select(p.domain, vars, {v}), budget);
    return a;
  }

  const MullerTreeAutomaton& atom_automaton(const std::string& relation) {
    if (relation == "eq") return p.equality;
    const TreeRelation* r = p.find(relation);
    if (!r) throw InputError("unknown relation '" + relation + "'");
    return r->automaton;
  }

  CompileResult compile(const FormulaPtr& f) {
    switch (f->kind) {
      case Formula::Kind::atom:
      case Formula::Kind::negation: {
        const Formula* a = f.get();
        bool negated = f->kind == Formula::Kind::negation;
        if (negated) {
          if (f->children[0]->kind != Formula::Kind::atom)
            throw UnsupportedFragmentError(
                "tree compilation needs negations on atoms (after negation normal form)");
          a = f->children[0].get();
        }
        const MullerTreeAutomaton* rel;
        if (negated) {
          auto it = p.complements.find(a->relation);
          if (it == p.complements.end())
            throw UnsupportedFragmentError("no registered complement for atom '" + a->relation +
                                           "'");
          rel = &it->second;
        } else {
          rel = &atom_automaton(a->relation);
        }
        CompileResult out;
        std::vector<std::string> args;
        for (const Term& t : a->args) {
          if (t.application) throw InvariantError("unflattened term reached the compiler");
          args.push_back(t.name);
        }
        std::set<std::string> uniq(args.begin(), args.end());
        out.vars.assign(uniq.begin(), uniq.end());
        out.tree = relativize(select(*rel, out.vars, args), out.vars);
        return out;
      }
      case Formula::Kind::conjunction: {
        std::vector<FormulaPtr> juncts;
        collect_juncts(f, Formula::Kind::conjunction, juncts);
        std::vector<CompileResult> open;
        for (const auto& j : juncts) {
          CompileResult c = compile(j);
          if (c.closed && !*c.closed) {
            std::vector<std::vector<std::string>> var_sets{{}};
            for (const auto& o : open) var_sets.push_back(o.vars);
            CompileResult out;
            out.vars = sorted_union(var_sets);
            if (out.vars.empty())
              out.closed = false;
            else
              out.tree = select(empty_language(), out.vars, {out.vars[0]});
            return out;
          }
          if (!c.closed) open.push_back(std::move(c));
        }
        if (open.empty()) {
          CompileResult out;
          out.closed = true;
          return out;
        }
        std::vector<std::vector<std::string>> var_sets;
        for (const auto& o : open) var_sets.push_back(o.vars);
        CompileResult out;
        out.vars = sorted_union(var_sets);
        MullerTreeAutomaton acc = select(open[0].tree, out.vars, open[0].vars);
        for (std::size_t i = 1; i < open.size(); ++i)
          acc = tree_product(acc, select(open[i].tree, out.vars, open[i].vars), budget);
        out.tree = acc;
        return out;
      }
      case Formula::Kind::disjunction: {
        std::vector<FormulaPtr> juncts;
        collect_juncts(f, Formula::Kind::disjunction, juncts);
        std::vector<CompileResult> open;
        bool closed_true = false;
        for (const auto& j : juncts) {
          CompileResult c = compile(j);
          if (c.closed)
            closed_true = closed_true || *c.closed;
          else
            open.push_back(std::move(c));
        }
        std::vector<std::vector<std::string>> var_sets;
        for (const auto& o : open) var_sets.push_back(o.vars);
        std::vector<std::string> vars = sorted_union(var_sets);
        if (closed_true) {
          if (vars.empty()) {
            CompileResult out;
            out.closed = true;
            return out;
          }
          CompileResult out;
          out.vars = vars;
          out.tree = relativize(select(universal_tree_automaton(p.base), vars, {vars[0]}), vars);
          return out;
        }
        if (open.empty()) {
          CompileResult out;
          out.closed = false;
          return out;
        }
        CompileResult out;
        out.vars = vars;
        MullerTreeAutomaton acc = relativize(select(open[0].tree, vars, open[0].vars), vars);
        for (std::size_t i = 1; i < open.size(); ++i)
          acc = tree_union(acc, relativize(select(open[i].tree, vars, open[i].vars), vars));
        out.tree = acc;
        return out;
      }
      case Formula::Kind::exists: {
        CompileResult body = compile(f->children[0]);
        if (body.closed) {
          CompileResult out;
          out.closed = *body.closed && domain_nonempty();
          return out;
        }
        auto it = std::find(body.vars.begin(), body.vars.end(), f->variable);
        if (it == body.vars.end()) {
          if (domain_nonempty()) return body;
          CompileResult out;
          out.vars = body.vars;
          out.tree = select(empty_language(), out.vars, {out.vars[0]});
          return out;
        }
        int track = static_cast<int>(it - body.vars.begin());
        CompileResult out;
        out.vars = body.vars;
        out.vars.erase(out.vars.begin() + track);
        if (out.vars.empty()) {
          // Projecting the last track preserves emptiness, so skip it.
          out.closed = tree_emptiness(body.tree, budget).has_value();
          return out;
        }
        out.tree = tree_project(body.tree, track);
        return out;
      }
      case Formula::Kind::forall:
        // Unreachable after to_nnf, which rewrites universals to ¬∃¬.
        return compile(to_nnf(f));
    }
    throw InvariantError("unhandled formula kind");
  }
};

CompileResult compile_core(const Presentation& p, const FormulaPtr& flattened,
                           const Budget& budget) {
  FormulaPtr core = miniscope(to_nnf(flattened));
  if (p.kind == PresentationKind::word) return WordCompiler{p.word, budget}.compile(core);
  return TreeCompiler{p.tree, budget}.compile(core);
}

}  // namespace

CompiledFormula compile_formula(const Presentation& p, const FormulaPtr& f, const Budget& budget) {
  p.check_well_formed();
  // Negation is pushed to atoms before flattening: a negated function-graph
  // atom then flattens to an existential graph block around the negated core
  // relation (sound by totality), instead of the block itself being negated
  // into universal quantifiers later.
  CompileResult r = compile_core(p, flatten_formula(p, to_nnf(f)), budget);
  CompiledFormula out;
  out.variables = r.vars;
  if (r.closed) {
    // Closed formula: dummy single-track convention, domain language iff true.
    if (p.kind == PresentationKind::word) {
      if (*r.closed) {
        out.word = p.word.domain;
      } else {
        out.word = WordCompiler{p.word, budget}.empty_language();
      }
    } else {
      if (*r.closed)
        out.tree = p.tree.domain;
      else
        out.tree = TreeCompiler{p.tree, budget}.empty_language();
    }
    return out;
  }
  if (p.kind == PresentationKind::word)
    out.word = r.word;
  else
    out.tree = r.tree;
  return out;
}

namespace {

SentenceVerdict decide_core(const Presentation& p, const FormulaPtr& f, const Budget& budget) {
  switch (f->kind) {
    case Formula::Kind::negation: {
      SentenceVerdict v = decide_core(p, f->children[0], budget);
      v.truth = !v.truth;
      return v;
    }
    case Formula::Kind::conjunction: {
      SentenceVerdict a = decide_core(p, f->children[0], budget);
      if (!a.truth) return a;
      return decide_core(p, f->children[1], budget);
    }
    case Formula::Kind::disjunction: {
      SentenceVerdict a = decide_core(p, f->children[0], budget);
      if (a.truth) return a;
      return decide_core(p, f->children[1], budget);
    }
    case Formula::Kind::forall: {
      SentenceVerdict v =
          decide_core(p, fo_exists(f->variable, fo_not(f->children[0])), budget);
      v.truth = !v.truth;
      return v;
    }
    case Formula::Kind::exists: {
      CompileResult body =
          compile_core(p, flatten_formula(p, to_nnf(f->children[0])), budget);
      SentenceVerdict v;
      if (body.closed) {
        // The quantified variable is unused; only domain non-emptiness is at
        // stake, and a domain member doubles as the witness.
        if (p.kind == PresentationKind::word) {
          auto d = word_emptiness(p.word.domain);
          v.truth = *body.closed && d.has_value();
          if (v.truth) v.word_witness = d;
        } else {
          auto d = tree_emptiness(p.tree.domain, budget);
          v.truth = *body.closed && d.has_value();
          if (v.truth) v.tree_witness = d;
        }
        return v;
      }
      if (body.vars != std::vector<std::string>{f->variable})
        throw InputError("decide_sentence applied to a formula with free variables");
      if (p.kind == PresentationKind::word) {
        auto w = word_emptiness(body.word);
        v.truth = w.has_value();
        v.word_witness = w;
      } else {
        auto w = tree_emptiness(body.tree, budget);
        v.truth = w.has_value();
        v.tree_witness = w;
      }
      return v;
    }
    case Formula::Kind::atom: {
      // Variable-free atom (constant terms only): flattening turns it into a
      // closed existential block whose truth the compiler reports directly.
      CompileResult r = compile_core(p, flatten_formula(p, f), budget);
      if (!r.closed) throw InputError("decide_sentence applied to a formula with free variables");
      SentenceVerdict v;
      v.truth = *r.closed;
      return v;
    }
  }
  throw InvariantError("unhandled formula kind");
}

}  // namespace

SentenceVerdict decide_sentence(const Presentation& p, const FormulaPtr& sentence,
                                const Budget& budget) {
  p.check_well_formed();
  if (!free_variables(flatten_formula(p, sentence)).empty())
    throw InputError("decide_sentence needs a closed formula");
  // Peeled at term level so that each quantifier step can push fresh
  // negations to atoms before flattening (see compile_formula).
  return decide_core(p, sentence, budget);
}

// ---------------------------------------------------------------------------
// Finite-model oracle.

const FiniteRelation* FiniteModel::find(const std::string& name) const {
  for (const auto& r : relations)
    if (r.name == name) return &r;
  return nullptr;
}

namespace {

int eval_term(const FiniteModel& m, const Term& t, const std::map<std::string, int>& env) {
  const FiniteRelation* rel = m.find(t.name);
  if (!t.application && !rel) {
    auto it = env.find(t.name);
    if (it == env.end()) throw InputError("unbound variable '" + t.name + "'");
    return it->second;
  }
  if (!rel) throw InputError("unknown symbol '" + t.name + "'");
  std::vector<int> args;
  for (const Term& a : t.args) args.push_back(eval_term(m, a, env));
  if (rel->kind == RelationKind::relation)
    throw InputError("relation '" + t.name + "' used as a term");
  std::optional<int> value;
  for (const auto& tuple : rel->tuples) {
    if (std::vector<int>(tuple.begin(), tuple.end() - 1) != args) continue;
    if (value) throw InvariantError("function graph '" + t.name + "' is not single-valued");
    value = tuple.back();
  }
  if (!value) throw InvariantError("function graph '" + t.name + "' is not total");
  return *value;
}

bool eval_formula(const FiniteModel& m, const FormulaPtr& f, std::map<std::string, int>& env) {
  switch (f->kind) {
    case Formula::Kind::atom: {
      std::vector<int> args;
      for (const Term& t : f->args) args.push_back(eval_term(m, t, env));
      if (f->relation == "eq") {
        if (args.size() != 2) throw InputError("eq expects 2 arguments");
        return args[0] == args[1];
      }
      const FiniteRelation* rel = m.find(f->relation);
      if (!rel) throw InputError("unknown relation '" + f->relation + "'");
      if (static_cast<int>(args.size()) != rel->arity)
        throw InputError("relation '" + f->relation + "' arity mismatch");
      return rel->tuples.count(args) > 0;
    }
    case Formula::Kind::negation:
      return !eval_formula(m, f->children[0], env);
    case Formula::Kind::conjunction:
      return eval_formula(m, f->children[0], env) && eval_formula(m, f->children[1], env);
    case Formula::Kind::disjunction:
      return eval_formula(m, f->children[0], env) || eval_formula(m, f->children[1], env);
    case Formula::Kind::exists:
    case Formula::Kind::forall: {
      bool universal = f->kind == Formula::Kind::forall;
      auto saved = env.find(f->variable) == env.end()
                       ? std::optional<int>{}
                       : std::optional<int>{env[f->variable]};
      bool result = universal;
      for (int v = 0; v < m.size; ++v) {
        env[f->variable] = v;
        bool b = eval_formula(m, f->children[0], env);
        if (universal ? !b : b) {
          result = !universal;
          break;
        }
      }
      if (saved)
        env[f->variable] = *saved;
      else
        env.erase(f->variable);
      return result;
    }
  }
  throw InvariantError("unhandled formula kind");
}

}  // namespace

bool finite_model_eval(const FiniteModel& m, const FormulaPtr& f,
                       const std::map<std::string, int>& assignment) {
  std::map<std::string, int> env = assignment;
  return eval_formula(m, f, env);
}

// ---------------------------------------------------------------------------
// Toy structures.

namespace {

/// Automaton over `letters` accepting exactly the constant words letter^ω
/// for the listed letter indices.
BuchiAutomaton constant_words_automaton(const Alphabet& base, const std::vector<int>& letters) {
  BuchiAutomaton a;
  a.alphabet = base;
  a.num_states = static_cast<int>(letters.size());
  for (int i = 0; i < a.num_states; ++i) {
    a.initial.push_back(i);
    a.accepting.push_back(i);
    a.transitions.push_back({i, letters[i], i});
  }
  a.normalize();
  return a;
}

/// Automaton over base^k accepting exactly the listed constant tuples.
BuchiAutomaton constant_tuples_automaton(const Alphabet& base, int k,
                                         const std::vector<std::vector<int>>& tuples,
                                         const Budget& budget) {
  BuchiAutomaton a;
  a.alphabet = power_alphabet(base, k, budget);
  a.num_states = static_cast<int>(tuples.size());
  for (int i = 0; i < a.num_states; ++i) {
    a.initial.push_back(i);
    a.accepting.push_back(i);
    a.transitions.push_back({i, a.alphabet.letter_of(tuples[i]), i});
  }
  a.normalize();
  return a;
}

LassoWord constant_lasso(const Alphabet& base, int letter) {
  LassoWord w;
  w.alphabet = base;
  w.loop = {letter};
  return w;
}

}  // namespace

ToyStructure toy_word_structure() {
  ToyStructure toy;
  Budget budget;
  Alphabet base = Alphabet::single({"a", "b", "c"});
  WordPresentation wp;
  wp.base = base;
  wp.domain = constant_words_automaton(base, {0, 1, 2});
  wp.equality = word_diagonal(wp.domain);
  wp.relations = {
      {"r1", 1, RelationKind::relation, constant_words_automaton(base, {0, 1})},
      {"r2", 2, RelationKind::relation,
       constant_tuples_automaton(base, 2, {{0, 1}, {1, 2}, {2, 0}}, budget)},
  };
  toy.presentation.kind = PresentationKind::word;
  toy.presentation.word = std::move(wp);
  toy.presentation.check_well_formed();

  toy.model.size = 3;
  toy.model.relations = {
      {"r1", 1, RelationKind::relation, {{0}, {1}}},
      {"r2", 2, RelationKind::relation, {{0, 1}, {1, 2}, {2, 0}}},
  };
  for (int i = 0; i < 3; ++i) toy.elements.push_back(constant_lasso(base, i));
  return toy;
}

ToyStructure toy_pair_structure() {
  ToyStructure toy;
  Alphabet base = Alphabet::single({"a", "b"});
  WordPresentation wp;
  wp.base = base;
  wp.domain = constant_words_automaton(base, {0, 1});
  wp.equality = word_diagonal(wp.domain);
  wp.relations = {
      {"mark", 1, RelationKind::relation, constant_words_automaton(base, {0})},
  };
  toy.presentation.kind = PresentationKind::word;
  toy.presentation.word = std::move(wp);
  toy.presentation.check_well_formed();

  toy.model.size = 2;
  toy.model.relations = {
      {"mark", 1, RelationKind::relation, {{0}}},
  };
  for (int i = 0; i < 2; ++i) toy.elements.push_back(constant_lasso(base, i));
  return toy;
}

}  // namespace autstr
