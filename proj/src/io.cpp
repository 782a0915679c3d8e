#include "autstr/io.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "autstr/fo.hpp"
#include "json.hpp"

namespace autstr {

namespace {

struct Line {
  int number = 0;  // 1-based
  std::string key;
  std::string value;  // trimmed remainder after "key:" (or whole line if no colon key)
};

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

/// Splits on commas at parenthesis depth zero, so tuple letter names survive.
std::vector<std::string> split_top_commas(const std::string& s, int line) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char ch : s) {
    if (ch == '(') ++depth;
    if (ch == ')') {
      --depth;
      if (depth < 0) throw ParseError(line, "unbalanced ')' in letter list");
    }
    if (ch == ',' && depth == 0) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  if (depth != 0) throw ParseError(line, "unbalanced '(' in letter list");
  if (!trim(cur).empty() || !out.empty()) out.push_back(trim(cur));
  return out;
}

/// Cursor over the non-blank lines of a text file.
struct LineReader {
  std::vector<Line> lines;
  std::size_t pos = 0;

  explicit LineReader(const std::string& text) {
    std::istringstream in(text);
    std::string raw;
    int number = 0;
    while (std::getline(in, raw)) {
      ++number;
      std::string t = trim(raw);
      if (t.empty()) continue;
      Line line;
      line.number = number;
      std::size_t colon = t.find(':');
      if (colon == std::string::npos) {
        line.key = t;
      } else {
        line.key = trim(t.substr(0, colon));
        line.value = trim(t.substr(colon + 1));
      }
      lines.push_back(std::move(line));
    }
  }

  bool done() const { return pos >= lines.size(); }
  const Line& peek() const {
    if (done()) throw ParseError(lines.empty() ? 1 : lines.back().number, "unexpected end of file");
    return lines[pos];
  }
  Line next() {
    Line line = peek();
    ++pos;
    return line;
  }
  Line expect(const std::string& key) {
    Line line = next();
    if (line.key != key)
      throw ParseError(line.number, "expected '" + key + "', found '" + line.key + "'");
    return line;
  }
};

int parse_int(const std::string& tok, int line) {
  try {
    std::size_t used = 0;
    int v = std::stoi(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw ParseError(line, "expected an integer, found '" + tok + "'");
  }
}

std::vector<StateId> parse_state_list(const std::string& value, int line) {
  std::vector<StateId> out;
  for (const std::string& tok : split_ws(value)) out.push_back(parse_int(tok, line));
  return out;
}

std::string join_states(const std::vector<StateId>& states) {
  std::string out;
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(states[i]);
  }
  return out;
}

/// Tuple letter name -> component tokens ("(a,b)" -> {a,b}; "a" -> {a}).
std::vector<std::string> name_components(const std::string& name, int line) {
  if (name.empty()) throw ParseError(line, "empty letter name");
  if (name.front() != '(') return {name};
  if (name.back() != ')') throw ParseError(line, "malformed tuple letter '" + name + "'");
  return split_top_commas(name.substr(1, name.size() - 2), line);
}

/// Rebuilds the track structure from the full letter list.  Letters are
/// enumerated in mixed radix with track 0 most significant, so the distinct
/// components of each position, in order of first appearance, are exactly the
/// track letters in index order.
Alphabet alphabet_from_names(const std::vector<std::string>& names, int line) {
  if (names.empty()) throw ParseError(line, "empty alphabet");
  std::size_t arity = name_components(names[0], line).size();
  std::vector<std::vector<std::string>> tracks(arity);
  std::vector<std::vector<std::string>> tuples;
  tuples.reserve(names.size());
  for (const std::string& name : names) {
    std::vector<std::string> comps = name_components(name, line);
    if (comps.size() != arity)
      throw ParseError(line, "letter '" + name + "' has mixed tuple width");
    for (std::size_t t = 0; t < arity; ++t) {
      auto& track = tracks[t];
      if (std::find(track.begin(), track.end(), comps[t]) == track.end())
        track.push_back(comps[t]);
    }
    tuples.push_back(std::move(comps));
  }
  Alphabet alphabet;
  try {
    alphabet = Alphabet(tracks);
  } catch (const InputError& e) {
    throw ParseError(line, e.what());
  }
  if (alphabet.size() != static_cast<int>(names.size()))
    throw ParseError(line, "letter list is not a full mixed-radix enumeration");
  for (std::size_t i = 0; i < names.size(); ++i)
    if (alphabet.letter_name(static_cast<int>(i)) != names[i])
      throw ParseError(line, "letter '" + names[i] + "' out of enumeration order");
  return alphabet;
}

std::string alphabet_line(const Alphabet& alphabet) {
  std::string out = "alphabet: ";
  for (int i = 0; i < alphabet.size(); ++i) {
    if (i) out += ',';
    out += alphabet.letter_name(i);
  }
  return out;
}

int parse_letter(const Alphabet& alphabet, const std::string& tok, int line) {
  int letter = alphabet.find_letter(tok);
  if (letter < 0) throw ParseError(line, "unknown letter '" + tok + "'");
  return letter;
}

/// Shared "alphabet:, states:, initial:" prologue of the automaton formats.
struct Prologue {
  Alphabet alphabet;
  int num_states = 0;
};

Prologue read_prologue(LineReader& reader) {
  Prologue p;
  Line al = reader.expect("alphabet");
  p.alphabet = alphabet_from_names(split_top_commas(al.value, al.number), al.number);
  Line st = reader.expect("states");
  p.num_states = parse_int(trim(st.value), st.number);
  return p;
}

}  // namespace

std::string write_buchi_text(const BuchiAutomaton& a) {
  std::ostringstream out;
  out << "buchi\n" << alphabet_line(a.alphabet) << "\n";
  out << "states: " << a.num_states << "\n";
  out << "initial: " << join_states(a.initial) << "\n";
  out << "accepting: " << join_states(a.accepting) << "\n";
  for (const BuchiTransition& t : a.transitions)
    out << "trans: " << t.from << ' ' << a.alphabet.letter_name(t.letter) << ' ' << t.to << "\n";
  return out.str();
}

BuchiAutomaton read_buchi_text(const std::string& text) {
  LineReader reader(text);
  Line header = reader.next();
  if (header.key != "buchi") throw ParseError(header.number, "expected header 'buchi'");
  BuchiAutomaton a;
  Prologue p = read_prologue(reader);
  a.alphabet = p.alphabet;
  a.num_states = p.num_states;
  Line init = reader.expect("initial");
  a.initial = parse_state_list(init.value, init.number);
  Line acc = reader.expect("accepting");
  a.accepting = parse_state_list(acc.value, acc.number);
  while (!reader.done()) {
    Line line = reader.expect("trans");
    std::vector<std::string> toks = split_ws(line.value);
    if (toks.size() != 3) throw ParseError(line.number, "expected 'trans: q a q''");
    a.transitions.push_back({parse_int(toks[0], line.number),
                             parse_letter(a.alphabet, toks[1], line.number),
                             parse_int(toks[2], line.number)});
  }
  a.normalize();
  try {
    a.check_well_formed();
  } catch (const InputError& e) {
    throw ParseError(header.number, e.what());
  }
  return a;
}

namespace {

template <typename Automaton>
void write_tree_transitions(std::ostringstream& out, const Automaton& a) {
  for (const TreeTransition& t : a.transitions)
    out << "trans: " << t.from << ' ' << a.alphabet.letter_name(t.letter) << ' ' << t.left << ' '
        << t.right << "\n";
}

template <typename Automaton>
void read_tree_transition(Automaton& a, const Line& line) {
  std::vector<std::string> toks = split_ws(line.value);
  if (toks.size() != 4) throw ParseError(line.number, "expected 'trans: q a ql qr'");
  a.transitions.push_back({parse_int(toks[0], line.number),
                           parse_letter(a.alphabet, toks[1], line.number),
                           parse_int(toks[2], line.number), parse_int(toks[3], line.number)});
}

std::vector<StateId> parse_state_set(const std::string& tok, int line) {
  if (tok.size() < 2 || tok.front() != '{' || tok.back() != '}')
    throw ParseError(line, "expected a state set '{q1,q2}', found '" + tok + "'");
  std::vector<StateId> out;
  std::string inner = tok.substr(1, tok.size() - 2);
  if (trim(inner).empty()) return out;
  std::string cur;
  std::istringstream in(inner);
  while (std::getline(in, cur, ',')) out.push_back(parse_int(trim(cur), line));
  return out;
}

}  // namespace

std::string write_muller_text(const MullerTreeAutomaton& a) {
  std::ostringstream out;
  out << "muller\n" << alphabet_line(a.alphabet) << "\n";
  out << "states: " << a.num_states << "\n";
  out << "initial: " << a.initial << "\n";
  write_tree_transitions(out, a);
  out << "acc:";
  for (const auto& set : a.designated) {
    out << " {";
    for (std::size_t i = 0; i < set.size(); ++i) {
      if (i) out << ',';
      out << set[i];
    }
    out << "}";
  }
  out << "\n";
  return out.str();
}

MullerTreeAutomaton read_muller_text(const std::string& text) {
  LineReader reader(text);
  Line header = reader.next();
  if (header.key != "muller") throw ParseError(header.number, "expected header 'muller'");
  MullerTreeAutomaton a;
  Prologue p = read_prologue(reader);
  a.alphabet = p.alphabet;
  a.num_states = p.num_states;
  Line init = reader.expect("initial");
  a.initial = parse_int(trim(init.value), init.number);
  bool saw_acc = false;
  while (!reader.done()) {
    Line line = reader.next();
    if (line.key == "trans") {
      if (saw_acc) throw ParseError(line.number, "'trans' after 'acc'");
      read_tree_transition(a, line);
    } else if (line.key == "acc") {
      if (saw_acc) throw ParseError(line.number, "duplicate 'acc' line");
      saw_acc = true;
      for (const std::string& tok : split_ws(line.value))
        a.designated.push_back(parse_state_set(tok, line.number));
    } else {
      throw ParseError(line.number, "expected 'trans' or 'acc', found '" + line.key + "'");
    }
  }
  if (!saw_acc) throw ParseError(header.number, "missing 'acc' line");
  a.normalize();
  try {
    a.check_well_formed();
  } catch (const InputError& e) {
    throw ParseError(header.number, e.what());
  }
  return a;
}

std::string write_parity_tree_text(const ParityTreeAutomaton& a) {
  std::ostringstream out;
  out << "parity\n" << alphabet_line(a.alphabet) << "\n";
  out << "states: " << a.num_states << "\n";
  out << "initial: " << a.initial << "\n";
  write_tree_transitions(out, a);
  for (int q = 0; q < a.num_states; ++q) out << "prio: " << q << ' ' << a.priority[q] << "\n";
  return out.str();
}

ParityTreeAutomaton read_parity_tree_text(const std::string& text) {
  LineReader reader(text);
  Line header = reader.next();
  if (header.key != "parity") throw ParseError(header.number, "expected header 'parity'");
  ParityTreeAutomaton a;
  Prologue p = read_prologue(reader);
  a.alphabet = p.alphabet;
  a.num_states = p.num_states;
  Line init = reader.expect("initial");
  a.initial = parse_int(trim(init.value), init.number);
  a.priority.assign(a.num_states, -1);
  while (!reader.done()) {
    Line line = reader.next();
    if (line.key == "trans") {
      read_tree_transition(a, line);
    } else if (line.key == "prio") {
      std::vector<std::string> toks = split_ws(line.value);
      if (toks.size() != 2) throw ParseError(line.number, "expected 'prio: q p'");
      int q = parse_int(toks[0], line.number);
      if (q < 0 || q >= a.num_states) throw ParseError(line.number, "priority for unknown state");
      if (a.priority[q] >= 0) throw ParseError(line.number, "duplicate priority for one state");
      a.priority[q] = parse_int(toks[1], line.number);
    } else {
      throw ParseError(line.number, "expected 'trans' or 'prio', found '" + line.key + "'");
    }
  }
  for (int q = 0; q < a.num_states; ++q)
    if (a.priority[q] < 0) throw ParseError(header.number, "missing priority for a state");
  a.normalize();
  try {
    a.check_well_formed();
  } catch (const InputError& e) {
    throw ParseError(header.number, e.what());
  }
  return a;
}

std::string write_lasso_text(const LassoWord& w) {
  std::string out;
  for (std::size_t i = 0; i < w.stem.size(); ++i) {
    if (i) out += ' ';
    out += w.alphabet.letter_name(w.stem[i]);
  }
  out += '|';
  for (std::size_t i = 0; i < w.loop.size(); ++i) {
    if (i) out += ' ';
    out += w.alphabet.letter_name(w.loop[i]);
  }
  out += '\n';
  return out;
}

LassoWord read_lasso_text(const std::string& text, const Alphabet& alphabet) {
  std::string t = trim(text);
  std::size_t bar = t.find('|');
  if (bar == std::string::npos) throw ParseError(1, "lasso must contain 'stem|loop'");
  if (t.find('|', bar + 1) != std::string::npos) throw ParseError(1, "more than one '|' in lasso");
  LassoWord w;
  w.alphabet = alphabet;
  for (const std::string& tok : split_ws(t.substr(0, bar)))
    w.stem.push_back(parse_letter(alphabet, tok, 1));
  for (const std::string& tok : split_ws(t.substr(bar + 1)))
    w.loop.push_back(parse_letter(alphabet, tok, 1));
  try {
    w.check_well_formed();
  } catch (const InputError& e) {
    throw ParseError(1, e.what());
  }
  return w;
}

std::string write_regular_tree_text(const RegularTree& t) {
  std::ostringstream out;
  out << "rtree\n";
  out << "root: " << t.root << "\n";
  for (int n = 0; n < t.num_nodes; ++n)
    out << "node: " << n << ' ' << t.alphabet.letter_name(t.label[n]) << ' ' << t.left[n] << ' '
        << t.right[n] << "\n";
  return out.str();
}

RegularTree read_regular_tree_text(const std::string& text, const Alphabet& alphabet) {
  LineReader reader(text);
  Line header = reader.next();
  if (header.key != "rtree") throw ParseError(header.number, "expected header 'rtree'");
  Line root = reader.expect("root");
  RegularTree t;
  t.alphabet = alphabet;
  t.root = parse_int(trim(root.value), root.number);
  struct Row {
    int label, left, right;
  };
  std::vector<Row> rows;
  while (!reader.done()) {
    Line line = reader.expect("node");
    std::vector<std::string> toks = split_ws(line.value);
    if (toks.size() != 4) throw ParseError(line.number, "expected 'node: id label left right'");
    int id = parse_int(toks[0], line.number);
    if (id != static_cast<int>(rows.size()))
      throw ParseError(line.number, "node ids must appear in order 0,1,...");
    rows.push_back({parse_letter(alphabet, toks[1], line.number), parse_int(toks[2], line.number),
                    parse_int(toks[3], line.number)});
  }
  t.num_nodes = static_cast<int>(rows.size());
  for (const Row& r : rows) {
    t.label.push_back(r.label);
    t.left.push_back(r.left);
    t.right.push_back(r.right);
  }
  try {
    t.check_well_formed();
  } catch (const InputError& e) {
    throw ParseError(header.number, e.what());
  }
  return t;
}

namespace {

const char* kind_name(RelationKind kind) {
  switch (kind) {
    case RelationKind::relation: return "relation";
    case RelationKind::function_graph: return "function_graph";
    case RelationKind::constant_graph: return "constant_graph";
  }
  return "relation";
}

RelationKind kind_of_name(const std::string& name, int line) {
  if (name == "relation") return RelationKind::relation;
  if (name == "function_graph") return RelationKind::function_graph;
  if (name == "constant_graph") return RelationKind::constant_graph;
  throw ParseError(line, "unknown relation kind '" + name + "'");
}

}  // namespace

std::string write_interpretation_text(const Interpretation& i) {
  std::ostringstream out;
  out << "interpretation\n";
  out << "dimension: " << i.dimension << "\n";
  out << "domain: " << format_formula(i.domain) << "\n";
  out << "equality: " << format_formula(i.equality) << "\n";
  for (const InterpretedSymbol& s : i.symbols) {
    out << "symbol: " << s.name << ' ' << s.arity << ' ' << kind_name(s.kind) << "\n";
    out << "formula: " << format_formula(s.formula) << "\n";
  }
  return out.str();
}

Interpretation read_interpretation_text(const std::string& text) {
  LineReader reader(text);
  Line header = reader.next();
  if (header.key != "interpretation")
    throw ParseError(header.number, "expected header 'interpretation'");
  Interpretation i;
  Line dim = reader.expect("dimension");
  i.dimension = parse_int(trim(dim.value), dim.number);
  auto parse_line_formula = [](const Line& line) {
    try {
      return parse_formula(line.value);
    } catch (const ParseError& e) {
      throw ParseError(line.number, e.what());
    }
  };
  Line dom = reader.expect("domain");
  i.domain = parse_line_formula(dom);
  Line eq = reader.expect("equality");
  i.equality = parse_line_formula(eq);
  while (!reader.done()) {
    Line sym = reader.expect("symbol");
    std::vector<std::string> toks = split_ws(sym.value);
    if (toks.size() != 3) throw ParseError(sym.number, "expected 'symbol: name arity kind'");
    InterpretedSymbol s;
    s.name = toks[0];
    s.arity = parse_int(toks[1], sym.number);
    s.kind = kind_of_name(toks[2], sym.number);
    Line formula = reader.expect("formula");
    s.formula = parse_line_formula(formula);
    i.symbols.push_back(std::move(s));
  }
  return i;
}

std::string sniff_format(const std::string& text) {
  LineReader reader(text);
  if (reader.done()) throw InputError("empty file");
  std::string key = reader.peek().key;
  if (key == "buchi" || key == "muller" || key == "parity" || key == "rtree" ||
      key == "interpretation")
    return key;
  throw InputError("unknown file header '" + key + "'");
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open file: " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot open file for writing: " + path);
  out << content;
  if (!out) throw InputError("write failed: " + path);
}

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string safe_file_stem(const std::string& name) {
  std::string out;
  for (char ch : name)
    out += (std::isalnum(static_cast<unsigned char>(ch)) || ch == '_') ? ch : '_';
  return out.empty() ? std::string("unnamed") : out;
}

}  // namespace

void write_presentation_bundle(const Presentation& p, const std::string& directory) {
  p.check_well_formed();
  fs::create_directories(directory);
  json manifest;
  const bool word = p.kind == PresentationKind::word;
  const char* ext = word ? ".buchi" : ".muller";
  manifest["kind"] = word ? "word" : "tree";
  auto emit = [&](const std::string& file, const std::string& text) {
    write_text_file((fs::path(directory) / file).string(), text);
  };
  if (word) {
    emit(std::string("domain") + ext, write_buchi_text(p.word.domain));
    emit(std::string("equality") + ext, write_buchi_text(p.word.equality));
  } else {
    emit(std::string("domain") + ext, write_muller_text(p.tree.domain));
    emit(std::string("equality") + ext, write_muller_text(p.tree.equality));
  }
  manifest["domain"] = {{"file", std::string("domain") + ext}, {"arity", 1}};
  manifest["equality"] = {{"file", std::string("equality") + ext}, {"arity", 2}};
  manifest["relations"] = json::array();
  auto add_relation = [&](const std::string& name, int arity, RelationKind kind,
                          const std::string& text) {
    std::string file = "rel_" + safe_file_stem(name) + ext;
    emit(file, text);
    manifest["relations"].push_back(
        {{"name", name}, {"arity", arity}, {"kind", kind_name(kind)}, {"file", file}});
  };
  if (word) {
    for (const WordRelation& r : p.word.relations)
      add_relation(r.name, r.arity, r.kind, write_buchi_text(r.automaton));
  } else {
    for (const TreeRelation& r : p.tree.relations)
      add_relation(r.name, r.arity, r.kind, write_muller_text(r.automaton));
    manifest["complements"] = json::array();
    for (const auto& [name, automaton] : p.tree.complements) {
      std::string file = "comp_" + safe_file_stem(name) + ext;
      emit(file, write_muller_text(automaton));
      manifest["complements"].push_back({{"name", name}, {"file", file}});
    }
  }
  emit("manifest.json", manifest.dump(2) + "\n");
}

Presentation read_presentation_bundle(const std::string& directory) {
  fs::path dir(directory);
  json manifest;
  try {
    manifest = json::parse(read_text_file((dir / "manifest.json").string()));
  } catch (const json::exception& e) {
    throw InputError(std::string("bad manifest.json: ") + e.what());
  }
  auto load = [&](const json& entry) { return read_text_file((dir / entry.at("file").get<std::string>()).string()); };
  Presentation p;
  try {
    std::string kind = manifest.at("kind").get<std::string>();
    if (kind == "word") {
      p.kind = PresentationKind::word;
      p.word.domain = read_buchi_text(load(manifest.at("domain")));
      p.word.equality = read_buchi_text(load(manifest.at("equality")));
      p.word.base = p.word.domain.alphabet;
      for (const json& entry : manifest.at("relations")) {
        WordRelation r;
        r.name = entry.at("name").get<std::string>();
        r.arity = entry.at("arity").get<int>();
        r.kind = kind_of_name(entry.at("kind").get<std::string>(), 1);
        r.automaton = read_buchi_text(load(entry));
        p.word.relations.push_back(std::move(r));
      }
    } else if (kind == "tree") {
      p.kind = PresentationKind::tree;
      p.tree.domain = read_muller_text(load(manifest.at("domain")));
      p.tree.equality = read_muller_text(load(manifest.at("equality")));
      p.tree.base = p.tree.domain.alphabet;
      for (const json& entry : manifest.at("relations")) {
        TreeRelation r;
        r.name = entry.at("name").get<std::string>();
        r.arity = entry.at("arity").get<int>();
        r.kind = kind_of_name(entry.at("kind").get<std::string>(), 1);
        r.automaton = read_muller_text(load(entry));
        p.tree.relations.push_back(std::move(r));
      }
      if (manifest.contains("complements"))
        for (const json& entry : manifest.at("complements"))
          p.tree.complements[entry.at("name").get<std::string>()] =
              read_muller_text(load(entry));
    } else {
      throw InputError("manifest kind must be 'word' or 'tree'");
    }
  } catch (const json::exception& e) {
    throw InputError(std::string("bad manifest.json: ") + e.what());
  }
  p.check_well_formed();
  return p;
}

std::string validation_witness_filename(const ValidationCheck& check) {
  return "witness-" + safe_file_stem(check.name) + (check.word_witness ? ".lasso" : ".rtree");
}

std::string write_validation_report(const ValidationReport& report, const std::string& directory) {
  std::ostringstream out;
  out << "validation seed=" << report.seed << " samples=" << report.samples << "\n";
  for (const ValidationCheck& c : report.checks) {
    out << c.name << ": " << (c.exact ? "exact" : "sampled") << "-"
        << (c.passed ? "pass" : "fail");
    if (c.word_witness || c.tree_witness) {
      if (directory.empty()) {
        out << " (counterexample attached)";
      } else {
        fs::create_directories(directory);
        std::string file = validation_witness_filename(c);
        write_text_file((fs::path(directory) / file).string(),
                        c.word_witness ? write_lasso_text(*c.word_witness)
                                       : write_regular_tree_text(*c.tree_witness));
        out << ' ' << file;
      }
    }
    out << "\n";
  }
  out << (report.all_passed() ? "result: pass" : "result: fail") << "\n";
  return out.str();
}

}  // namespace autstr
