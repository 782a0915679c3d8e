#include "autstr/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <optional>
#include <sstream>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "autstr/difftest.hpp"
#include "autstr/fo.hpp"
#include "autstr/interpretations.hpp"
#include "autstr/io.hpp"
#include "autstr/structures.hpp"
#include "json.hpp"

namespace autstr {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

Budget budget_of(const CliOptions& options) {
  Budget b;
  b.max_states = options.budget_states;
  return b;
}

/// "fin_3" with prefix "fin_" -> 3; nullopt when the name does not match.
std::optional<int> numeric_suffix(const std::string& name, const std::string& prefix) {
  if (name.rfind(prefix, 0) != 0) return std::nullopt;
  std::string rest = name.substr(prefix.size());
  if (rest.empty() || rest.size() > 6 ||
      rest.find_first_not_of("0123456789") != std::string::npos)
    return std::nullopt;
  return std::stoi(rest);
}

std::string dump_json(const json& value) { return value.dump(2) + "\n"; }

const std::vector<std::pair<std::string, std::string>>& builder_table() {
  static const std::vector<std::pair<std::string, std::string>> table = {
      {"fin", "word automaton: bit sequences with finitely many ones"},
      {"fin_<k>", "word automaton: bit sequences with at most k ones"},
      {"T", "tree automaton: 1-labeled sets containing an infinite antichain"},
      {"T_I", "tree automaton: 1-labeled sets with no infinite antichain"},
      {"B1", "word presentation bundle: set algebra of the naturals modulo finite sets"},
      {"B2", "tree presentation bundle: tree set algebra modulo the antichain-free ideal"},
      {"chain_<n>", "regular tree: the chain of addresses l^n r^k, k >= 1"},
      {"antichain", "regular tree: the infinite antichain of addresses l^n r"},
      {"ring", "interpretation: symmetric-difference ring over a set algebra"},
      {"matrix_<n>", "interpretation: n-by-n matrix ring over the set-algebra ring (n >= 2)"},
      {"ut_<n>", "interpretation: unitriangular n-by-n matrix group (n >= 3)"},
  };
  return table;
}

}  // namespace

std::string builder_manifest() {
  std::ostringstream out;
  out << "# named builders, usable as: autstr build <name> <output-path>\n";
  out << "[builders]\n";
  for (const auto& [name, description] : builder_table())
    out << name << " = \"" << description << "\"\n";
  return out.str();
}

std::string builder_text(const std::string& name) {
  if (name == "fin") return write_buchi_text(build_fin_automaton());
  if (auto k = numeric_suffix(name, "fin_")) return write_buchi_text(build_fin_k_automaton(*k));
  if (name == "T") return write_muller_text(build_antichain_automaton());
  if (name == "T_I") return write_muller_text(build_no_antichain_automaton());
  if (auto n = numeric_suffix(name, "chain_")) return write_regular_tree_text(chain_tree(*n));
  if (name == "antichain") return write_regular_tree_text(antichain_tree());
  if (name == "ring") return write_interpretation_text(ring_interpretation());
  if (auto m = numeric_suffix(name, "matrix_"))
    return write_interpretation_text(matrix_interpretation(*m));
  if (auto u = numeric_suffix(name, "ut_"))
    return write_interpretation_text(unitriangular_interpretation(*u));
  if (name == "B1" || name == "B2")
    throw InputError("builder '" + name + "' produces a bundle directory, not a single file");
  throw InputError("unknown builder '" + name + "'; run 'build list' for the catalogue");
}

CommandResult cmd_member(const CliOptions& options, const std::string& automaton_file,
                         const std::string& witness_file) {
  Budget budget = budget_of(options);
  std::string text = read_text_file(automaton_file);
  std::string kind = sniff_format(text);
  bool member = false;
  if (kind == "buchi") {
    BuchiAutomaton a = read_buchi_text(text);
    LassoWord w = read_lasso_text(read_text_file(witness_file), a.alphabet);
    member = word_membership(a, w);
  } else if (kind == "muller") {
    MullerTreeAutomaton a = read_muller_text(text);
    RegularTree t = read_regular_tree_text(read_text_file(witness_file), a.alphabet);
    member = tree_membership(a, t, budget);
  } else if (kind == "parity") {
    ParityTreeAutomaton a = read_parity_tree_text(text);
    RegularTree t = read_regular_tree_text(read_text_file(witness_file), a.alphabet);
    member = tree_membership(a, t);
  } else {
    throw InputError("member expects an automaton file, found '" + kind + "'");
  }
  CommandResult result;
  if (options.json)
    result.output = dump_json({{"command", "member"}, {"member", member}});
  else
    result.output = std::string("member: ") + (member ? "true" : "false") + "\n";
  return result;
}

CommandResult cmd_empty(const CliOptions& options, const std::string& automaton_file,
                        const std::string& witness_out) {
  Budget budget = budget_of(options);
  std::string text = read_text_file(automaton_file);
  std::string kind = sniff_format(text);
  std::optional<std::string> witness_text;
  std::string witness_ext;
  if (kind == "buchi") {
    std::optional<LassoWord> w = word_emptiness(read_buchi_text(text));
    if (w) witness_text = write_lasso_text(*w);
    witness_ext = ".lasso";
  } else if (kind == "muller") {
    std::optional<RegularTree> t = tree_emptiness(read_muller_text(text), budget);
    if (t) witness_text = write_regular_tree_text(*t);
    witness_ext = ".rtree";
  } else if (kind == "parity") {
    std::optional<RegularTree> t = tree_emptiness(read_parity_tree_text(text));
    if (t) witness_text = write_regular_tree_text(*t);
    witness_ext = ".rtree";
  } else {
    throw InputError("empty expects an automaton file, found '" + kind + "'");
  }
  std::string path;
  if (witness_text) {
    path = witness_out.empty() ? automaton_file + ".witness" + witness_ext : witness_out;
    write_text_file(path, *witness_text);
  }
  CommandResult result;
  if (options.json) {
    json out = {{"command", "empty"}, {"empty", !witness_text.has_value()}};
    out["witness"] = witness_text ? json(path) : json(nullptr);
    result.output = dump_json(out);
  } else if (witness_text) {
    result.output = "empty: false\nwitness: " + path + "\n";
  } else {
    result.output = "empty: true\n";
  }
  return result;
}

CommandResult cmd_validate(const CliOptions& options, const std::string& bundle_dir,
                           const std::string& witness_dir) {
  Presentation p = read_presentation_bundle(bundle_dir);
  ValidationReport report =
      validate_presentation(p, options.seed, options.samples, budget_of(options));
  std::string dir = witness_dir.empty() ? bundle_dir : witness_dir;
  std::string text = write_validation_report(report, dir);
  CommandResult result;
  result.exit_code = report.all_passed() ? 0 : 1;
  if (options.json) {
    json checks = json::array();
    for (const ValidationCheck& c : report.checks) {
      json entry = {{"name", c.name},
                    {"mode", c.exact ? "exact" : "sampled"},
                    {"passed", c.passed}};
      entry["witness"] = (c.word_witness || c.tree_witness)
                             ? json(validation_witness_filename(c))
                             : json(nullptr);
      checks.push_back(std::move(entry));
    }
    result.output = dump_json({{"command", "validate"},
                               {"seed", report.seed},
                               {"samples", report.samples},
                               {"checks", checks},
                               {"passed", report.all_passed()}});
  } else {
    result.output = text;
  }
  return result;
}

CommandResult cmd_decide(const CliOptions& options, const std::string& bundle_dir,
                         const std::string& sentence, const std::string& witness_out) {
  Presentation p = read_presentation_bundle(bundle_dir);
  std::string formula_text = fs::exists(sentence) ? read_text_file(sentence) : sentence;
  FormulaPtr f = parse_formula(formula_text);
  SentenceVerdict verdict = decide_sentence(p, f, budget_of(options));
  std::string witness_path;
  if (!witness_out.empty() && (verdict.word_witness || verdict.tree_witness)) {
    witness_path = witness_out;
    write_text_file(witness_path, verdict.word_witness
                                      ? write_lasso_text(*verdict.word_witness)
                                      : write_regular_tree_text(*verdict.tree_witness));
  }
  CommandResult result;
  if (options.json) {
    json out = {{"command", "decide"}, {"verdict", verdict.truth}};
    out["witness"] = witness_path.empty() ? json(nullptr) : json(witness_path);
    result.output = dump_json(out);
  } else {
    result.output = std::string("verdict: ") + (verdict.truth ? "true" : "false") + "\n";
    if (!witness_path.empty()) result.output += "witness: " + witness_path + "\n";
  }
  return result;
}

CommandResult cmd_build(const CliOptions& options, const std::string& name,
                        const std::string& output_path) {
  CommandResult result;
  if (name == "list") {
    if (options.json) {
      json builders = json::object();
      for (const auto& [builder, description] : builder_table()) builders[builder] = description;
      result.output = dump_json({{"command", "build"}, {"builders", builders}});
    } else {
      result.output = builder_manifest();
    }
    return result;
  }
  if (output_path.empty()) throw InputError("build requires an output path");
  if (name == "B1") {
    write_presentation_bundle(build_B1_presentation(), output_path);
  } else if (name == "B2") {
    write_presentation_bundle(build_B2_presentation(), output_path);
  } else {
    write_text_file(output_path, builder_text(name));
  }
  if (options.json)
    result.output = dump_json({{"command", "build"}, {"name", name}, {"output", output_path}});
  else
    result.output = "built " + name + ": " + output_path + "\n";
  return result;
}

CommandResult cmd_difftest(const CliOptions& options, const std::string& suite) {
  DiffReport report = run_suite(suite, options.seed, options.count, budget_of(options));
  CommandResult result;
  result.exit_code = report.ok() ? 0 : 1;
  if (options.json) {
    result.output = dump_json({{"command", "difftest"},
                               {"suite", report.suite},
                               {"seed", report.seed},
                               {"cases", report.cases},
                               {"failures", report.failed},
                               {"failing", report.failures},
                               {"passed", report.ok()}});
  } else {
    result.output = report.to_text();
  }
  return result;
}

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"automaton-presented structures: membership, emptiness, validation and "
               "first-order decisions"};
  app.require_subcommand(1);

  CliOptions options;
  std::string format = "text";
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", options.seed, "seed for sampled checks and random suites");
    sub->add_option("--budget", options.budget_states,
                    "maximum states any construction may allocate");
    sub->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"text", "json"}));
  };

  std::string automaton_file, witness_file, witness_out, bundle_dir, sentence, name, output_path,
      suite, witness_dir;

  CLI::App* member = app.add_subcommand("member", "membership of a lasso or regular tree");
  member->add_option("automaton", automaton_file, "automaton file")->required();
  member->add_option("witness", witness_file, "lasso or regular-tree file")->required();
  add_common(member);

  CLI::App* empty = app.add_subcommand("empty", "language emptiness with a verified witness");
  empty->add_option("automaton", automaton_file, "automaton file")->required();
  empty->add_option("--witness", witness_out, "path for the witness file");
  add_common(empty);

  CLI::App* validate = app.add_subcommand("validate", "equivalence/congruence presentation checks");
  validate->add_option("bundle", bundle_dir, "presentation bundle directory")->required();
  validate->add_option("--samples", options.samples, "tuples per sampled check");
  validate->add_option("--witness-dir", witness_dir, "directory for counterexample files");
  add_common(validate);

  CLI::App* decide = app.add_subcommand("decide", "decide a first-order sentence");
  decide->add_option("bundle", bundle_dir, "presentation bundle directory")->required();
  decide->add_option("sentence", sentence, "formula file or inline formula text")->required();
  decide->add_option("--witness", witness_out, "path for the quantifier witness");
  add_common(decide);

  CLI::App* build = app.add_subcommand("build", "materialize a named construction");
  build->add_option("name", name, "builder name, or 'list'")->required();
  build->add_option("output", output_path, "output file or bundle directory");
  add_common(build);

  CLI::App* difftest = app.add_subcommand("difftest", "differential-testing suites");
  difftest->add_option("suite", suite, "complement, parity, antichain or fo")->required();
  difftest->add_option("--count", options.count, "number of cases (0 = suite default)");
  add_common(difftest);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  options.json = format == "json";

  try {
    CommandResult result;
    if (member->parsed()) result = cmd_member(options, automaton_file, witness_file);
    else if (empty->parsed()) result = cmd_empty(options, automaton_file, witness_out);
    else if (validate->parsed()) result = cmd_validate(options, bundle_dir, witness_dir);
    else if (decide->parsed()) result = cmd_decide(options, bundle_dir, sentence, witness_out);
    else if (build->parsed()) result = cmd_build(options, name, output_path);
    else if (difftest->parsed()) result = cmd_difftest(options, suite);
    std::fputs(result.output.c_str(), stdout);
    return result.exit_code;
  } catch (const Error& e) {
    if (options.json) {
      std::fputs(dump_json({{"error", e.what()}}).c_str(), stdout);
    } else {
      std::fprintf(stderr, "error: %s\n", e.what());
    }
    return 2;
  }
}

}  // namespace autstr
