#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "autstr/cli.hpp"
#include "autstr/difftest.hpp"
#include "autstr/fo.hpp"
#include "autstr/io.hpp"
#include "autstr/structures.hpp"

namespace py = pybind11;

namespace {

using namespace autstr;

Presentation presentation_by_name(const std::string& name) {
  if (name == "B1") return build_B1_presentation();
  if (name == "B2") return build_B2_presentation();
  if (name == "toy") return toy_word_structure().presentation;
  throw InputError("unknown presentation '" + name + "' (expected B1, B2 or toy)");
}

Budget budget_of(std::size_t max_states) {
  Budget b;
  if (max_states) b.max_states = max_states;
  return b;
}

}  // namespace

PYBIND11_MODULE(_autstr, m) {
  m.doc() = "automaton-presented structures: membership, emptiness, presentation validation "
            "and first-order decisions, exchanged as the library's text formats";

  py::register_exception<Error>(m, "Error");
  py::register_exception<InputError>(m, "InputError");
  py::register_exception<CapacityError>(m, "CapacityError");
  py::register_exception<InvariantError>(m, "InvariantError");
  py::register_exception<UnsupportedFragmentError>(m, "UnsupportedFragmentError");

  m.def("node_index", &node_index, py::arg("address"),
        "Index of a tree address in the length-then-lexicographic enumeration.");
  m.def("node_unindex", &node_unindex, py::arg("index"),
        "Tree address at the given enumeration index.");

  m.def(
      "buchi_member",
      [](const std::string& automaton, const std::string& lasso) {
        BuchiAutomaton a = read_buchi_text(automaton);
        return word_membership(a, read_lasso_text(lasso, a.alphabet));
      },
      py::arg("automaton"), py::arg("lasso"),
      "Does the serialized automaton accept the serialized lasso word?");

  m.def(
      "buchi_empty",
      [](const std::string& automaton) -> py::object {
        std::optional<LassoWord> w = word_emptiness(read_buchi_text(automaton));
        if (!w) return py::none();
        return py::str(write_lasso_text(*w));
      },
      py::arg("automaton"),
      "None when the language is empty, otherwise a serialized witness lasso.");

  m.def(
      "tree_member",
      [](const std::string& automaton, const std::string& tree, std::size_t budget) {
        std::string kind = sniff_format(automaton);
        if (kind == "muller") {
          MullerTreeAutomaton a = read_muller_text(automaton);
          return tree_membership(a, read_regular_tree_text(tree, a.alphabet), budget_of(budget));
        }
        if (kind == "parity") {
          ParityTreeAutomaton a = read_parity_tree_text(automaton);
          return tree_membership(a, read_regular_tree_text(tree, a.alphabet));
        }
        throw InputError("tree_member expects a tree automaton, found '" + kind + "'");
      },
      py::arg("automaton"), py::arg("tree"), py::arg("budget") = 0,
      "Does the serialized tree automaton accept the serialized regular tree?");

  m.def(
      "tree_empty",
      [](const std::string& automaton, std::size_t budget) -> py::object {
        std::string kind = sniff_format(automaton);
        std::optional<RegularTree> t;
        if (kind == "muller")
          t = tree_emptiness(read_muller_text(automaton), budget_of(budget));
        else if (kind == "parity")
          t = tree_emptiness(read_parity_tree_text(automaton));
        else
          throw InputError("tree_empty expects a tree automaton, found '" + kind + "'");
        if (!t) return py::none();
        return py::str(write_regular_tree_text(*t));
      },
      py::arg("automaton"), py::arg("budget") = 0,
      "None when the language is empty, otherwise a serialized witness tree.");

  m.def(
      "antichain_classify",
      [](const std::string& tree) {
        RegularTree t = read_regular_tree_text(tree, Alphabet::binary());
        AntichainVerdict v = antichain_oracle(t);
        return py::make_tuple(v.infinite, v.width);
      },
      py::arg("tree"),
      "(infinite, width) of the maximum antichain in the 1-labeled set of a binary tree.");

  m.def("build", &builder_text, py::arg("name"),
        "Serialized text of a named construction (see the CLI builder list).");

  m.def(
      "validate",
      [](const std::string& name, std::uint64_t seed, int samples, std::size_t budget) {
        ValidationReport report =
            validate_presentation(presentation_by_name(name), seed, samples, budget_of(budget));
        return write_validation_report(report, "");
      },
      py::arg("name"), py::arg("seed") = 1, py::arg("samples") = 200, py::arg("budget") = 0,
      "Equivalence/congruence validation report for a named presentation.");

  m.def(
      "decide",
      [](const std::string& name, const std::string& sentence, std::size_t budget) {
        return decide_sentence(presentation_by_name(name), parse_formula(sentence),
                               budget_of(budget))
            .truth;
      },
      py::arg("name"), py::arg("sentence"), py::arg("budget") = 0,
      "Truth value of a first-order sentence over a named presentation.");

  m.def(
      "difftest",
      [](const std::string& suite, std::uint64_t seed, int count, std::size_t budget) {
        return run_suite(suite, seed, count, budget_of(budget)).to_text();
      },
      py::arg("suite"), py::arg("seed") = 1, py::arg("count") = 0, py::arg("budget") = 0,
      "Text report of one differential-testing suite.");
}
