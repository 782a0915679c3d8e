#pragma once

#include <string>

#include "autstr/buchi.hpp"
#include "autstr/interpretations.hpp"
#include "autstr/presentation.hpp"
#include "autstr/tree.hpp"

namespace autstr {

/// Line-based text formats.  Every writer/reader pair round-trips; readers
/// raise ParseError carrying a 1-based line number.  Letters always appear by
/// name ("(a,b)" tuples for multi-track alphabets); automaton files embed
/// their alphabet, while lassos and regular trees are read against the
/// alphabet of the automaton they accompany.

std::string write_buchi_text(const BuchiAutomaton& a);
BuchiAutomaton read_buchi_text(const std::string& text);

std::string write_muller_text(const MullerTreeAutomaton& a);
MullerTreeAutomaton read_muller_text(const std::string& text);

std::string write_parity_tree_text(const ParityTreeAutomaton& a);
ParityTreeAutomaton read_parity_tree_text(const std::string& text);

std::string write_lasso_text(const LassoWord& w);
LassoWord read_lasso_text(const std::string& text, const Alphabet& alphabet);

std::string write_regular_tree_text(const RegularTree& t);
RegularTree read_regular_tree_text(const std::string& text, const Alphabet& alphabet);

std::string write_interpretation_text(const Interpretation& i);
Interpretation read_interpretation_text(const std::string& text);

/// First word of the first non-blank line: "buchi", "muller", "parity" or
/// "rtree".  InputError on anything else.
std::string sniff_format(const std::string& text);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

/// A presentation bundle is a directory holding one automaton file per
/// component plus manifest.json naming the files, arities and relation kinds.
void write_presentation_bundle(const Presentation& p, const std::string& directory);
Presentation read_presentation_bundle(const std::string& directory);

/// Serializes the report as returned by ValidationReport::to_text and, for
/// each failed check with a counterexample, writes the witness into
/// `directory` (witness-<check>.lasso / .rtree) and appends the file name to
/// the check's line.  With an empty directory no files are written.
std::string write_validation_report(const ValidationReport& report, const std::string& directory);

/// File name (without directory) under which write_validation_report stores
/// the check's counterexample.
std::string validation_witness_filename(const ValidationCheck& check);

}  // namespace autstr
