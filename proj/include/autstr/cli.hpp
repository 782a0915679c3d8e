#pragma once

#include <cstdint>
#include <string>

namespace autstr {

/// Options shared by every subcommand.
struct CliOptions {
  std::uint64_t seed = 1;
  std::size_t budget_states = 1'000'000;
  bool json = false;  // --format json instead of text
  int samples = 200;  // sampled validation checks
  int count = 0;      // difftest cases; 0 picks the suite default
};

/// Result of one subcommand: exit code 0 (ok), 1 (a check failed) or 2
/// (error), plus the full text to print.  The cmd_* functions raise the
/// library error types; run_cli turns those into exit code 2.
struct CommandResult {
  int exit_code = 0;
  std::string output;
};

/// Membership of a serialized lasso (word automata) or regular tree (tree
/// automata) in a serialized automaton.
CommandResult cmd_member(const CliOptions& options, const std::string& automaton_file,
                         const std::string& witness_file);

/// Emptiness; on a non-empty language writes the witness next to the input
/// (or to witness_out when given).
CommandResult cmd_empty(const CliOptions& options, const std::string& automaton_file,
                        const std::string& witness_out = "");

/// Validates a presentation bundle directory; witness files for failed checks
/// are written into witness_dir (defaults to the bundle directory).
CommandResult cmd_validate(const CliOptions& options, const std::string& bundle_dir,
                           const std::string& witness_dir = "");

/// Decides a sentence over a presentation bundle.  `sentence` is a formula
/// file path if one exists, otherwise inline formula text.
CommandResult cmd_decide(const CliOptions& options, const std::string& bundle_dir,
                         const std::string& sentence, const std::string& witness_out = "");

/// Materializes a named builder ("list" prints the builder manifest instead).
CommandResult cmd_build(const CliOptions& options, const std::string& name,
                        const std::string& output_path);

/// Runs one differential-testing suite.
CommandResult cmd_difftest(const CliOptions& options, const std::string& suite);

/// Builder manifest listing every cmd_build name with a description.
std::string builder_manifest();

/// Serialized text of a single-file builder (every cmd_build name except the
/// bundle builders B1/B2).  InputError on unknown or bundle names.
std::string builder_text(const std::string& name);

/// Full argument parsing and dispatch; returns the process exit code.
int run_cli(int argc, const char* const* argv);

}  // namespace autstr
