#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wpgen/vcgen.hpp"

namespace wpgen {

struct Invocation {
  std::vector<std::string> inputs;   // empty: standard input
  std::optional<std::string> output;
  std::vector<std::string> solver;   // empty: translation only
  double timeout_seconds = 60.0;
  bool help = false;
};

enum class VerdictKind { Verified, Counterexample, Unknown, Error };

struct Verdict {
  VerdictKind kind = VerdictKind::Verified;
  std::string message;
};

/// Exit codes: 0 verified or translated, 1 counterexample, 2 unknown, 3 error.
int exit_code(const Verdict& v);

/// Maps the check-sat answers of one run to a verdict: any `sat` is a
/// counterexample, otherwise anything but `unsat` is unknown.
Verdict verdict_from_answers(const std::vector<std::string>& answers);

/// Throws E_USAGE on malformed command lines.
Invocation parse_args(std::span<const std::string> args);

std::string usage();

/// Reads every input, translates, and either writes the script or drives
/// the solver. Diagnostics go to `err` as `file:line:column: CODE: message`.
int run(const Invocation& inv, std::istream& in, std::ostream& out, std::ostream& err);

/// Translation of one in-memory script; convenience for tests and tools.
std::string translate(std::string_view text, VcOptions options = {});

}  // namespace wpgen
