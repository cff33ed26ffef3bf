#include "wpgen/driver.hpp"

#include <fstream>
#include <iostream>
#include <iterator>
#include <memory>
#include <sstream>

#include "wpgen/solver.hpp"
#include "wpgen/surface.hpp"

namespace wpgen {

int exit_code(const Verdict& v) {
  switch (v.kind) {
    case VerdictKind::Verified: return 0;
    case VerdictKind::Counterexample: return 1;
    case VerdictKind::Unknown: return 2;
    case VerdictKind::Error: return 3;
  }
  return 3;
}

Verdict verdict_from_answers(const std::vector<std::string>& answers) {
  bool unknown = false;
  for (const auto& a : answers) {
    if (a == "sat") return {VerdictKind::Counterexample, {}};
    if (a != "unsat") unknown = true;
  }
  if (unknown) return {VerdictKind::Unknown, {}};
  return {VerdictKind::Verified, {}};
}

std::string usage() {
  return "usage: wpgen [<file>...] [-o <out>] [--timeout <seconds>] [-z3 | -cvc4 | -cvc5 | -- "
         "<solver> <args>...]\n"
         "  no files: read standard input; no -o and no solver: write to standard output\n";
}

Invocation parse_args(std::span<const std::string> args) {
  Invocation inv;
  auto set_solver = [&](std::vector<std::string> cmd) {
    if (!inv.solver.empty()) throw Error(ErrorCode::Usage, "more than one solver given");
    inv.solver = std::move(cmd);
  };
  for (std::size_t i = 0; i < args.size(); ++i) {
    const std::string& a = args[i];
    if (a == "--") {
      std::vector<std::string> cmd(args.begin() + static_cast<long>(i) + 1, args.end());
      if (cmd.empty()) throw Error(ErrorCode::Usage, "'--' must be followed by a solver command");
      set_solver(std::move(cmd));
      break;
    }
    if (a == "-o") {
      if (i + 1 >= args.size()) throw Error(ErrorCode::Usage, "-o needs a file argument");
      if (inv.output) throw Error(ErrorCode::Usage, "more than one -o given");
      inv.output = args[++i];
    } else if (a == "--timeout") {
      if (i + 1 >= args.size()) throw Error(ErrorCode::Usage, "--timeout needs a value");
      try {
        inv.timeout_seconds = std::stod(args[++i]);
      } catch (const std::exception&) {
        throw Error(ErrorCode::Usage, "--timeout needs a number of seconds");
      }
      if (inv.timeout_seconds <= 0) throw Error(ErrorCode::Usage, "--timeout must be positive");
    } else if (a == "-z3") {
      set_solver({"z3", "-in"});
    } else if (a == "-cvc4") {
      set_solver({"cvc4", "--lang", "smt2", "--incremental"});
    } else if (a == "-cvc5") {
      set_solver({"cvc5", "--lang", "smt2", "--incremental"});
    } else if (a == "-h" || a == "--help") {
      inv.help = true;
    } else if (a.size() > 1 && a[0] == '-') {
      throw Error(ErrorCode::Usage, "unknown flag '" + a + "'");
    } else {
      inv.inputs.push_back(a);
    }
  }
  if (inv.output && !inv.solver.empty())
    throw Error(ErrorCode::Usage, "-o and a solver cannot be combined");
  return inv;
}

namespace {

struct Source {
  std::string name;
  std::string text;
};

std::vector<Source> read_inputs(const Invocation& inv, std::istream& in) {
  std::vector<Source> out;
  if (inv.inputs.empty()) {
    out.push_back({"<stdin>", std::string(std::istreambuf_iterator<char>(in), {})});
    return out;
  }
  for (const auto& path : inv.inputs) {
    std::ifstream file(path, std::ios::binary);
    if (!file) throw Error(ErrorCode::Io, "cannot read '" + path + "'");
    out.push_back({path, std::string(std::istreambuf_iterator<char>(file), {})});
  }
  return out;
}

void report(std::ostream& err, const std::string& file, const Error& e) {
  err << file << ":";
  if (e.pos().known()) err << e.pos().line << ":" << e.pos().column << ":";
  err << " error: " << to_string(e.code()) << ": " << e.message() << "\n";
}

bool is_command(const SExpr& e, std::string_view name) { return e.has_head(name); }

bool expects_sexpr_answer(const SExpr& e) {
  for (auto name : {"get-model", "get-value", "get-info", "get-assertions", "get-proof",
                    "get-unsat-core", "get-assignment", "get-option", "echo"}) {
    if (is_command(e, name)) return true;
  }
  return false;
}

Verdict drive_solver(const Invocation& inv, const Script& script, std::ostream& out) {
  SolverProcess solver(inv.solver);
  const auto timeout =
      std::chrono::milliseconds(static_cast<long long>(inv.timeout_seconds * 1000.0));
  std::vector<std::string> answers;
  bool solver_error = false;
  std::string error_text;

  auto echo = [&](const std::string& line) {
    out << line << "\n";
    out.flush();
    if (line.rfind("(error", 0) == 0) {
      solver_error = true;
      if (error_text.empty()) error_text = line;
    }
  };

  for (const auto& cmd : script) {
    if (!solver.send(print_sexpr(cmd.source))) break;
    if (is_command(cmd.source, "check-sat")) {
      for (;;) {
        auto line = solver.read_line(timeout);
        if (!line) {
          answers.push_back("unknown");
          if (solver.timed_out()) {
            out << "timeout\n";
            solver.kill();
            return {VerdictKind::Unknown, "solver timed out"};
          }
          break;
        }
        echo(*line);
        if (*line == "sat" || *line == "unsat" || *line == "unknown") {
          answers.push_back(*line);
          break;
        }
      }
      if (solver.at_eof()) break;
    } else if (expects_sexpr_answer(cmd.source)) {
      if (auto answer = solver.read_sexpr(timeout)) echo(*answer);
    }
  }
  solver.close_input();
  while (auto line = solver.read_line(timeout)) echo(*line);
  solver.wait();

  if (solver_error) return {VerdictKind::Error, error_text};
  return verdict_from_answers(answers);
}

}  // namespace

int run(const Invocation& inv, std::istream& in, std::ostream& out, std::ostream& err) {
  if (inv.help) {
    out << usage();
    return 0;
  }

  std::vector<Source> sources;
  try {
    sources = read_inputs(inv, in);
  } catch (const Error& e) {
    err << "error: " << to_string(e.code()) << ": " << e.message() << "\n";
    return 3;
  }

  SymbolTable table;
  NameSupply names;
  Script translated;
  for (const auto& src : sources) {
    try {
      Script script = parse_script(parse_sexprs(src.text), table);
      Script lowered = process_script(script, table, names);
      translated.insert(translated.end(), lowered.begin(), lowered.end());
    } catch (const Error& e) {
      report(err, src.name, e);
      return 3;
    }
  }

  if (inv.solver.empty()) {
    std::string text = print_script(translated);
    if (inv.output) {
      std::ofstream file(*inv.output, std::ios::binary);
      file << text;
      if (!file) {
        err << "error: " << to_string(ErrorCode::Io) << ": cannot write '" << *inv.output << "'\n";
        return 3;
      }
    } else {
      out << text;
    }
    return 0;
  }

  try {
    Verdict v = drive_solver(inv, translated, out);
    if (v.kind == VerdictKind::Error) err << "error: solver reported: " << v.message << "\n";
    return exit_code(v);
  } catch (const Error& e) {
    err << "error: " << to_string(e.code()) << ": " << e.message() << "\n";
    return 3;
  }
}

std::string translate(std::string_view text, VcOptions options) {
  SymbolTable table;
  NameSupply names;
  Script script = parse_script(parse_sexprs(text), table);
  return print_script(process_script(script, table, names, options));
}

}  // namespace wpgen
