#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "wpgen/driver.hpp"

using namespace wpgen;

namespace {

Invocation args(std::vector<std::string> v) { return parse_args(v); }

ErrorCode usage_error(std::vector<std::string> v) {
  try {
    parse_args(v);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected E_USAGE");
  return ErrorCode::Io;
}

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_with(const Invocation& inv, const std::string& stdin_text = "") {
  std::istringstream in(stdin_text);
  std::ostringstream out, err;
  int code = run(inv, in, out, err);
  return {code, out.str(), err.str()};
}

Invocation fake_solver(std::vector<std::string> answers, std::vector<std::string> inputs = {}) {
  Invocation inv;
  inv.inputs = std::move(inputs);
  inv.solver = {"sh", WPGEN_TEST_DATA "/fake_solver.sh"};
  for (auto& a : answers) inv.solver.push_back(a);
  inv.timeout_seconds = 10;
  return inv;
}

const std::string corpus = WPGEN_CORPUS_DIR;

}  // namespace

TEST_CASE("parse_args") {
  Invocation plain = args({});
  CHECK(plain.inputs.empty());
  CHECK_FALSE(plain.output);
  CHECK(plain.solver.empty());

  Invocation file = args({"f.smt2", "-o", "out.smt2"});
  CHECK(file.inputs == std::vector<std::string>{"f.smt2"});
  CHECK(file.output == "out.smt2");

  Invocation direct = args({"a.smt2", "b.smt2", "--", "./z3", "-in"});
  CHECK(direct.inputs == std::vector<std::string>{"a.smt2", "b.smt2"});
  CHECK(direct.solver == std::vector<std::string>{"./z3", "-in"});

  CHECK(args({"-z3", "f.smt2"}).solver == std::vector<std::string>{"z3", "-in"});
  CHECK(args({"f.smt2", "-cvc4"}).solver ==
        std::vector<std::string>{"cvc4", "--lang", "smt2", "--incremental"});
  CHECK(args({"-cvc5"}).solver.front() == "cvc5");
  CHECK(args({"--timeout", "2.5", "-z3"}).timeout_seconds == 2.5);
  CHECK(args({"-h"}).help);
  CHECK(args({"--help"}).help);
}

TEST_CASE("parse_args errors") {
  CHECK(usage_error({"--"}) == ErrorCode::Usage);
  CHECK(usage_error({"-o"}) == ErrorCode::Usage);
  CHECK(usage_error({"-o", "a", "-o", "b"}) == ErrorCode::Usage);
  CHECK(usage_error({"-q"}) == ErrorCode::Usage);
  CHECK(usage_error({"-o", "a", "-z3"}) == ErrorCode::Usage);
  CHECK(usage_error({"--timeout", "soon"}) == ErrorCode::Usage);
  CHECK(usage_error({"--timeout"}) == ErrorCode::Usage);
}

TEST_CASE("verdicts and exit codes") {
  CHECK(exit_code(verdict_from_answers({})) == 0);
  CHECK(exit_code(verdict_from_answers({"unsat", "unsat"})) == 0);
  CHECK(exit_code(verdict_from_answers({"unsat", "sat"})) == 1);
  CHECK(exit_code(verdict_from_answers({"unknown", "sat"})) == 1);
  CHECK(exit_code(verdict_from_answers({"unsat", "unknown"})) == 2);
  CHECK(exit_code(verdict_from_answers({"timeout"})) == 2);
  CHECK(exit_code(Verdict{VerdictKind::Error, "x"}) == 3);
}

TEST_CASE("translation to standard output") {
  Result r = run_with({}, "(declare-const x Int)\n(assert (wp (assign (x 1)) (= x 1)))\n(check-sat)\n");
  CHECK(r.code == 0);
  CHECK(r.out == "(declare-const x Int)\n(assert (= 1 1))\n(check-sat)\n");
}

TEST_CASE("translation to a file") {
  auto path = std::filesystem::temp_directory_path() / "wpgen_test_out.smt2";
  Invocation inv;
  inv.inputs = {corpus + "/max.smt2"};
  inv.output = path.string();
  Result r = run_with(inv);
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str().find("assert-counterexample") == std::string::npos);
  CHECK(ss.str().find("(check-sat)") != std::string::npos);
  std::filesystem::remove(path);
}

TEST_CASE("multiple inputs share declarations") {
  auto dir = std::filesystem::temp_directory_path();
  auto a = dir / "wpgen_decls.smt2", b = dir / "wpgen_body.smt2";
  std::ofstream(a) << "(declare-const x Int)\n";
  std::ofstream(b) << "(assert (wp (assign (x 2)) (> x 1)))\n";
  Invocation inv;
  inv.inputs = {a.string(), b.string()};
  Result r = run_with(inv);
  CHECK(r.code == 0);
  CHECK(r.out == "(declare-const x Int)\n(assert (> 2 1))\n");
  std::filesystem::remove(a);
  std::filesystem::remove(b);
}

TEST_CASE("diagnostics") {
  Invocation missing;
  missing.inputs = {"/nonexistent/input.smt2"};
  Result io = run_with(missing);
  CHECK(io.code == 3);
  CHECK(io.err.find("E_IO") != std::string::npos);

  Result bad = run_with({}, "(declare-const x Int)\n(assert (wp (assign (x true)) true))\n");
  CHECK(bad.code == 3);
  CHECK(bad.err.rfind("<stdin>:2:", 0) == 0);
  CHECK(bad.err.find("error: E_SORT") != std::string::npos);

  Result unbalanced = run_with({}, "(assert true");
  CHECK(unbalanced.code == 3);
  CHECK(unbalanced.err.find("E_UNBALANCED") != std::string::npos);

  Result loop = run_with({}, "(declare-const x Int)\n(assert (wp (while (> x 0) (block) :postcondition true) true))\n");
  CHECK(loop.code == 3);
  CHECK(loop.err.find("E_NO_MEASURE") != std::string::npos);
}

TEST_CASE("solver protocol with a scripted solver") {
  const std::string script = "(declare-const x Int)\n(assert (> x 0))\n(check-sat)\n(get-model)\n(check-sat)\n";
  Result unsat = run_with(fake_solver({"unsat", "unsat"}), script);
  CHECK(unsat.code == 0);
  CHECK(unsat.out.rfind("unsat\n(\n", 0) == 0);

  CHECK(run_with(fake_solver({"unsat", "sat"}), script).code == 1);
  CHECK(run_with(fake_solver({"unknown", "unsat"}), script).code == 2);
  CHECK(run_with(fake_solver({"error", "unsat"}), script).code == 3);
}

TEST_CASE("solver failures") {
  Invocation missing;
  missing.solver = {"/nonexistent/solver-binary"};
  Result r = run_with(missing, "(check-sat)\n");
  CHECK(r.code == 3);

  Invocation slow;
  slow.solver = {"sh", "-c", "exec sleep 5"};
  slow.timeout_seconds = 0.3;
  Result t = run_with(slow, "(check-sat)\n");
  CHECK(t.code == 2);
  CHECK(t.out.find("timeout") != std::string::npos);
}

TEST_CASE("z3 end to end" * doctest::skip(std::system("command -v z3 >/dev/null 2>&1") != 0)) {
  Invocation verify = args({corpus + "/max.smt2", "-z3"});
  Result ok = run_with(verify);
  CHECK(ok.code == 0);
  CHECK(ok.out == "unsat\n");

  Result bad = run_with(args({corpus + "/max_strict.smt2", "-z3"}));
  CHECK(bad.code == 1);
  CHECK(bad.out == "sat\n");
}
