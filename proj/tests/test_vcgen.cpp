#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "wpgen/driver.hpp"
#include "wpgen/oracle.hpp"
#include "wpgen/surface.hpp"
#include "wpgen/vcgen.hpp"

using namespace wpgen;

namespace {

SymbolTable& table() {
  static SymbolTable t = [] {
    SymbolTable s;
    parse_script(
        "(declare-const x Int) (declare-const y Int) (declare-const m Int) (declare-const a Int)"
        "(declare-const b Int) (declare-const A Int) (declare-const B Int)"
        "(declare-const arr (Array Int Int))",
        s);
    return s;
  }();
  return t;
}

Term T(std::string_view text) { return elaborate_term(parse_sexprs(text).at(0), table()); }
Program P(std::string_view text) { return elaborate_program(parse_sexprs(text).at(0), table()); }

NameSupply supply() { return NameSupply(table().global_names()); }

template <class F>
ErrorCode error_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::Usage;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const char* countdown =
    "(while (> x 0) (assign (x (- x 1))) :termination x :precondition (>= x 0) :postcondition (= x 0))";

}  // namespace

TEST_CASE("lower_term") {
  NameSupply names = supply();
  VcGen vc(names);
  CHECK(to_string(vc.lower_term(T("(> x 0)"), {{{"x", T("(+ x 1)")}}, OldMap{}})) == "(> (+ x 1) 0)");
  CHECK(to_string(vc.lower_term(T("(wp (assign ((x (+ x 1)))) (> x 0))"), ExecState::identity())) ==
        "(> (+ x 1) 0)");
  CHECK(to_string(vc.lower_term(T("(old x)"), {{}, OldMap{{"x", T("x")}}})) == "x");
  CHECK(error_of([&] { vc.lower_term(T("(old x)"), ExecState::no_old()); }) == ErrorCode::OldContext);
}

TEST_CASE("assign, block and if") {
  NameSupply names = supply();
  VcGen vc(names);
  CHECK(to_string(vc.reduce(Mode::Wp, P("(assign (x y) (y x))"), T("(and (= x A) (= y B))"),
                            ExecState::identity())) == "(and (= y A) (= x B))");
  CHECK(to_string(vc.reduce(Mode::Wp, P("(if (<= a b) (assign (m b)) (assign (m a)))"), T("(>= m a)"),
                            ExecState::identity())) ==
        "(and (=> (<= a b) (>= b a)) (=> (not (<= a b)) (>= a a)))");
  CHECK(to_string(vc.reduce(Mode::Wp, P("(block (assign (x (+ x 1))) (assign (y x)))"), T("(= y x)"),
                            ExecState::identity())) == "(= (+ x 1) (+ x 1))");
  CHECK(to_string(vc.reduce(Mode::Box, P("(block)"), T("(> x (old x))"), ExecState::identity())) ==
        "(> x x)");
  for (Mode mode : {Mode::Box, Mode::Dia}) {
    CHECK(to_string(vc.reduce(mode, P("(assign (x y) (y x))"), T("(and (= x A) (= y B))"),
                              ExecState::identity())) == "(and (= y A) (= x B))");
  }
}

TEST_CASE("spec rule shapes") {
  NameSupply names = supply();
  VcGen vc(names);
  CHECK(to_string(vc.reduce(Mode::Wp, P("(spec (x) true (> x (old x)))"), T("(> x 0)"),
                            ExecState::identity())) ==
        "(and true (forall ((x!1 Int)) (=> (> x!1 x) (> x!1 0))))");
  CHECK(to_string(vc.reduce(Mode::Wp, P("(spec () (> x 0) true)"), T("(> y 0)"), ExecState::identity())) ==
        "(and (> x 0) (=> true (> y 0)))");
  CHECK(to_string(vc.reduce(Mode::Box, P("(spec (y) true (= y x))"), T("(= y x)"), ExecState::identity())) ==
        "(and true (forall ((y!2 Int)) (=> (= y!2 x) (= y!2 x))))");
  CHECK(to_string(vc.reduce(Mode::Dia, P("(spec (y) (> x 0) (= y x))"), T("(= y x)"), ExecState::identity())) ==
        "(and (> x 0) (exists ((y!3 Int)) (and (= y!3 x) (= y!3 x))))");
}

TEST_CASE("spec rule: old in the statement post refers to its own pre-state") {
  NameSupply names = supply();
  VcGen vc(names);
  Term vcf = vc.reduce(Mode::Wp, P("(block (assign (x (+ x 1))) (spec (x) true (= x (old x))))"),
                       T("(= x (+ (old x) 1))"), ExecState::identity());
  for (const auto& s : oracle::all_states({"x"}, 3)) CHECK(oracle::eval_formula(vcf, s, s, 3));
}

TEST_CASE("dia of a spec agrees with enumeration") {
  // (spec (x) true (= x 5)) has exactly one successor, x = 5.
  for (const char* q : {"(> x 4)", "(> x 5)"}) {
    NameSupply names = supply();
    VcGen vc(names);
    Term reduced = vc.reduce(Mode::Dia, P("(spec (x) true (= x 5))"), T(q), ExecState::identity());
    bool expected = std::string(q) == "(> x 4)";
    for (int x = -8; x <= 8; ++x) {
      oracle::State s{{"x", std::int64_t{x}}};
      CHECK(oracle::eval_formula(reduced, s, s, 8) == expected);
    }
  }
}

TEST_CASE("loop rule errors") {
  NameSupply names = supply();
  VcGen vc(names);
  const char* no_measure =
      "(while (> x 0) (assign (x (- x 1))) :precondition (>= x 0) :postcondition (= x 0))";
  CHECK(error_of([&] { vc.reduce(Mode::Wp, P(no_measure), T("(= x 0)"), ExecState::identity()); }) ==
        ErrorCode::NoMeasure);
  CHECK_NOTHROW(vc.reduce(Mode::Box, P(no_measure), T("(= x 0)"), ExecState::identity()));
  CHECK(error_of([&] { vc.reduce(Mode::Dia, P(countdown), T("(= x 0)"), ExecState::identity()); }) ==
        ErrorCode::DiaLoop);
  CHECK(error_of([&] {
          vc.reduce(Mode::Box, P("(while (> x 0) (assign (x (- x 1))))"), T("true"), ExecState::identity());
        }) == ErrorCode::NoPost);
  CHECK(error_of([&] {
          vc.reduce(Mode::Wp,
                    P("(while (> x 0) (assign (x (- x 1))) :termination (- x (old x)) :postcondition true)"),
                    T("true"), ExecState::identity());
        }) == ErrorCode::OldContext);
}

TEST_CASE("countdown loop rule under bounded evaluation") {
  NameSupply names = supply();
  VcGen vc(names);
  Term good = vc.reduce(Mode::Wp, P(countdown), T("(= x 0)"), ExecState::identity());
  for (int x = 0; x <= 5; ++x) {
    oracle::State s{{"x", std::int64_t{x}}, {"y", std::int64_t{0}}};
    CHECK(oracle::eval_formula(mk_implies(T("(>= x 0)"), good), s, s, 5));
  }
  // A wrong loop postcondition must be refuted somewhere.
  Term bad = vc.reduce(
      Mode::Wp,
      P("(while (> x 0) (assign (x (- x 1))) :termination x :precondition (>= x 0) :postcondition (= x 1))"),
      T("(= x 0)"), ExecState::identity());
  bool refuted = false;
  for (int x = 0; x <= 5; ++x) {
    oracle::State s{{"x", std::int64_t{x}}, {"y", std::int64_t{0}}};
    if (!oracle::eval_formula(bad, s, s, 5)) refuted = true;
  }
  CHECK(refuted);
  // A measure that does not decrease must be refuted.
  Term stuck = vc.reduce(
      Mode::Wp,
      P("(while (> x 0) (assign (x (- x 1))) :termination y :precondition (>= x 0) :postcondition (= x 0))"),
      T("(= x 0)"), ExecState::identity());
  oracle::State s{{"x", std::int64_t{2}}, {"y", std::int64_t{1}}};
  CHECK_FALSE(oracle::eval_formula(stuck, s, s, 5));
}

TEST_CASE("loop base case option") {
  NameSupply names = supply();
  VcGen k(names);
  VcGen lp(names, VcOptions{VcOptions::BaseCase::LoopPost});
  Term a = k.reduce(Mode::Wp, P(countdown), T("(<= x 0)"), ExecState::identity());
  Term b = lp.reduce(Mode::Wp, P(countdown), T("(<= x 0)"), ExecState::identity());
  CHECK_FALSE(alpha_equal(a, b));
  for (int x = 0; x <= 5; ++x) {
    oracle::State s{{"x", std::int64_t{x}}, {"y", std::int64_t{0}}};
    CHECK(oracle::eval_formula(a, s, s, 5));
    CHECK(oracle::eval_formula(b, s, s, 5));
  }
}

TEST_CASE("infer_loop_contract") {
  SymbolTable t;
  Script s = parse_script(read_file(WPGEN_CORPUS_DIR "/max.smt2"), t);
  const auto& ce = *s[3].as<AssertCounterexampleCmd>();
  Program inferred = infer_loop_contract(ce.program, ce.pre, ce.post);
  const auto& w = *inferred.as<WhileStmt>();
  REQUIRE(w.pre);
  REQUIRE(w.post);
  CHECK(to_string(*w.pre) == "(<= x y)");
  CHECK(to_string(*w.post) ==
        "(forall ((z Int)) (=> (and (<= (old x) z) (<= z (old y))) (<= (select a z) (select a x))))");
  CHECK(to_string(*w.measure) == "(- y x)");

  Program annotated = P("(while (> x 0) (assign (x (- x 1))) :postcondition (= x 0))");
  Program kept = infer_loop_contract(annotated, T("(>= x 0)"), T("(<= x 0)"));
  CHECK(*kept.as<WhileStmt>()->post == T("(= x 0)"));
  CHECK(*kept.as<WhileStmt>()->pre == T("(>= x 0)"));

  Program block = P("(block (assign (x 0)) (while (> x 0) (assign (x (- x 1)))))");
  CHECK(infer_loop_contract(block, T("true"), T("(= x 0)")) == block);

  Program single = P("(block (while (> x 0) (assign (x (- x 1)))))");
  CHECK(infer_loop_contract(single, T("true"), T("(= x 0)")).as<WhileStmt>()->post);
}

TEST_CASE("lower_assert_counterexample") {
  NameSupply names = supply();
  VcGen vc(names);
  CHECK(to_string(lower_assert_counterexample(T("true"), P("(assign (x 1))"), T("(= x 1)"), vc)) ==
        "(not (=> true (= 1 1)))");
  CHECK(to_string(lower_assert_counterexample(T("true"), P("(assign (x 1))"), T("(= x 2)"), vc)) ==
        "(not (=> true (= 1 2)))");
  CHECK(to_string(lower_assert_counterexample(T("(> x 0)"), P("(assign (x (+ x 1)))"), T("(> x (old x))"),
                                              vc)) == "(not (=> (> x 0) (> (+ x 1) x)))");
}

TEST_CASE("process_script") {
  SymbolTable t;
  Script in = parse_script(read_file(WPGEN_CORPUS_DIR "/max.smt2"), t);
  Script out = process_script(in, t);
  REQUIRE(out.size() == 5);
  for (int i : {0, 1, 2}) CHECK(print_sexpr(out[i].source) == print_sexpr(in[i].source));
  REQUIRE(out[3].as<AssertCmd>());
  CHECK(out[3].source.has_head("assert"));
  CHECK_FALSE(mentions_extension(out[3].source));
  CHECK(out[4].as<CheckSatCmd>());

  const char* raw = "(set-info :status unsat)\n(set-option :produce-models true)\n(push 1)\n(pop 1)\n";
  CHECK(translate(raw) == raw);

  CHECK(translate("(declare-const x Int)\n(assert (wp (assign ((x 1))) (= x 1)))\n") ==
        "(declare-const x Int)\n(assert (= 1 1))\n");

  CHECK(error_of([] { translate("(declare-const x Int)\n(assert (> x (old x)))\n"); }) ==
        ErrorCode::OldContext);
  CHECK(error_of([] { translate("(declare-const x Int)\n(assert (dia (while (> x 0) (block)) true))\n"); }) ==
        ErrorCode::DiaLoop);
}

TEST_CASE("modalities inside definitions and nested modalities") {
  std::string out = translate(
      "(declare-const x Int)\n"
      "(define-fun inc_ok () Bool (wp (assign (x (+ x 1))) (> x (old x))))\n"
      "(assert (box (assign (x 0)) (dia (spec (x) true (> x (old x))) (> x 0))))\n");
  CHECK_FALSE(mentions_extension(SExpr::list(parse_sexprs(out))));
  CHECK(out.find("(define-fun inc_ok () Bool (> (+ x 1) x))") != std::string::npos);
}

TEST_CASE("fresh names never collide with input symbols") {
  std::string out = translate(
      "(declare-const x Int)\n(declare-const x!1 Int)\n"
      "(assert (wp (spec (x) true (> x x!1)) (> x 0)))\n");
  CHECK(out.find("(forall ((x!2 Int))") != std::string::npos);
}

TEST_CASE("output purity over the corpus") {
  for (const auto& entry : std::filesystem::directory_iterator(WPGEN_CORPUS_DIR)) {
    if (entry.path().extension() != ".smt2") continue;
    std::string out = translate(read_file(entry.path().string()));
    for (const auto& form : parse_sexprs(out)) CHECK_FALSE(mentions_extension(form));
  }
}
