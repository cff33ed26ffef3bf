#include <doctest.h>

#include <fstream>
#include <sstream>

#include "wpgen/surface.hpp"

using namespace wpgen;

namespace {

SExpr sx(std::string_view text) { return parse_sexprs(text).at(0); }

SymbolTable table_with(std::string_view decls) {
  SymbolTable table;
  parse_script(decls, table);
  return table;
}

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

}  // namespace

TEST_CASE("minimal script") {
  SymbolTable table;
  Script s = parse_script("(declare-const x Int) (check-sat)", table);
  REQUIRE(s.size() == 2);
  auto* d = s[0].as<DeclareConstCmd>();
  REQUIRE(d);
  CHECK(d->name == "x");
  CHECK(d->sort == Sort::Int());
  CHECK(s[1].as<CheckSatCmd>());
}

TEST_CASE("array maximum script elaborates to five commands") {
  SymbolTable table;
  Script s = parse_script(read_file(WPGEN_CORPUS_DIR "/max.smt2"), table);
  REQUIRE(s.size() == 5);
  auto* ce = s[3].as<AssertCounterexampleCmd>();
  REQUIRE(ce);
  auto* loop = ce->program.as<WhileStmt>();
  REQUIRE(loop);
  CHECK(to_string(loop->test) == "(not (= x y))");
  CHECK(loop->body.as<IfStmt>());
  REQUIRE(loop->measure);
  CHECK(to_string(*loop->measure) == "(- y x)");
  CHECK_FALSE(loop->pre);
  CHECK_FALSE(loop->post);
}

TEST_CASE("unknown commands pass through") {
  SymbolTable table;
  Script s = parse_script("(set-info :source \"x\")", table);
  REQUIRE(s.size() == 1);
  CHECK(s[0].as<RawCmd>());
  CHECK(print_sexpr(s[0].source) == "(set-info :source \"x\")");
}

TEST_CASE("elaborate terms") {
  SymbolTable table = table_with("(declare-const x Int) (declare-const z Int) (declare-const a (Array Int Int))");

  Term t = elaborate_term(sx("(> x (old x))"), table);
  auto* app = t.as<AppTerm>();
  REQUIRE(app);
  CHECK(app->fn == ">");
  REQUIRE(app->args.size() == 2);
  CHECK(app->args[0].is<VarTerm>());
  REQUIRE(app->args[1].is<OldTerm>());
  CHECK(app->args[1].as<OldTerm>()->inner.as<VarTerm>()->name == "x");
  CHECK(t.sort() == Sort::Bool());

  Term m = elaborate_term(sx("(wp (block) true)"), table);
  auto* modal = m.as<ModalTerm>();
  REQUIRE(modal);
  CHECK(modal->mode == Mode::Wp);
  REQUIRE(modal->program.as<BlockStmt>());
  CHECK(modal->program.as<BlockStmt>()->body.empty());
  CHECK(modal->post == Term::boolean(true));
  CHECK(sort_of(m, table) == Sort::Bool());

  Term sel = elaborate_term(sx("(select a z)"), table);
  CHECK(sel.is<AppTerm>());
  CHECK(sort_of(sel, table) == Sort::Int());

  CHECK(sort_of(elaborate_term(sx("x"), table), table) == Sort::Int());
  CHECK(sort_of(elaborate_term(sx("(old (select a x))"), table), table) == Sort::Int());
  CHECK(sort_of(elaborate_term(sx("(+ x 1.5)"), table), table) == Sort::Real());
  CHECK(sort_of(elaborate_term(sx("(store a x 1)"), table), table) == Sort::Array(Sort::Int(), Sort::Int()));
  CHECK(sort_of(elaborate_term(sx("(let ((w (+ x 1))) (< w x))"), table), table) == Sort::Bool());
  CHECK(sort_of(elaborate_term(sx("((as const (Array Int Int)) 0)"), table), table) ==
        Sort::Array(Sort::Int(), Sort::Int()));
}

TEST_CASE("quantifiers shadow globals") {
  SymbolTable table = table_with("(declare-const x Int)");
  Term t = elaborate_term(sx("(forall ((x Bool)) (and x true))"), table);
  CHECK(t.sort() == Sort::Bool());
  CHECK(elaborate_term(sx("x"), table).sort() == Sort::Int());
}

TEST_CASE("term errors") {
  SymbolTable table = table_with("(declare-const x Int) (declare-fun f (Int) Int)");
  CHECK(error_of([&] { elaborate_term(sx("(+ x w)"), table); }) == ErrorCode::Undeclared);
  CHECK(error_of([&] { elaborate_term(sx("(and x true)"), table); }) == ErrorCode::Sort);
  CHECK(error_of([&] { elaborate_term(sx("(f x x)"), table); }) == ErrorCode::Arity);
  CHECK(error_of([&] { elaborate_term(sx("(f true)"), table); }) == ErrorCode::Sort);
  CHECK(error_of([&] { elaborate_term(sx("(not x)"), table); }) == ErrorCode::Sort);
  CHECK(error_of([&] { elaborate_term(sx("(ite x 1 2)"), table); }) == ErrorCode::Sort);
  CHECK(error_of([&] { elaborate_term(sx("(wp (block) x)"), table); }) == ErrorCode::Sort);
  CHECK(error_of([&] { elaborate_term(sx("#x0F"), table); }) == ErrorCode::Unsupported);
}

TEST_CASE("elaborate programs") {
  SymbolTable table = table_with("(declare-const x Int) (declare-const y Int) (declare-const a (Array Int Int))");

  Program swap = elaborate_program(sx("(assign (x y) (y x))"), table);
  auto* as = swap.as<AssignStmt>();
  REQUIRE(as);
  REQUIRE(as->bindings.size() == 2);
  CHECK(as->bindings[0].first.name == "x");
  CHECK(as->bindings[0].second == Term::var("y", Sort::Int()));
  CHECK(as->bindings[1].first.name == "y");
  CHECK(as->bindings[1].second == Term::var("x", Sort::Int()));
  CHECK(elaborate_program(sx("(assign ((x y) (y x)))"), table) == swap);

  Program havoc = elaborate_program(sx("(spec (x) true true)"), table);
  auto* sp = havoc.as<SpecStmt>();
  REQUIRE(sp);
  REQUIRE(sp->vars.size() == 1);
  CHECK(sp->vars[0] == TypedName{"x", Sort::Int()});
  CHECK(sp->pre == Term::boolean(true));
  CHECK(sp->post == Term::boolean(true));

  Program loop = elaborate_program(
      sx("(while (not (= x y)) (if (<= (select a x) (select a y)) (assign (x (+ x 1))) "
         "(assign (y (- y 1)))) :termination (- y x))"),
      table);
  auto* w = loop.as<WhileStmt>();
  REQUIRE(w);
  CHECK(w->measure);
  CHECK_FALSE(w->pre);
  CHECK_FALSE(w->post);

  Program attrs = elaborate_program(
      sx("(while (> x 0) (assign (x (- x 1))) :postcondition (= x 0) :precondition (>= x 0) "
         ":termination x)"),
      table);
  auto* w2 = attrs.as<WhileStmt>();
  REQUIRE(w2);
  CHECK(w2->measure);
  CHECK(w2->pre);
  CHECK(w2->post);
}

TEST_CASE("program errors") {
  SymbolTable table = table_with("(declare-const x Int) (declare-const b Bool)");
  auto prog = [&](const char* text) { return [&table, text] { elaborate_program(sx(text), table); }; };
  CHECK(error_of(prog("(assign (x 1) (x 2))")) == ErrorCode::DupTarget);
  CHECK(error_of(prog("(assign (x true))")) == ErrorCode::Sort);
  CHECK(error_of(prog("(assign (q 1))")) == ErrorCode::Undeclared);
  CHECK(error_of(prog("(spec (x x) true true)")) == ErrorCode::DupTarget);
  CHECK(error_of(prog("(spec (q) true true)")) == ErrorCode::Undeclared);
  CHECK(error_of(prog("(if b (block))")) == ErrorCode::Arity);
  CHECK(error_of(prog("(if x (block) (block))")) == ErrorCode::Sort);
  CHECK(error_of(prog("(while x (block))")) == ErrorCode::Sort);
  CHECK(error_of(prog("(while b (block) :termination b)")) == ErrorCode::Sort);
  CHECK(error_of(prog("(while b (block) :termination x :termination x)")) == ErrorCode::DupAttr);
  CHECK(error_of(prog("(while b (block) :variant x)")) == ErrorCode::UnknownAttr);
  CHECK(error_of(prog("(spec (x) 1 true)")) == ErrorCode::Sort);
}

TEST_CASE("command errors carry positions") {
  SymbolTable table;
  try {
    parse_script("(declare-const x Int)\n  (assert (wp (assign (x true)) true))", table);
    FAIL("expected E_SORT");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Sort);
    CHECK(e.pos().line == 2);
  }
  SymbolTable t2;
  CHECK(error_of([&] { parse_script("(declare-const x Int) (declare-const x Bool)", t2); }) ==
        ErrorCode::Elab);
  SymbolTable t3;
  CHECK(error_of([&] { parse_script("(declare-const and Int)", t3); }) == ErrorCode::Elab);
}

TEST_CASE("datatypes") {
  SymbolTable table;
  Script s = parse_script(
      "(declare-datatypes ((Color 0)) (((red) (green) (rgb (r Int) (g Int)))))"
      "(declare-const c Color)"
      "(assert (or ((_ is red) c) (is-green c) (> (r c) 0)))",
      table);
  REQUIRE(s.size() == 3);
  CHECK(s[0].as<DeclareDatatypesCmd>());
  CHECK(s[2].as<AssertCmd>());

  SymbolTable t2;
  CHECK(error_of([&] {
          parse_script("(declare-datatypes ((L 1)) ((par (T) ((nil) (cons (hd T) (tl (L T)))))))", t2);
        }) == ErrorCode::Unsupported);
}

TEST_CASE("foreign theories pass through as raw commands") {
  SymbolTable table;
  Script s = parse_script(
      "(declare-const v (_ BitVec 8)) (assert (= v #x01)) (declare-const x Int) (assert (> x 0))", table);
  REQUIRE(s.size() == 4);
  CHECK(s[0].as<RawCmd>());
  CHECK(s[1].as<RawCmd>());
  CHECK(s[2].as<DeclareConstCmd>());
  CHECK(s[3].as<AssertCmd>());
}

TEST_CASE("elaboration is deterministic and printing re-elaborates identically") {
  const char* script =
      "(declare-sort U 0)(define-sort IA () (Array Int Int))(declare-const x Int)(declare-const y Int)"
      "(declare-const a IA)(declare-const u U)(declare-fun f (Int U) Int)"
      "(define-fun g ((k Int)) Bool (wp (assign (x k)) (> x (old x))))"
      "(assert (box (block (assign (x (+ x 1)) (y x)) (if (> x y) (spec (x) true (> x (old y))) (block))) (> x 0)))"
      "(assert (dia (spec (x y) (> x 0) (and (< x (old x)) (= y 1))) (>= (f x u) 0)))"
      "(assert-counterexample (<= x y) (while (< x y) (assign (x (+ x 1))) :termination (- y x) "
      ":precondition (<= x y) :postcondition (= x (old y))) (= x (old y)))"
      "(assert (forall ((k Int)) (exists ((m Int)) (= (select a k) (+ m 1)))))"
      "(check-sat)";
  SymbolTable t1, t2;
  Script s1 = parse_script(script, t1);
  Script s2 = parse_script(script, t2);
  REQUIRE(s1.size() == s2.size());
  std::string printed;
  for (std::size_t i = 0; i < s1.size(); ++i) {
    CHECK(equivalent(s1[i], s2[i]));
    printed += print_sexpr(to_sexpr(s1[i])) + "\n";
  }
  SymbolTable t3;
  Script s3 = parse_script(printed, t3);
  REQUIRE(s3.size() == s1.size());
  for (std::size_t i = 0; i < s1.size(); ++i) CHECK_MESSAGE(equivalent(s1[i], s3[i]), i);
}

TEST_CASE("mentions_extension") {
  CHECK(mentions_extension(sx("(assert (wp (block) true))")));
  CHECK(mentions_extension(sx("(assert (> x (old x)))")));
  CHECK_FALSE(mentions_extension(sx("(assert (> x 0))")));
}
