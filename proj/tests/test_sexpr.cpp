#include <doctest.h>

#include <random>

#include "wpgen/oracle.hpp"
#include "wpgen/sexpr.hpp"

using namespace wpgen;

namespace {

ErrorCode lex_error(std::string_view text) {
  try {
    parse_sexprs(text);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error for: " << text);
  return ErrorCode::Usage;
}

Pos error_pos(std::string_view text) {
  try {
    parse_sexprs(text);
  } catch (const Error& e) {
    return e.pos();
  }
  return {};
}

}  // namespace

TEST_CASE("parse single form") {
  auto forms = parse_sexprs("(check-sat)");
  REQUIRE(forms.size() == 1);
  REQUIRE(forms[0].is_list());
  REQUIRE(forms[0].size() == 1);
  CHECK(forms[0][0].kind() == AtomKind::Symbol);
  CHECK(forms[0][0].text() == "check-sat");
}

TEST_CASE("comments are skipped") {
  auto forms = parse_sexprs("; c\n(= x 1)");
  REQUIRE(forms.size() == 1);
  REQUIRE(forms[0].size() == 3);
  CHECK(forms[0][0].text() == "=");
  CHECK(forms[0][1].text() == "x");
  CHECK(forms[0][2].kind() == AtomKind::Numeral);
  CHECK(forms[0][2].text() == "1");
  CHECK(forms[0].pos().line == 2);
  CHECK(forms[0].pos().column == 1);
}

TEST_CASE("parallel assignment shape") {
  auto forms = parse_sexprs("(assign (x y) (y x))");
  REQUIRE(forms.size() == 1);
  REQUIRE(forms[0].size() == 3);
  CHECK(forms[0][1].is_list());
  CHECK(forms[0][1].size() == 2);
  CHECK(forms[0][2].is_list());
  CHECK(forms[0][2].size() == 2);
}

TEST_CASE("atom kinds keep their spelling") {
  auto forms = parse_sexprs(R"(x |a b| :kw 42 3.25 #xFF #b101 "say ""hi""" |x|)");
  REQUIRE(forms.size() == 9);
  CHECK(forms[0].kind() == AtomKind::Symbol);
  CHECK(forms[1].kind() == AtomKind::QuotedSymbol);
  CHECK(forms[1].text() == "|a b|");
  CHECK(forms[2].kind() == AtomKind::Keyword);
  CHECK(forms[3].kind() == AtomKind::Numeral);
  CHECK(forms[4].kind() == AtomKind::Decimal);
  CHECK(forms[5].kind() == AtomKind::Hexadecimal);
  CHECK(forms[5].text() == "#xFF");
  CHECK(forms[6].kind() == AtomKind::Binary);
  CHECK(forms[7].kind() == AtomKind::String);
  CHECK(forms[7].text() == R"("say ""hi""")");
  CHECK(forms[8].symbol_name() == "x");
  CHECK(forms[1].symbol_name() == "|a b|");
}

TEST_CASE("print") {
  CHECK(print_sexpr(SExpr::symbol("x")) == "x");
  CHECK(print_sexpr(SExpr::list({SExpr::symbol("+"), SExpr::symbol("x"),
                                 SExpr::atom(AtomKind::Numeral, "1")})) == "(+ x 1)");
  CHECK(print_sexpr(SExpr::atom(AtomKind::QuotedSymbol, "|a b|")) == "|a b|");
  CHECK(print_sexpr(parse_sexprs("(  a\n ( b   c )  ()  )")[0]) == "(a (b c) ())");
  CHECK(symbol_text("a b") == "|a b|");
  CHECK(symbol_text("ab") == "ab");
}

TEST_CASE("positions") {
  auto forms = parse_sexprs("(a\n  (b c))");
  CHECK(forms[0][1].pos().line == 2);
  CHECK(forms[0][1].pos().column == 3);
  CHECK(forms[0][1][1].pos().column == 6);
}

TEST_CASE("lexical errors") {
  CHECK(lex_error("(a b") == ErrorCode::Unbalanced);
  CHECK(lex_error("a)") == ErrorCode::Unbalanced);
  CHECK(lex_error("\"abc") == ErrorCode::Lex);
  CHECK(lex_error("|abc") == ErrorCode::Lex);
  CHECK(lex_error("#q1") == ErrorCode::Lex);
  CHECK(lex_error("#xZZ") == ErrorCode::Lex);
  CHECK(lex_error("1abc") == ErrorCode::Lex);

  Pos open = error_pos("(ok)\n (a (b c)");
  CHECK(open.line == 2);
  CHECK(open.column == 2);
  Pos extra = error_pos("(a))");
  CHECK(extra.line == 1);
  CHECK(extra.column == 4);
}

TEST_CASE("round trip over generated s-expressions") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 5000; ++i) {
    SExpr e = oracle::random_sexpr(rng, 5);
    std::string text = print_sexpr(e);
    auto back = parse_sexprs(text);
    REQUIRE(back.size() == 1);
    REQUIRE_MESSAGE(back[0] == e, text);
    REQUIRE(print_sexpr(back[0]) == text);
  }
}

TEST_CASE("print of parse is stable on real scripts") {
  std::string text =
      "(set-info :source |multi\nline|)\n(declare-const x Int) ; trailing\n"
      "(assert (> x 2.5))\n(echo \"a \"\"b\"\"\")\n";
  auto forms = parse_sexprs(text);
  std::string once;
  for (const auto& f : forms) once += print_sexpr(f) + "\n";
  auto again = parse_sexprs(once);
  REQUIRE(again.size() == forms.size());
  for (std::size_t i = 0; i < forms.size(); ++i) CHECK(again[i] == forms[i]);
}
