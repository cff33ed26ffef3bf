#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "wpgen/error.hpp"
#include "wpgen/sexpr.hpp"

namespace wpgen {

struct Sort {
  std::string name;
  std::vector<Sort> args;

  static Sort Bool() { return {"Bool", {}}; }
  static Sort Int() { return {"Int", {}}; }
  static Sort Real() { return {"Real", {}}; }
  static Sort Array(Sort index, Sort element) {
    return {"Array", {std::move(index), std::move(element)}};
  }

  bool is_bool() const { return name == "Bool" && args.empty(); }
  bool is_int() const { return name == "Int" && args.empty(); }
  bool is_real() const { return name == "Real" && args.empty(); }
  bool is_array() const { return name == "Array" && args.size() == 2; }

  SExpr to_sexpr() const;
  std::string str() const { return print_sexpr(to_sexpr()); }

  friend bool operator==(const Sort&, const Sort&) = default;
};

struct TypedName {
  std::string name;
  Sort sort;

  friend bool operator==(const TypedName&, const TypedName&) = default;
};

enum class Mode { Wp, Box, Dia };
enum class Quantifier { Forall, Exists };
enum class LitKind { Bool, Numeral, Decimal };

std::string_view to_string(Mode mode);

struct TermNode;
struct ProgramNode;
class Program;

/// Immutable, shared handle to a sorted term.
class Term {
 public:
  Term() = default;
  explicit Term(std::shared_ptr<const TermNode> node) : node_(std::move(node)) {}

  static Term var(std::string name, Sort sort, Pos pos = {});
  static Term literal(LitKind kind, std::string text, Sort sort, Pos pos = {});
  static Term boolean(bool value, Pos pos = {});
  static Term numeral(long long value, Pos pos = {});
  static Term app(std::string fn, std::vector<Term> args, Sort sort, Pos pos = {});
  static Term quant(Quantifier q, std::vector<TypedName> bound, Term body, Pos pos = {});
  static Term let(std::vector<std::pair<std::string, Term>> bindings, Term body, Pos pos = {});
  static Term old(Term inner, Pos pos = {});
  static Term modal(Mode mode, Program program, Term post, Pos pos = {});

  explicit operator bool() const { return node_ != nullptr; }
  const TermNode& node() const { return *node_; }
  const TermNode* get() const { return node_.get(); }

  template <class T>
  const T* as() const;
  template <class T>
  bool is() const {
    return as<T>() != nullptr;
  }

  const Sort& sort() const;
  Pos pos() const;

  // Structural equality; positions are ignored, bound names are not.
  friend bool operator==(const Term& a, const Term& b);

 private:
  std::shared_ptr<const TermNode> node_;
};

class Program {
 public:
  Program() = default;
  explicit Program(std::shared_ptr<const ProgramNode> node) : node_(std::move(node)) {}

  static Program assign(std::vector<std::pair<TypedName, Term>> bindings, Pos pos = {});
  static Program spec(std::vector<TypedName> vars, Term pre, Term post, Pos pos = {});
  static Program block(std::vector<Program> body, Pos pos = {});
  static Program if_(Term test, Program then_branch, Program else_branch, Pos pos = {});
  static Program while_(Term test, Program body, std::optional<Term> measure,
                        std::optional<Term> pre, std::optional<Term> post, Pos pos = {});

  explicit operator bool() const { return node_ != nullptr; }
  const ProgramNode& node() const { return *node_; }

  template <class T>
  const T* as() const;
  template <class T>
  bool is() const {
    return as<T>() != nullptr;
  }

  Pos pos() const;

  friend bool operator==(const Program& a, const Program& b);

 private:
  std::shared_ptr<const ProgramNode> node_;
};

struct VarTerm {
  std::string name;
  Sort sort;
};

struct LitTerm {
  LitKind kind;
  std::string text;
  Sort sort;
};

/// Function application. `indices` renders as `(_ fn i...)`, `as_sort` as `(as fn S)`.
struct AppTerm {
  std::string fn;
  std::vector<std::string> indices;
  std::optional<Sort> as_sort;
  std::vector<Term> args;
  Sort sort;
};

struct QuantTerm {
  Quantifier quantifier;
  std::vector<TypedName> bound;
  Term body;
};

struct LetTerm {
  std::vector<std::pair<std::string, Term>> bindings;
  Term body;
};

struct OldTerm {
  Term inner;
};

struct ModalTerm {
  Mode mode;
  Program program;
  Term post;
};

struct TermNode {
  std::variant<VarTerm, LitTerm, AppTerm, QuantTerm, LetTerm, OldTerm, ModalTerm> v;
  Pos pos;
};

struct AssignStmt {
  std::vector<std::pair<TypedName, Term>> bindings;
};

struct SpecStmt {
  std::vector<TypedName> vars;
  Term pre;
  Term post;
};

struct BlockStmt {
  std::vector<Program> body;
};

struct IfStmt {
  Term test;
  Program then_branch;
  Program else_branch;
};

struct WhileStmt {
  Term test;
  Program body;
  std::optional<Term> measure;
  std::optional<Term> pre;
  std::optional<Term> post;
};

struct ProgramNode {
  std::variant<AssignStmt, SpecStmt, BlockStmt, IfStmt, WhileStmt> v;
  Pos pos;
};

template <class T>
const T* Term::as() const {
  return node_ ? std::get_if<T>(&node_->v) : nullptr;
}

template <class T>
const T* Program::as() const {
  return node_ ? std::get_if<T>(&node_->v) : nullptr;
}

/// Builds an application whose sort is Bool; convenience for generated formulas.
Term mk_bool_app(std::string fn, std::vector<Term> args);
Term mk_and(std::vector<Term> args);
Term mk_implies(Term lhs, Term rhs);
Term mk_not(Term t);

SExpr to_sexpr(const Term& t);
SExpr to_sexpr(const Program& p);
std::string to_string(const Term& t);
std::string to_string(const Program& p);

// ---------------------------------------------------------------------------
// Commands

struct DeclareSortCmd {
  std::string name;
  int arity = 0;
};

struct DefineSortCmd {
  std::string name;
  std::vector<std::string> params;
  SExpr body;
};

struct DeclareConstCmd {
  std::string name;
  Sort sort;
};

struct DeclareFunCmd {
  std::string name;
  std::vector<Sort> args;
  Sort result;
};

struct DefineFunCmd {
  std::string name;
  std::vector<TypedName> params;
  Sort result;
  Term body;
};

struct DatatypeConstructor {
  std::string name;
  std::vector<TypedName> fields;
};

struct DatatypeDecl {
  std::string name;
  std::vector<DatatypeConstructor> constructors;
};

struct DeclareDatatypesCmd {
  std::vector<DatatypeDecl> types;
};

struct AssertCmd {
  Term term;
};

struct AssertCounterexampleCmd {
  Term pre;
  Program program;
  Term post;
};

struct CheckSatCmd {};

/// Any command outside the elaborated set; re-emitted as read.
struct RawCmd {};

struct Command {
  std::variant<DeclareSortCmd, DefineSortCmd, DeclareConstCmd, DeclareFunCmd, DefineFunCmd,
               DeclareDatatypesCmd, AssertCmd, AssertCounterexampleCmd, CheckSatCmd, RawCmd>
      v;
  // The form this command was read from; Raw commands print it verbatim.
  SExpr source;

  template <class T>
  const T* as() const {
    return std::get_if<T>(&v);
  }
  Pos pos() const { return source.pos(); }
};

using Script = std::vector<Command>;

/// Renders the elaborated form of a command.
SExpr to_sexpr(const Command& c);
bool equivalent(const Command& a, const Command& b);

}  // namespace wpgen
