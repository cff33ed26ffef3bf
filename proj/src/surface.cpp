#include "wpgen/surface.hpp"

#include <algorithm>
#include <array>
#include <set>

namespace wpgen {

namespace {

[[noreturn]] void fail(ErrorCode code, const std::string& msg, const SExpr& at) {
  throw Error(code, msg, at.pos());
}

std::string expect_symbol(const SExpr& e, std::string_view what) {
  if (!e.is_symbol()) fail(ErrorCode::Elab, "expected " + std::string(what), e);
  return e.symbol_name();
}

bool is_numeric(const Sort& s) { return s.is_int() || s.is_real(); }

class Elaborator {
 public:
  explicit Elaborator(SymbolTable& table) : table_(table) {}

  Term term(const SExpr& e) {
    if (e.is_atom()) return atom(e);
    if (e.empty()) fail(ErrorCode::Elab, "empty application", e);

    const SExpr& head = e[0];
    if (head.is_symbol()) {
      const std::string name = head.symbol_name();
      if (name == "wp" || name == "box" || name == "dia") return modal(e, name);
      if (name == "old") return old(e);
      if (name == "forall" || name == "exists") return quantifier(e, name);
      if (name == "let") return let(e);
      if (name == "as") return qualified(e, {});
      if (name == "_") fail(ErrorCode::Unsupported, "indexed identifiers are not supported", e);
      if (name == "!" || name == "match" || name == "lambda")
        fail(ErrorCode::Unsupported, "'" + name + "' terms are not supported", e);
      std::vector<Term> args;
      for (std::size_t i = 1; i < e.size(); ++i) args.push_back(term(e[i]));
      return apply(name, std::move(args), e);
    }

    std::vector<Term> args;
    for (std::size_t i = 1; i < e.size(); ++i) args.push_back(term(e[i]));
    if (head.has_head("as")) return qualified(head, std::move(args));
    if (head.has_head("_") && head.size() == 3 && head[1].is_symbol("is")) {
      std::string ctor = expect_symbol(head[2], "constructor name");
      const FunSig* sig = table_.lookup_fun(ctor);
      if (!sig || sig->kind != FunKind::Constructor)
        fail(ErrorCode::Undeclared, "unknown constructor '" + ctor + "'", head[2]);
      if (args.size() != 1) fail(ErrorCode::Arity, "tester expects one argument", e);
      if (!(args[0].sort() == sig->result)) fail(ErrorCode::Sort, "tester argument sort mismatch", e);
      AppTerm app{"is", {ctor}, std::nullopt, std::move(args), Sort::Bool()};
      return Term(std::make_shared<const TermNode>(TermNode{std::move(app), e.pos()}));
    }
    fail(ErrorCode::Unsupported, "unsupported application head '" + print_sexpr(head) + "'", e);
  }

  Program program(const SExpr& e) {
    if (!e.is_list() || e.empty() || !e[0].is_symbol())
      fail(ErrorCode::Elab, "expected a program, got '" + print_sexpr(e) + "'", e);
    const std::string head = e[0].symbol_name();
    if (head == "assign") return assign(e);
    if (head == "spec") return spec(e);
    if (head == "block") {
      std::vector<Program> body;
      for (std::size_t i = 1; i < e.size(); ++i) body.push_back(program(e[i]));
      return Program::block(std::move(body), e.pos());
    }
    if (head == "if") {
      if (e.size() != 4) fail(ErrorCode::Arity, "if expects a test and two branches", e);
      Term test = bool_term(e[1], "if test");
      Program then_branch = program(e[2]);
      Program else_branch = program(e[3]);
      return Program::if_(std::move(test), std::move(then_branch), std::move(else_branch),
                          e.pos());
    }
    if (head == "while") return while_loop(e);
    fail(ErrorCode::Elab, "unknown statement '" + head + "'", e);
  }

  Term bool_term(const SExpr& e, std::string_view what) {
    Term t = term(e);
    if (!t.sort().is_bool())
      fail(ErrorCode::Sort, std::string(what) + " must be Bool, got " + t.sort().str(), e);
    return t;
  }

  TypedName variable(const SExpr& e) {
    std::string name = expect_symbol(e, "a variable name");
    if (const Sort* s = table_.lookup_bound(name)) return {name, *s};
    if (const Sort* s = table_.lookup_const(name)) return {name, *s};
    fail(ErrorCode::Undeclared, "undeclared variable '" + name + "'", e);
  }

  std::vector<TypedName> binders(const SExpr& e) {
    if (!e.is_list()) fail(ErrorCode::Elab, "expected a binder list", e);
    std::vector<TypedName> out;
    for (const auto& b : e.items()) {
      if (!b.is_list() || b.size() != 2) fail(ErrorCode::Elab, "expected (name sort)", b);
      out.push_back({expect_symbol(b[0], "a bound name"), table_.resolve_sort(b[1])});
    }
    return out;
  }

 private:
  Term atom(const SExpr& e) {
    switch (e.kind()) {
      case AtomKind::Numeral:
        return Term::literal(LitKind::Numeral, e.text(), Sort::Int(), e.pos());
      case AtomKind::Decimal:
        return Term::literal(LitKind::Decimal, e.text(), Sort::Real(), e.pos());
      case AtomKind::Hexadecimal:
      case AtomKind::Binary:
      case AtomKind::String:
        fail(ErrorCode::Unsupported, "literal '" + e.text() + "' is outside the supported theories",
             e);
      case AtomKind::Keyword:
        fail(ErrorCode::Elab, "unexpected keyword '" + e.text() + "'", e);
      case AtomKind::Symbol:
      case AtomKind::QuotedSymbol:
        break;
    }
    const std::string name = e.symbol_name();
    if (const Sort* s = table_.lookup_bound(name)) return Term::var(name, *s, e.pos());
    if (name == "true" || name == "false") return Term::boolean(name == "true", e.pos());
    if (const Sort* s = table_.lookup_const(name)) return Term::var(name, *s, e.pos());
    if (const FunSig* f = table_.lookup_fun(name)) {
      if (!f->args.empty())
        fail(ErrorCode::Arity, "function '" + name + "' used without arguments", e);
      return Term::app(name, {}, f->result, e.pos());
    }
    fail(ErrorCode::Undeclared, "undeclared symbol '" + name + "'", e);
  }

  Term modal(const SExpr& e, const std::string& name) {
    if (e.size() != 3) fail(ErrorCode::Arity, name + " expects a program and a postcondition", e);
    Mode mode = name == "wp" ? Mode::Wp : name == "box" ? Mode::Box : Mode::Dia;
    Program p = program(e[1]);
    Term post = bool_term(e[2], "postcondition");
    return Term::modal(mode, std::move(p), std::move(post), e.pos());
  }

  Term old(const SExpr& e) {
    if (e.size() != 2) fail(ErrorCode::Arity, "old expects one argument", e);
    return Term::old(term(e[1]), e.pos());
  }

  Term quantifier(const SExpr& e, const std::string& name) {
    if (e.size() != 3) fail(ErrorCode::Arity, name + " expects binders and a body", e);
    auto bound = binders(e[1]);
    if (bound.empty()) fail(ErrorCode::Elab, name + " needs at least one binder", e);
    ScopeGuard guard(table_);
    for (const auto& b : bound) table_.bind(b.name, b.sort);
    Term body = bool_term(e[2], "quantifier body");
    return Term::quant(name == "forall" ? Quantifier::Forall : Quantifier::Exists,
                       std::move(bound), std::move(body), e.pos());
  }

  Term let(const SExpr& e) {
    if (e.size() != 3 || !e[1].is_list()) fail(ErrorCode::Elab, "malformed let", e);
    std::vector<std::pair<std::string, Term>> bindings;
    std::set<std::string> seen;
    for (const auto& b : e[1].items()) {
      if (!b.is_list() || b.size() != 2) fail(ErrorCode::Elab, "expected (name term)", b);
      std::string name = expect_symbol(b[0], "a let name");
      if (!seen.insert(name).second) fail(ErrorCode::Elab, "duplicate let binding", b);
      bindings.emplace_back(name, term(b[1]));
    }
    if (bindings.empty()) fail(ErrorCode::Elab, "let needs at least one binding", e);
    ScopeGuard guard(table_);
    for (const auto& [name, value] : bindings) table_.bind(name, value.sort());
    Term body = term(e[2]);
    return Term::let(std::move(bindings), std::move(body), e.pos());
  }

  // (as f S) applied to `args` (possibly none).
  Term qualified(const SExpr& q, std::vector<Term> args) {
    if (q.size() != 3) fail(ErrorCode::Elab, "malformed qualified identifier", q);
    std::string name = expect_symbol(q[1], "an identifier");
    Sort sort = table_.resolve_sort(q[2]);
    if (name == "const") {
      if (!sort.is_array()) fail(ErrorCode::Sort, "(as const S) needs an array sort", q);
      if (args.size() != 1) fail(ErrorCode::Arity, "constant array takes one argument", q);
      if (!(args[0].sort() == sort.args[1])) fail(ErrorCode::Sort, "constant array element sort", q);
    } else {
      const FunSig* f = table_.lookup_fun(name);
      if (!f) fail(ErrorCode::Undeclared, "undeclared symbol '" + name + "'", q);
      if (!(f->result == sort)) fail(ErrorCode::Sort, "qualified sort mismatch", q);
      check_args(name, f->args, args, q);
    }
    AppTerm app{name, {}, sort, std::move(args), sort};
    return Term(std::make_shared<const TermNode>(TermNode{std::move(app), q.pos()}));
  }

  void check_args(const std::string& name, const std::vector<Sort>& expected,
                  const std::vector<Term>& args, const SExpr& at) {
    if (expected.size() != args.size()) {
      fail(ErrorCode::Arity,
           "'" + name + "' expects " + std::to_string(expected.size()) + " arguments, got " +
               std::to_string(args.size()),
           at);
    }
    for (std::size_t i = 0; i < args.size(); ++i) {
      if (!(args[i].sort() == expected[i])) {
        fail(ErrorCode::Sort,
             "argument " + std::to_string(i + 1) + " of '" + name + "' has sort " +
                 args[i].sort().str() + ", expected " + expected[i].str(),
             at);
      }
    }
  }

  void need_arity(const std::string& name, const std::vector<Term>& args, std::size_t lo,
                  std::size_t hi, const SExpr& at) {
    if (args.size() < lo || args.size() > hi) {
      std::string want = lo == hi ? std::to_string(lo) : "at least " + std::to_string(lo);
      fail(ErrorCode::Arity, "'" + name + "' expects " + want + " arguments", at);
    }
  }

  void need_sort(const std::string& name, const std::vector<Term>& args, bool (*ok)(const Sort&),
                 std::string_view what, const SExpr& at) {
    for (const auto& a : args) {
      if (!ok(a.sort()))
        fail(ErrorCode::Sort, "'" + name + "' expects " + std::string(what) + " arguments", at);
    }
  }

  static Sort numeric_result(const std::vector<Term>& args) {
    bool real = std::any_of(args.begin(), args.end(), [](const Term& t) { return t.sort().is_real(); });
    return real ? Sort::Real() : Sort::Int();
  }

  Term apply(const std::string& name, std::vector<Term> args, const SExpr& e) {
    constexpr std::size_t kMany = static_cast<std::size_t>(-1);
    auto is_bool = [](const Sort& s) { return s.is_bool(); };
    auto is_num = [](const Sort& s) { return is_numeric(s); };
    auto is_int = [](const Sort& s) { return s.is_int(); };
    Pos pos = e.pos();

    if (name == "not") {
      need_arity(name, args, 1, 1, e);
      need_sort(name, args, is_bool, "Bool", e);
      return Term::app(name, std::move(args), Sort::Bool(), pos);
    }
    if (name == "and" || name == "or") {
      need_sort(name, args, is_bool, "Bool", e);
      return Term::app(name, std::move(args), Sort::Bool(), pos);
    }
    if (name == "=>" || name == "xor") {
      need_arity(name, args, 2, kMany, e);
      need_sort(name, args, is_bool, "Bool", e);
      return Term::app(name, std::move(args), Sort::Bool(), pos);
    }
    if (name == "=" || name == "distinct") {
      need_arity(name, args, 2, kMany, e);
      for (const auto& a : args) {
        bool same = a.sort() == args[0].sort() || (is_numeric(a.sort()) && is_numeric(args[0].sort()));
        if (!same) fail(ErrorCode::Sort, "'" + name + "' arguments must share a sort", e);
      }
      return Term::app(name, std::move(args), Sort::Bool(), pos);
    }
    if (name == "ite") {
      need_arity(name, args, 3, 3, e);
      if (!args[0].sort().is_bool()) fail(ErrorCode::Sort, "ite condition must be Bool", e);
      if (!(args[1].sort() == args[2].sort())) fail(ErrorCode::Sort, "ite branches differ in sort", e);
      Sort s = args[1].sort();
      return Term::app(name, std::move(args), std::move(s), pos);
    }
    if (name == "+" || name == "*" || name == "-") {
      need_arity(name, args, 1, kMany, e);
      need_sort(name, args, is_num, "numeric", e);
      Sort s = numeric_result(args);
      return Term::app(name, std::move(args), std::move(s), pos);
    }
    if (name == "/") {
      need_arity(name, args, 2, kMany, e);
      need_sort(name, args, is_num, "numeric", e);
      return Term::app(name, std::move(args), Sort::Real(), pos);
    }
    if (name == "div" || name == "mod") {
      need_arity(name, args, 2, name == "mod" ? 2 : kMany, e);
      need_sort(name, args, is_int, "Int", e);
      return Term::app(name, std::move(args), Sort::Int(), pos);
    }
    if (name == "abs") {
      need_arity(name, args, 1, 1, e);
      need_sort(name, args, is_int, "Int", e);
      return Term::app(name, std::move(args), Sort::Int(), pos);
    }
    if (name == "<" || name == "<=" || name == ">" || name == ">=") {
      need_arity(name, args, 2, kMany, e);
      need_sort(name, args, is_num, "numeric", e);
      return Term::app(name, std::move(args), Sort::Bool(), pos);
    }
    if (name == "to_real") {
      need_arity(name, args, 1, 1, e);
      need_sort(name, args, is_int, "Int", e);
      return Term::app(name, std::move(args), Sort::Real(), pos);
    }
    if (name == "to_int" || name == "is_int") {
      need_arity(name, args, 1, 1, e);
      need_sort(name, args, [](const Sort& s) { return s.is_real(); }, "Real", e);
      return Term::app(name, std::move(args), name == "to_int" ? Sort::Int() : Sort::Bool(), pos);
    }
    if (name == "select") {
      need_arity(name, args, 2, 2, e);
      const Sort& a = args[0].sort();
      if (!a.is_array()) fail(ErrorCode::Sort, "select expects an array", e);
      if (!(args[1].sort() == a.args[0])) fail(ErrorCode::Sort, "select index sort mismatch", e);
      Sort s = a.args[1];
      return Term::app(name, std::move(args), std::move(s), pos);
    }
    if (name == "store") {
      need_arity(name, args, 3, 3, e);
      const Sort& a = args[0].sort();
      if (!a.is_array()) fail(ErrorCode::Sort, "store expects an array", e);
      if (!(args[1].sort() == a.args[0])) fail(ErrorCode::Sort, "store index sort mismatch", e);
      if (!(args[2].sort() == a.args[1])) fail(ErrorCode::Sort, "store element sort mismatch", e);
      Sort s = a;
      return Term::app(name, std::move(args), std::move(s), pos);
    }
    if (name == "true" || name == "false" || name == "old" || name == "const")
      fail(ErrorCode::Arity, "'" + name + "' cannot be applied", e);

    if (table_.lookup_bound(name) || table_.lookup_const(name))
      fail(ErrorCode::Arity, "constant '" + name + "' cannot be applied", e);
    const FunSig* f = table_.lookup_fun(name);
    if (!f) fail(ErrorCode::Undeclared, "undeclared function '" + name + "'", e[0]);
    check_args(name, f->args, args, e);
    return Term::app(name, std::move(args), f->result, pos);
  }

  Program assign(const SExpr& e) {
    // Both (assign (x t) (y u)) and (assign ((x t) (y u))) are accepted.
    std::vector<SExpr> forms(e.items().begin() + 1, e.items().end());
    if (forms.size() == 1 && forms[0].is_list() && !forms[0].empty() && forms[0][0].is_list())
      forms = forms[0].items();
    if (forms.empty()) fail(ErrorCode::Arity, "assign needs at least one binding", e);

    std::vector<std::pair<TypedName, Term>> bindings;
    std::set<std::string> seen;
    for (const auto& b : forms) {
      if (!b.is_list() || b.size() != 2) fail(ErrorCode::Elab, "expected (variable term)", b);
      TypedName target = variable(b[0]);
      if (!seen.insert(target.name).second)
        fail(ErrorCode::DupTarget, "variable '" + target.name + "' assigned twice", b[0]);
      Term rhs = term(b[1]);
      if (!(rhs.sort() == target.sort)) {
        fail(ErrorCode::Sort,
             "cannot assign " + rhs.sort().str() + " to '" + target.name + "' of sort " +
                 target.sort.str(),
             b);
      }
      bindings.emplace_back(std::move(target), std::move(rhs));
    }
    return Program::assign(std::move(bindings), e.pos());
  }

  Program spec(const SExpr& e) {
    if (e.size() != 4 || !e[1].is_list())
      fail(ErrorCode::Arity, "spec expects (vars) precondition postcondition", e);
    std::vector<TypedName> vars;
    std::set<std::string> seen;
    for (const auto& v : e[1].items()) {
      TypedName tn = variable(v);
      if (!seen.insert(tn.name).second)
        fail(ErrorCode::DupTarget, "variable '" + tn.name + "' listed twice", v);
      vars.push_back(std::move(tn));
    }
    Term pre = bool_term(e[2], "spec precondition");
    Term post = bool_term(e[3], "spec postcondition");
    return Program::spec(std::move(vars), std::move(pre), std::move(post), e.pos());
  }

  Program while_loop(const SExpr& e) {
    if (e.size() < 3) fail(ErrorCode::Arity, "while expects a test and a body", e);
    Term test = bool_term(e[1], "loop test");
    Program body = program(e[2]);
    std::optional<Term> measure, pre, post;
    for (std::size_t i = 3; i < e.size(); i += 2) {
      const SExpr& key = e[i];
      if (!key.is_keyword()) fail(ErrorCode::Elab, "expected a loop attribute", key);
      if (i + 1 >= e.size()) fail(ErrorCode::Elab, "attribute '" + key.text() + "' has no value", key);
      const SExpr& value = e[i + 1];
      std::optional<Term>* slot = nullptr;
      if (key.text() == ":termination") slot = &measure;
      else if (key.text() == ":precondition") slot = &pre;
      else if (key.text() == ":postcondition") slot = &post;
      else fail(ErrorCode::UnknownAttr, "unknown loop attribute '" + key.text() + "'", key);
      if (*slot) fail(ErrorCode::DupAttr, "duplicate loop attribute '" + key.text() + "'", key);
      if (slot == &measure) {
        Term t = term(value);
        if (!t.sort().is_int())
          fail(ErrorCode::Sort, "termination measure must be Int, got " + t.sort().str(), value);
        *slot = std::move(t);
      } else {
        *slot = bool_term(value, key.text());
      }
    }
    return Program::while_(std::move(test), std::move(body), std::move(measure), std::move(pre),
                           std::move(post), e.pos());
  }

  SymbolTable& table_;
};

// ---------------------------------------------------------------------------
// Commands

Command make(decltype(Command::v) v, const SExpr& source) { return Command{std::move(v), source}; }

std::vector<Sort> sort_list(const SExpr& e, const SymbolTable& table) {
  if (!e.is_list()) fail(ErrorCode::Elab, "expected a sort list", e);
  std::vector<Sort> out;
  for (const auto& s : e.items()) out.push_back(table.resolve_sort(s));
  return out;
}

void need_size(const SExpr& e, std::size_t n, std::string_view what) {
  if (e.size() != n) fail(ErrorCode::Elab, "malformed " + std::string(what), e);
}

DeclareDatatypesCmd declare_datatypes(const SExpr& e, SymbolTable& table) {
  std::vector<std::string> names;
  std::vector<SExpr> bodies;
  const std::string head = e[0].symbol_name();
  if (head == "declare-datatype") {
    need_size(e, 3, "declare-datatype");
    names.push_back(expect_symbol(e[1], "a datatype name"));
    bodies.push_back(e[2]);
  } else {
    need_size(e, 3, "declare-datatypes");
    if (!e[1].is_list() || !e[2].is_list() || e[1].size() != e[2].size())
      fail(ErrorCode::Elab, "declare-datatypes needs matching sort and body lists", e);
    for (const auto& d : e[1].items()) {
      if (!d.is_list() || d.size() != 2)
        fail(ErrorCode::Elab, "expected (name arity) in declare-datatypes", d);
      if (d[1].text() != "0")
        fail(ErrorCode::Unsupported, "parametric datatypes are not supported", d);
      names.push_back(expect_symbol(d[0], "a datatype name"));
    }
    bodies = e[2].items();
  }

  for (std::size_t i = 0; i < names.size(); ++i) table.declare_datatype_sort(names[i], e.pos());

  DeclareDatatypesCmd out;
  for (std::size_t i = 0; i < names.size(); ++i) {
    const SExpr& body = bodies[i];
    if (body.has_head("par")) fail(ErrorCode::Unsupported, "parametric datatypes are not supported", body);
    if (!body.is_list() || body.empty()) fail(ErrorCode::Elab, "datatype needs constructors", body);
    DatatypeDecl decl{names[i], {}};
    Sort self{names[i], {}};
    for (const auto& c : body.items()) {
      DatatypeConstructor ctor;
      if (c.is_symbol()) {
        ctor.name = c.symbol_name();
      } else {
        if (!c.is_list() || c.empty()) fail(ErrorCode::Elab, "malformed constructor", c);
        ctor.name = expect_symbol(c[0], "a constructor name");
        for (std::size_t k = 1; k < c.size(); ++k) {
          const SExpr& f = c[k];
          if (!f.is_list() || f.size() != 2) fail(ErrorCode::Elab, "expected (selector sort)", f);
          ctor.fields.push_back({expect_symbol(f[0], "a selector"), table.resolve_sort(f[1])});
        }
      }
      FunSig sig{{}, self, FunKind::Constructor};
      for (const auto& f : ctor.fields) {
        sig.args.push_back(f.sort);
        table.declare_fun(f.name, FunSig{{self}, f.sort, FunKind::Selector}, c.pos());
      }
      table.declare_fun(ctor.name, sig, c.pos());
      table.declare_fun("is-" + ctor.name, FunSig{{self}, Sort::Bool(), FunKind::Tester}, c.pos());
      decl.constructors.push_back(std::move(ctor));
    }
    out.types.push_back(std::move(decl));
  }
  return out;
}

Command elaborate_command(const SExpr& e, SymbolTable& table) {
  if (!e.is_list() || e.empty() || !e[0].is_symbol())
    fail(ErrorCode::Elab, "expected a command, got '" + print_sexpr(e) + "'", e);
  const std::string head = e[0].symbol_name();
  Elaborator elab(table);

  if (head == "declare-sort") {
    if (e.size() != 2 && e.size() != 3) fail(ErrorCode::Elab, "malformed declare-sort", e);
    std::string name = expect_symbol(e[1], "a sort name");
    int arity = 0;
    if (e.size() == 3) {
      if (e[2].kind() != AtomKind::Numeral) fail(ErrorCode::Elab, "sort arity must be a numeral", e[2]);
      arity = std::stoi(e[2].text());
    }
    table.declare_sort(name, arity, e.pos());
    return make(DeclareSortCmd{name, arity}, e);
  }
  if (head == "define-sort") {
    need_size(e, 4, "define-sort");
    std::string name = expect_symbol(e[1], "a sort name");
    if (!e[2].is_list()) fail(ErrorCode::Elab, "expected sort parameters", e[2]);
    std::vector<std::string> params;
    for (const auto& p : e[2].items()) params.push_back(expect_symbol(p, "a sort parameter"));
    table.define_sort(name, params, e[3], e.pos());
    return make(DefineSortCmd{name, params, e[3]}, e);
  }
  if (head == "declare-const") {
    need_size(e, 3, "declare-const");
    std::string name = expect_symbol(e[1], "a constant name");
    Sort sort = table.resolve_sort(e[2]);
    table.declare_const(name, sort, e.pos());
    return make(DeclareConstCmd{name, sort}, e);
  }
  if (head == "declare-fun") {
    need_size(e, 4, "declare-fun");
    std::string name = expect_symbol(e[1], "a function name");
    std::vector<Sort> args = sort_list(e[2], table);
    Sort result = table.resolve_sort(e[3]);
    if (args.empty()) {
      table.declare_const(name, result, e.pos());
    } else {
      table.declare_fun(name, FunSig{args, result, FunKind::Declared}, e.pos());
    }
    return make(DeclareFunCmd{name, args, result}, e);
  }
  if (head == "define-fun") {
    need_size(e, 5, "define-fun");
    std::string name = expect_symbol(e[1], "a function name");
    std::vector<TypedName> params = elab.binders(e[2]);
    Sort result = table.resolve_sort(e[3]);
    Term body;
    {
      ScopeGuard guard(table);
      for (const auto& p : params) table.bind(p.name, p.sort);
      body = elab.term(e[4]);
    }
    if (!(body.sort() == result))
      fail(ErrorCode::Sort, "body of '" + name + "' has sort " + body.sort().str(), e[4]);
    FunSig sig{{}, result, FunKind::Defined};
    for (const auto& p : params) sig.args.push_back(p.sort);
    table.declare_fun(name, sig, e.pos());
    return make(DefineFunCmd{name, params, result, body}, e);
  }
  if (head == "declare-datatypes" || head == "declare-datatype") {
    return make(declare_datatypes(e, table), e);
  }
  if (head == "assert") {
    need_size(e, 2, "assert");
    return make(AssertCmd{elab.bool_term(e[1], "assertion")}, e);
  }
  if (head == "assert-counterexample") {
    if (e.size() != 4)
      fail(ErrorCode::Arity, "assert-counterexample expects precondition, program, postcondition", e);
    Term pre = elab.bool_term(e[1], "precondition");
    Program p = elab.program(e[2]);
    Term post = elab.bool_term(e[3], "postcondition");
    return make(AssertCounterexampleCmd{pre, p, post}, e);
  }
  if (head == "check-sat") {
    need_size(e, 1, "check-sat");
    return make(CheckSatCmd{}, e);
  }
  return make(RawCmd{}, e);
}

constexpr std::array<std::string_view, 7> kExtensionHeads = {
    "wp", "box", "dia", "old", "assign", "spec", "assert-counterexample"};

}  // namespace

bool mentions_extension(const SExpr& e) {
  if (e.is_atom()) return false;
  if (!e.empty() && e[0].is_symbol()) {
    const std::string name = e[0].symbol_name();
    for (auto h : kExtensionHeads) {
      if (h == name) return true;
    }
  }
  for (const auto& item : e.items()) {
    if (mentions_extension(item)) return true;
  }
  return false;
}

Script parse_script(const std::vector<SExpr>& forms, SymbolTable& table) {
  Script out;
  out.reserve(forms.size());
  for (const auto& form : forms) {
    try {
      out.push_back(elaborate_command(form, table));
    } catch (const Error& err) {
      // Plain SMT-LIB outside the supported theories is handed to the solver untouched.
      bool foreign = err.code() == ErrorCode::Unsupported || err.code() == ErrorCode::Undeclared;
      bool datatype = form.is_list() && form.size() > 0 &&
                      (form[0].is_symbol("declare-datatypes") || form[0].is_symbol("declare-datatype"));
      if (foreign && !datatype && !mentions_extension(form)) {
        out.push_back(Command{RawCmd{}, form});
        continue;
      }
      throw err.with_pos(form.pos());
    }
  }
  return out;
}

Script parse_script(std::string_view text, SymbolTable& table) {
  return parse_script(parse_sexprs(text), table);
}

Term elaborate_term(const SExpr& e, SymbolTable& scope) { return Elaborator(scope).term(e); }

Program elaborate_program(const SExpr& e, SymbolTable& scope) {
  return Elaborator(scope).program(e);
}

}  // namespace wpgen
