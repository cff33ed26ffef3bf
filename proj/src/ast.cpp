#include "wpgen/ast.hpp"

namespace wpgen {

std::string_view to_string(Mode mode) {
  switch (mode) {
    case Mode::Wp: return "wp";
    case Mode::Box: return "box";
    case Mode::Dia: return "dia";
  }
  return "?";
}

SExpr Sort::to_sexpr() const {
  if (args.empty()) return SExpr::symbol(name);
  std::vector<SExpr> items{SExpr::symbol(name)};
  for (const auto& a : args) items.push_back(a.to_sexpr());
  return SExpr::list(std::move(items));
}

namespace {

template <class T>
Term make_term(T node, Pos pos) {
  return Term(std::make_shared<const TermNode>(TermNode{std::move(node), pos}));
}

template <class T>
Program make_program(T node, Pos pos) {
  return Program(std::make_shared<const ProgramNode>(ProgramNode{std::move(node), pos}));
}

const Sort& bool_sort() {
  static const Sort s = Sort::Bool();
  return s;
}

}  // namespace

Term Term::var(std::string name, Sort sort, Pos pos) {
  return make_term(VarTerm{std::move(name), std::move(sort)}, pos);
}

Term Term::literal(LitKind kind, std::string text, Sort sort, Pos pos) {
  return make_term(LitTerm{kind, std::move(text), std::move(sort)}, pos);
}

Term Term::boolean(bool value, Pos pos) {
  return literal(LitKind::Bool, value ? "true" : "false", Sort::Bool(), pos);
}

Term Term::numeral(long long value, Pos pos) {
  if (value < 0) {
    return app("-", {literal(LitKind::Numeral, std::to_string(-value), Sort::Int(), pos)},
               Sort::Int(), pos);
  }
  return literal(LitKind::Numeral, std::to_string(value), Sort::Int(), pos);
}

Term Term::app(std::string fn, std::vector<Term> args, Sort sort, Pos pos) {
  return make_term(AppTerm{std::move(fn), {}, std::nullopt, std::move(args), std::move(sort)},
                   pos);
}

Term Term::quant(Quantifier q, std::vector<TypedName> bound, Term body, Pos pos) {
  return make_term(QuantTerm{q, std::move(bound), std::move(body)}, pos);
}

Term Term::let(std::vector<std::pair<std::string, Term>> bindings, Term body, Pos pos) {
  return make_term(LetTerm{std::move(bindings), std::move(body)}, pos);
}

Term Term::old(Term inner, Pos pos) { return make_term(OldTerm{std::move(inner)}, pos); }

Term Term::modal(Mode mode, Program program, Term post, Pos pos) {
  return make_term(ModalTerm{mode, std::move(program), std::move(post)}, pos);
}

const Sort& Term::sort() const {
  return std::visit(
      [](const auto& n) -> const Sort& {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, VarTerm> || std::is_same_v<T, LitTerm> ||
                      std::is_same_v<T, AppTerm>) {
          return n.sort;
        } else if constexpr (std::is_same_v<T, LetTerm>) {
          return n.body.sort();
        } else if constexpr (std::is_same_v<T, OldTerm>) {
          return n.inner.sort();
        } else {
          return bool_sort();
        }
      },
      node_->v);
}

Pos Term::pos() const { return node_ ? node_->pos : Pos{}; }

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (!a.node_ || !b.node_) return false;
  const auto& x = a.node_->v;
  const auto& y = b.node_->v;
  if (x.index() != y.index()) return false;
  return std::visit(
      [&](const auto& n) -> bool {
        using T = std::decay_t<decltype(n)>;
        const auto& m = std::get<T>(y);
        if constexpr (std::is_same_v<T, VarTerm>) {
          return n.name == m.name && n.sort == m.sort;
        } else if constexpr (std::is_same_v<T, LitTerm>) {
          return n.kind == m.kind && n.text == m.text && n.sort == m.sort;
        } else if constexpr (std::is_same_v<T, AppTerm>) {
          return n.fn == m.fn && n.indices == m.indices && n.as_sort == m.as_sort &&
                 n.sort == m.sort && n.args == m.args;
        } else if constexpr (std::is_same_v<T, QuantTerm>) {
          return n.quantifier == m.quantifier && n.bound == m.bound && n.body == m.body;
        } else if constexpr (std::is_same_v<T, LetTerm>) {
          return n.bindings == m.bindings && n.body == m.body;
        } else if constexpr (std::is_same_v<T, OldTerm>) {
          return n.inner == m.inner;
        } else {
          return n.mode == m.mode && n.program == m.program && n.post == m.post;
        }
      },
      x);
}

Program Program::assign(std::vector<std::pair<TypedName, Term>> bindings, Pos pos) {
  return make_program(AssignStmt{std::move(bindings)}, pos);
}

Program Program::spec(std::vector<TypedName> vars, Term pre, Term post, Pos pos) {
  return make_program(SpecStmt{std::move(vars), std::move(pre), std::move(post)}, pos);
}

Program Program::block(std::vector<Program> body, Pos pos) {
  return make_program(BlockStmt{std::move(body)}, pos);
}

Program Program::if_(Term test, Program then_branch, Program else_branch, Pos pos) {
  return make_program(IfStmt{std::move(test), std::move(then_branch), std::move(else_branch)},
                      pos);
}

Program Program::while_(Term test, Program body, std::optional<Term> measure,
                        std::optional<Term> pre, std::optional<Term> post, Pos pos) {
  return make_program(WhileStmt{std::move(test), std::move(body), std::move(measure),
                                std::move(pre), std::move(post)},
                      pos);
}

Pos Program::pos() const { return node_ ? node_->pos : Pos{}; }

bool operator==(const Program& a, const Program& b) {
  if (a.node_ == b.node_) return true;
  if (!a.node_ || !b.node_) return false;
  const auto& x = a.node_->v;
  const auto& y = b.node_->v;
  if (x.index() != y.index()) return false;
  return std::visit(
      [&](const auto& n) -> bool {
        using T = std::decay_t<decltype(n)>;
        const auto& m = std::get<T>(y);
        if constexpr (std::is_same_v<T, AssignStmt>) {
          return n.bindings == m.bindings;
        } else if constexpr (std::is_same_v<T, SpecStmt>) {
          return n.vars == m.vars && n.pre == m.pre && n.post == m.post;
        } else if constexpr (std::is_same_v<T, BlockStmt>) {
          return n.body == m.body;
        } else if constexpr (std::is_same_v<T, IfStmt>) {
          return n.test == m.test && n.then_branch == m.then_branch &&
                 n.else_branch == m.else_branch;
        } else {
          return n.test == m.test && n.body == m.body && n.measure == m.measure &&
                 n.pre == m.pre && n.post == m.post;
        }
      },
      x);
}

Term mk_bool_app(std::string fn, std::vector<Term> args) {
  return Term::app(std::move(fn), std::move(args), Sort::Bool());
}

Term mk_and(std::vector<Term> args) { return mk_bool_app("and", std::move(args)); }

Term mk_implies(Term lhs, Term rhs) { return mk_bool_app("=>", {std::move(lhs), std::move(rhs)}); }

Term mk_not(Term t) { return mk_bool_app("not", {std::move(t)}); }

// ---------------------------------------------------------------------------
// Printing

namespace {

SExpr sym(std::string_view s) { return SExpr::symbol(std::string(s)); }

SExpr binder_list(const std::vector<TypedName>& names) {
  std::vector<SExpr> items;
  for (const auto& n : names) items.push_back(SExpr::list({sym(n.name), n.sort.to_sexpr()}));
  return SExpr::list(std::move(items));
}

AtomKind atom_kind(LitKind k) {
  switch (k) {
    case LitKind::Numeral: return AtomKind::Numeral;
    case LitKind::Decimal: return AtomKind::Decimal;
    case LitKind::Bool: return AtomKind::Symbol;
  }
  return AtomKind::Symbol;
}

SExpr app_head(const AppTerm& a) {
  SExpr head = sym(a.fn);
  if (!a.indices.empty()) {
    std::vector<SExpr> items{sym("_"), head};
    for (const auto& i : a.indices) {
      auto parsed = parse_sexprs(i);
      items.push_back(parsed.size() == 1 ? parsed.front() : sym(i));
    }
    head = SExpr::list(std::move(items));
  }
  if (a.as_sort) head = SExpr::list({sym("as"), head, a.as_sort->to_sexpr()});
  return head;
}

}  // namespace

SExpr to_sexpr(const Term& t) {
  return std::visit(
      [&](const auto& n) -> SExpr {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, VarTerm>) {
          return sym(n.name);
        } else if constexpr (std::is_same_v<T, LitTerm>) {
          return SExpr::atom(atom_kind(n.kind), n.text);
        } else if constexpr (std::is_same_v<T, AppTerm>) {
          SExpr head = app_head(n);
          if (n.args.empty()) return head;
          std::vector<SExpr> items{head};
          for (const auto& a : n.args) items.push_back(to_sexpr(a));
          return SExpr::list(std::move(items));
        } else if constexpr (std::is_same_v<T, QuantTerm>) {
          return SExpr::list({sym(n.quantifier == Quantifier::Forall ? "forall" : "exists"),
                              binder_list(n.bound), to_sexpr(n.body)});
        } else if constexpr (std::is_same_v<T, LetTerm>) {
          std::vector<SExpr> binds;
          for (const auto& [name, value] : n.bindings)
            binds.push_back(SExpr::list({sym(name), to_sexpr(value)}));
          return SExpr::list({sym("let"), SExpr::list(std::move(binds)), to_sexpr(n.body)});
        } else if constexpr (std::is_same_v<T, OldTerm>) {
          return SExpr::list({sym("old"), to_sexpr(n.inner)});
        } else {
          return SExpr::list({sym(to_string(n.mode)), to_sexpr(n.program), to_sexpr(n.post)});
        }
      },
      t.node().v);
}

SExpr to_sexpr(const Program& p) {
  return std::visit(
      [&](const auto& n) -> SExpr {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, AssignStmt>) {
          std::vector<SExpr> items{sym("assign")};
          for (const auto& [target, value] : n.bindings)
            items.push_back(SExpr::list({sym(target.name), to_sexpr(value)}));
          return SExpr::list(std::move(items));
        } else if constexpr (std::is_same_v<T, SpecStmt>) {
          std::vector<SExpr> vars;
          for (const auto& v : n.vars) vars.push_back(sym(v.name));
          return SExpr::list(
              {sym("spec"), SExpr::list(std::move(vars)), to_sexpr(n.pre), to_sexpr(n.post)});
        } else if constexpr (std::is_same_v<T, BlockStmt>) {
          std::vector<SExpr> items{sym("block")};
          for (const auto& s : n.body) items.push_back(to_sexpr(s));
          return SExpr::list(std::move(items));
        } else if constexpr (std::is_same_v<T, IfStmt>) {
          return SExpr::list({sym("if"), to_sexpr(n.test), to_sexpr(n.then_branch),
                              to_sexpr(n.else_branch)});
        } else {
          std::vector<SExpr> items{sym("while"), to_sexpr(n.test), to_sexpr(n.body)};
          if (n.measure) {
            items.push_back(SExpr::keyword(":termination"));
            items.push_back(to_sexpr(*n.measure));
          }
          if (n.pre) {
            items.push_back(SExpr::keyword(":precondition"));
            items.push_back(to_sexpr(*n.pre));
          }
          if (n.post) {
            items.push_back(SExpr::keyword(":postcondition"));
            items.push_back(to_sexpr(*n.post));
          }
          return SExpr::list(std::move(items));
        }
      },
      p.node().v);
}

std::string to_string(const Term& t) { return print_sexpr(to_sexpr(t)); }
std::string to_string(const Program& p) { return print_sexpr(to_sexpr(p)); }

SExpr to_sexpr(const Command& c) {
  return std::visit(
      [&](const auto& n) -> SExpr {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, DeclareSortCmd>) {
          return SExpr::list({sym("declare-sort"), sym(n.name),
                              SExpr::atom(AtomKind::Numeral, std::to_string(n.arity))});
        } else if constexpr (std::is_same_v<T, DefineSortCmd>) {
          std::vector<SExpr> params;
          for (const auto& p : n.params) params.push_back(sym(p));
          return SExpr::list(
              {sym("define-sort"), sym(n.name), SExpr::list(std::move(params)), n.body});
        } else if constexpr (std::is_same_v<T, DeclareConstCmd>) {
          return SExpr::list({sym("declare-const"), sym(n.name), n.sort.to_sexpr()});
        } else if constexpr (std::is_same_v<T, DeclareFunCmd>) {
          std::vector<SExpr> args;
          for (const auto& a : n.args) args.push_back(a.to_sexpr());
          return SExpr::list({sym("declare-fun"), sym(n.name), SExpr::list(std::move(args)),
                              n.result.to_sexpr()});
        } else if constexpr (std::is_same_v<T, DefineFunCmd>) {
          return SExpr::list({sym("define-fun"), sym(n.name), binder_list(n.params),
                              n.result.to_sexpr(), to_sexpr(n.body)});
        } else if constexpr (std::is_same_v<T, DeclareDatatypesCmd>) {
          std::vector<SExpr> heads;
          std::vector<SExpr> bodies;
          for (const auto& d : n.types) {
            heads.push_back(SExpr::list({sym(d.name), SExpr::atom(AtomKind::Numeral, "0")}));
            std::vector<SExpr> ctors;
            for (const auto& ctor : d.constructors) {
              std::vector<SExpr> items{sym(ctor.name)};
              for (const auto& f : ctor.fields)
                items.push_back(SExpr::list({sym(f.name), f.sort.to_sexpr()}));
              ctors.push_back(SExpr::list(std::move(items)));
            }
            bodies.push_back(SExpr::list(std::move(ctors)));
          }
          return SExpr::list({sym("declare-datatypes"), SExpr::list(std::move(heads)),
                              SExpr::list(std::move(bodies))});
        } else if constexpr (std::is_same_v<T, AssertCmd>) {
          return SExpr::list({sym("assert"), to_sexpr(n.term)});
        } else if constexpr (std::is_same_v<T, AssertCounterexampleCmd>) {
          return SExpr::list({sym("assert-counterexample"), to_sexpr(n.pre),
                              to_sexpr(n.program), to_sexpr(n.post)});
        } else if constexpr (std::is_same_v<T, CheckSatCmd>) {
          return SExpr::list({sym("check-sat")});
        } else {
          return c.source;
        }
      },
      c.v);
}

bool equivalent(const Command& a, const Command& b) {
  if (a.v.index() != b.v.index()) return false;
  return to_sexpr(a) == to_sexpr(b);
}

}  // namespace wpgen
