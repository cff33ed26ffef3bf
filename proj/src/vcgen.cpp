#include "wpgen/vcgen.hpp"

namespace wpgen {

struct VcGen::Stmts {
  Program head;
  StmtList tail;
};

namespace {

// Overrides the given names in a copy of `base`.
OldMap with_vars(OldMap base, const std::vector<TypedName>& vars,
                 const std::vector<TypedName>& values) {
  for (std::size_t i = 0; i < vars.size(); ++i) {
    base[vars[i].name] = Term::var(values[i].name, values[i].sort);
  }
  return base;
}

Term close_over(Quantifier q, const std::vector<TypedName>& vars, Term body) {
  if (vars.empty()) return body;
  return Term::quant(q, vars, std::move(body));
}

}  // namespace

std::vector<TypedName> VcGen::fresh_copies(const std::vector<TypedName>& vars) {
  std::vector<TypedName> out;
  out.reserve(vars.size());
  for (const auto& v : vars) out.push_back({names_.fresh(v.name), v.sort});
  return out;
}

Term VcGen::lower_term(const Term& t, const ExecState& st) {
  ModalHandler on_modal = [this](const ModalTerm& m, const Subst& env, const OldMap* old, Pos pos) {
    ExecState inner{env, old ? std::optional<OldMap>(*old) : std::nullopt};
    try {
      return reduce(m.mode, m.program, m.post, inner);
    } catch (const Error& e) {
      throw e.with_pos(pos);
    }
  };
  return rewrite(t, st.env, st.old ? &*st.old : nullptr, OldPolicy::Resolve, names_, &on_modal);
}

Term VcGen::reduce(Mode mode, const Program& p, const Term& post, const ExecState& st) {
  ExecState start = st;
  if (!start.old) start.old = start.env;
  Continuation k{std::make_shared<const Stmts>(Stmts{p, nullptr}), post, *start.old};
  return run(mode, k, start);
}

Term VcGen::reduce_spec(Mode mode, const SpecStmt& spec, const Term& post, const ExecState& st) {
  ExecState start = st;
  if (!start.old) start.old = start.env;
  return spec_rule(mode, spec, Continuation{nullptr, post, *start.old}, start);
}

Term VcGen::reduce_while(Mode mode, const Program& loop, const Term& post, const ExecState& st) {
  ExecState start = st;
  if (!start.old) start.old = start.env;
  return while_rule(mode, loop, Continuation{nullptr, post, *start.old}, start);
}

Term VcGen::run(Mode mode, const Continuation& k, const ExecState& st) {
  if (!k.stmts) return lower_term(k.post, ExecState{st.env, k.post_old});

  const Program& p = k.stmts->head;
  Continuation rest{k.stmts->tail, k.post, k.post_old};

  if (const auto* a = p.as<AssignStmt>()) {
    ExecState next = st;
    for (const auto& [target, rhs] : a->bindings) next.env[target.name] = lower_term(rhs, st);
    return run(mode, rest, next);
  }
  if (const auto* b = p.as<BlockStmt>()) {
    StmtList list = rest.stmts;
    for (auto it = b->body.rbegin(); it != b->body.rend(); ++it)
      list = std::make_shared<const Stmts>(Stmts{*it, list});
    return run(mode, Continuation{list, k.post, k.post_old}, st);
  }
  if (const auto* i = p.as<IfStmt>()) {
    Term test = lower_term(i->test, st);
    Continuation then_k{std::make_shared<const Stmts>(Stmts{i->then_branch, rest.stmts}), k.post,
                        k.post_old};
    Continuation else_k{std::make_shared<const Stmts>(Stmts{i->else_branch, rest.stmts}), k.post,
                        k.post_old};
    return mk_and({mk_implies(test, run(mode, then_k, st)),
                   mk_implies(mk_not(test), run(mode, else_k, st))});
  }
  if (const auto* s = p.as<SpecStmt>()) return spec_rule(mode, *s, rest, st);
  return while_rule(mode, p, rest, st);
}

Term VcGen::spec_rule(Mode mode, const SpecStmt& spec, const Continuation& k, const ExecState& st) {
  Term pre = lower_term(spec.pre, st);
  std::vector<TypedName> copies = fresh_copies(spec.vars);

  ExecState after = st;
  for (std::size_t i = 0; i < spec.vars.size(); ++i)
    after.env[spec.vars[i].name] = Term::var(copies[i].name, copies[i].sort);

  // Within the statement's postcondition, old is the statement's pre-state.
  Term post = lower_term(spec.post, ExecState{after.env, OldMap(st.env)});
  Term rest = run(mode, k, after);

  if (mode == Mode::Dia && !options_.dia_spec_universal) {
    return mk_and({pre, close_over(Quantifier::Exists, copies, mk_and({post, rest}))});
  }
  if (mode == Mode::Dia) {
    return mk_and({pre, close_over(Quantifier::Forall, copies, mk_and({post, rest}))});
  }
  return mk_and({pre, close_over(Quantifier::Forall, copies, mk_implies(post, rest))});
}

Term VcGen::while_rule(Mode mode, const Program& loop_program, const Continuation& k,
                       const ExecState& st) {
  const auto& loop = *loop_program.as<WhileStmt>();
  const Pos pos = loop_program.pos();
  if (mode == Mode::Dia) {
    throw Error(ErrorCode::DiaLoop, "dia over while loops is unsupported: no proof rule exists",
                pos);
  }
  if (!loop.post) throw Error(ErrorCode::NoPost, "loop needs a :postcondition", pos);
  if (mode == Mode::Wp && !loop.measure) {
    throw Error(ErrorCode::NoMeasure, "wp over a loop needs a :termination measure", pos);
  }
  if (loop.measure && contains_old(*loop.measure)) {
    throw Error(ErrorCode::OldContext, "'old' is not allowed in a termination measure",
                loop.measure->pos());
  }

  const std::vector<TypedName> modified = modified_vars(loop.body);
  const Term pre = loop.pre ? *loop.pre : Term::boolean(true);
  const Term& post = *loop.post;
  const SpecStmt contract{modified, pre, post};

  // The whole loop abstracted by its contract.
  Term abstracted = spec_rule(Mode::Box, contract, k, st);

  // An arbitrary iteration state.
  const std::vector<TypedName> iter = fresh_copies(modified);
  ExecState st2;
  st2.env = with_vars(st.env, modified, iter);
  st2.old = st2.env;
  Term pre2 = lower_term(pre, st2);
  Term test2 = lower_term(loop.test, st2);

  // Base case: the loop exits immediately; old in the target is this state.
  Term base_target;
  if (options_.base_case == VcOptions::BaseCase::Continuation) {
    ExecState exit_state{st2.env, with_vars(st.old ? *st.old : st.env, modified, iter)};
    Continuation exit_k{k.stmts, k.post, with_vars(k.post_old, modified, iter)};
    base_target = run(mode, exit_k, exit_state);
  } else {
    base_target = lower_term(post, st2);
  }
  Term base = close_over(Quantifier::Forall, iter,
                         mk_implies(mk_and({pre2, mk_not(test2)}), base_target));

  // Inductive case: one body execution, then the remaining iterations as the contract.
  Program body_then_rest =
      Program::block({loop.body, Program::spec(modified, pre, post, pos)}, pos);
  Term step_target = reduce(mode, body_then_rest, post, st2);
  Term step = close_over(Quantifier::Forall, iter,
                         mk_implies(mk_and({pre2, test2}), step_target));

  std::vector<Term> premises{abstracted, base, step};

  if (mode == Mode::Wp) {
    // Termination: the measure is nonnegative on entry to an iteration and
    // strictly smaller after the body.
    // The entry value is held in a placeholder so that it is not rewritten
    // again by the body's state updates.
    Term entry = lower_term(*loop.measure, st2);
    Term held = Term::var(names_.fresh("measure"), Sort::Int());
    Term decreased = Term::app("<", {*loop.measure, held}, Sort::Bool());
    Term body_decreases = reduce(Mode::Wp, loop.body, decreased, st2);
    body_decreases = substitute(body_decreases, {{held.as<VarTerm>()->name, entry}}, names_);
    Term bounded = Term::app(">=", {entry, Term::numeral(0)}, Sort::Bool());
    premises.push_back(close_over(Quantifier::Forall, iter,
                                  mk_implies(mk_and({pre2, test2}),
                                             mk_and({bounded, body_decreases}))));
  }
  return mk_and(std::move(premises));
}

Program infer_loop_contract(const Program& p, const Term& pre, const Term& post) {
  Program loop = p;
  while (const auto* b = loop.as<BlockStmt>()) {
    if (b->body.size() != 1) return p;
    loop = b->body.front();
  }
  const auto* w = loop.as<WhileStmt>();
  if (!w) return p;
  return Program::while_(w->test, w->body, w->measure, w->pre ? w->pre : pre,
                         w->post ? w->post : post, loop.pos());
}

Term lower_assert_counterexample(const Term& pre, const Program& p, const Term& post, VcGen& vc) {
  Program inferred = infer_loop_contract(p, pre, post);
  ExecState st = ExecState::identity();
  Term lhs = vc.lower_term(pre, st);
  Term rhs = vc.reduce(Mode::Wp, inferred, post, st);
  return mk_not(mk_implies(lhs, rhs));
}

namespace {

SExpr assert_form(const Term& t, Pos pos) {
  return SExpr::list({SExpr::symbol("assert"), to_sexpr(t)}, pos);
}

}  // namespace

Script process_script(const Script& script, const SymbolTable& table, NameSupply& names,
                      VcOptions options) {
  for (const auto& g : table.global_names()) names.reserve(g);
  for (const auto& c : script) {
    if (const auto* a = c.as<AssertCmd>()) names.reserve_symbols(a->term);
    if (const auto* a = c.as<AssertCounterexampleCmd>()) {
      names.reserve_symbols(a->pre);
      names.reserve_symbols(a->program);
      names.reserve_symbols(a->post);
    }
    if (const auto* d = c.as<DefineFunCmd>()) names.reserve_symbols(d->body);
  }

  VcGen vc(names, options);
  Script out;
  out.reserve(script.size());
  for (const auto& c : script) {
    try {
      if (const auto* a = c.as<AssertCounterexampleCmd>()) {
        Term t = lower_assert_counterexample(a->pre, a->program, a->post, vc);
        out.push_back(Command{AssertCmd{t}, assert_form(t, c.pos())});
      } else if (const auto* a = c.as<AssertCmd>();
                 a && (contains_modal(a->term) || contains_old(a->term))) {
        Term t = vc.lower_term(a->term, ExecState::no_old());
        out.push_back(Command{AssertCmd{t}, assert_form(t, c.pos())});
      } else if (const auto* d = c.as<DefineFunCmd>();
                 d && (contains_modal(d->body) || contains_old(d->body))) {
        DefineFunCmd lowered = *d;
        lowered.body = vc.lower_term(d->body, ExecState::no_old());
        Command cmd{lowered, {}};
        cmd.source = to_sexpr(cmd);
        out.push_back(std::move(cmd));
      } else {
        out.push_back(c);
      }
    } catch (const Error& e) {
      throw e.with_pos(c.pos());
    }
  }
  return out;
}

Script process_script(const Script& script, const SymbolTable& table) {
  NameSupply names;
  return process_script(script, table, names);
}

std::string print_script(const Script& script) {
  std::string out;
  for (const auto& c : script) {
    out += print_sexpr(c.source);
    out += '\n';
  }
  return out;
}

}  // namespace wpgen
