#include <sstream>

#include "wpgen/oracle.hpp"
#include "wpgen/surface.hpp"

namespace wpgen::oracle {

std::string Mismatch::line() const {
  std::ostringstream out;
  out << "MISMATCH mode=" << to_string(mode) << " state=" << to_string(state)
      << " oracle=" << to_string(oracle) << " formula=" << (formula ? "true" : "false")
      << " program=" << program << " post=" << post;
  return out.str();
}

std::string DiffReport::summary() const {
  std::ostringstream out;
  out << trials << " trials, " << checks << " checks, " << skipped_unknown << " unknown skipped, "
      << mismatches.size() << " mismatches";
  for (const auto& m : mismatches) out << "\n" << m.line();
  return out.str();
}

namespace {

constexpr Mode kModes[] = {Mode::Wp, Mode::Box, Mode::Dia};

// The first disagreement for `mode`, if any.
std::optional<Mismatch> compare(const Program& p, const Term& post, Mode mode,
                                const std::vector<State>& states, const DiffConfig& config,
                                long* checks, long* skipped) {
  NameSupply names;
  names.reserve_symbols(p);
  names.reserve_symbols(post);
  VcGen vc(names, config.options);
  Term reduced = vc.reduce(mode, p, post, ExecState::identity());

  for (const auto& s : states) {
    Tri expected = holds(mode, p, post, s, config.bound, config.fuel);
    if (expected == Tri::Unknown) {
      if (skipped) ++*skipped;
      continue;
    }
    if (checks) ++*checks;
    bool got = eval_formula(reduced, s, s, config.bound);
    if (got != (expected == Tri::True)) {
      return Mismatch{to_string(p), to_string(post), mode, s, expected, got};
    }
  }
  return std::nullopt;
}

struct Elaborated {
  Program program;
  Term post;
};

Elaborated elaborate(const SExpr& program, const SExpr& post, const DiffConfig& config) {
  SymbolTable table = int_table(config.vars);
  return {elaborate_program(program, table), elaborate_term(post, table)};
}

bool still_fails(const SExpr& program, const SExpr& post, Mode mode, const State& state,
                 const DiffConfig& config) {
  Elaborated e = elaborate(program, post, config);
  return compare(e.program, e.post, mode, {state}, config, nullptr, nullptr).has_value();
}

// Greedy shrinking: drop top-level statements and replace conditionals by a branch.
SExpr minimize(SExpr program, const SExpr& post, Mode mode, const State& state,
               const DiffConfig& config) {
  bool progress = true;
  while (progress) {
    progress = false;
    const auto& items = program.items();
    for (std::size_t i = 1; i < items.size() && !progress; ++i) {
      std::vector<SExpr> candidates;
      std::vector<SExpr> without = items;
      without.erase(without.begin() + static_cast<long>(i));
      candidates.push_back(SExpr::list(without));
      if (items[i].has_head("if")) {
        for (std::size_t b : {2u, 3u}) {
          std::vector<SExpr> replaced = items;
          replaced[i] = items[i][b];
          candidates.push_back(SExpr::list(replaced));
        }
      }
      for (const auto& c : candidates) {
        if (still_fails(c, post, mode, state, config)) {
          program = c;
          progress = true;
          break;
        }
      }
    }
  }
  return program;
}

}  // namespace

std::vector<Mismatch> check_one(const SExpr& program, const SExpr& post, const DiffConfig& config) {
  Elaborated e = elaborate(program, post, config);
  auto states = all_states(config.vars, config.bound);
  std::vector<Mismatch> out;
  for (Mode mode : kModes) {
    if (auto m = compare(e.program, e.post, mode, states, config, nullptr, nullptr)) out.push_back(*m);
  }
  return out;
}

DiffReport differential_check(const DiffConfig& config) {
  GenConfig gen;
  gen.vars = config.vars;
  gen.bound = config.bound;
  gen.max_stmts = config.max_stmts;
  ProgramGenerator generator(gen, config.seed);
  auto states = all_states(config.vars, config.bound);

  DiffReport report;
  for (int trial = 0; trial < config.trials; ++trial) {
    SExpr program = generator.program();
    SExpr post = generator.formula();
    Elaborated e = elaborate(program, post, config);
    ++report.trials;
    for (Mode mode : kModes) {
      auto m = compare(e.program, e.post, mode, states, config, &report.checks,
                       &report.skipped_unknown);
      if (!m) continue;
      SExpr small = minimize(program, post, mode, m->state, config);
      Elaborated s = elaborate(small, post, config);
      auto shrunk = compare(s.program, s.post, mode, {m->state}, config, nullptr, nullptr);
      report.mismatches.push_back(shrunk ? *shrunk : *m);
    }
  }
  return report;
}

}  // namespace wpgen::oracle

namespace wpgen::oracle {

std::string PropertyReport::summary() const {
  std::ostringstream out;
  out << programs << " programs, " << checks << " checks, " << violations.size() << " violations";
  for (const auto& v : violations) out << "\n" << v;
  return out.str();
}

namespace {

class PropertyRun {
 public:
  PropertyRun(const PropertyConfig& config, PropertyReport& report)
      : config_(config), report_(report), table_(int_table(config.vars)),
        states_(all_states(config.vars, config.bound)) {}

  Term reduce(Mode mode, const Program& p, const Term& q) {
    NameSupply names;
    names.reserve_symbols(p);
    names.reserve_symbols(q);
    VcGen vc(names);
    return vc.reduce(mode, p, q, ExecState::identity());
  }

  bool eval(const Term& t, const State& s) { return eval_formula(t, s, s, config_.bound); }

  void expect(bool ok, const char* property, const Program& p, const Term& q, const State& s) {
    ++report_.checks;
    if (!ok) {
      report_.violations.push_back(std::string("VIOLATION ") + property + " state=" + to_string(s) +
                                   " program=" + to_string(p) + " post=" + to_string(q));
    }
  }

  Program program(ProgramGenerator& gen) { return elaborate_program(gen.program(), table_); }
  Term formula(ProgramGenerator& gen) { return elaborate_term(gen.formula(), table_); }

  void general(ProgramGenerator& gen) {
    Program p = program(gen);
    Term q1 = formula(gen), q2 = formula(gen);
    Term weaker = mk_bool_app("or", {q1, q2});
    Term both = mk_and({q1, q2});
    Term wp1 = reduce(Mode::Wp, p, q1), box1 = reduce(Mode::Box, p, q1);
    Term wp2 = reduce(Mode::Wp, p, q2), wpw = reduce(Mode::Wp, p, weaker);
    Term wpb = reduce(Mode::Wp, p, both);
    for (const auto& s : states_) {
      bool w1 = eval(wp1, s);
      expect(!w1 || eval(box1, s), "wp=>box", p, q1, s);
      expect(!w1 || eval(wpw, s), "monotonicity", p, q1, s);
      expect(eval(wpb, s) == (w1 && eval(wp2, s)), "conjunctivity", p, both, s);
    }
  }

  void spec_free(ProgramGenerator& gen) {
    Program p = program(gen);
    Term q = formula(gen);
    Term w = reduce(Mode::Wp, p, q), b = reduce(Mode::Box, p, q), d = reduce(Mode::Dia, p, q);
    for (const auto& s : states_) {
      bool vw = eval(w, s);
      expect(vw == eval(b, s) && vw == eval(d, s), "wp=box=dia", p, q, s);
    }
  }

  void duality(ProgramGenerator& gen) {
    Program p = program(gen);
    Term q = formula(gen);
    Term d = reduce(Mode::Dia, p, q), b = reduce(Mode::Box, p, mk_not(q));
    for (const auto& s : states_) expect(eval(d, s) == !eval(b, s), "dia=not-box-not", p, q, s);
  }

 private:
  const PropertyConfig& config_;
  PropertyReport& report_;
  SymbolTable table_;
  std::vector<State> states_;
};

}  // namespace

PropertyReport property_check(const PropertyConfig& config) {
  PropertyReport report;
  PropertyRun run(config, report);
  GenConfig base{config.vars, config.bound, config.max_stmts};
  ProgramGenerator general(base, config.seed);
  GenConfig no_spec = base;
  no_spec.allow_spec = false;
  ProgramGenerator spec_free(no_spec, config.seed + 1);
  GenConfig angelic = base;
  angelic.spec_pre_true = true;
  ProgramGenerator duality(angelic, config.seed + 2);
  for (int i = 0; i < config.programs; ++i) {
    run.general(general);
    run.spec_free(spec_free);
    run.duality(duality);
    ++report.programs;
  }
  return report;
}

}  // namespace wpgen::oracle
