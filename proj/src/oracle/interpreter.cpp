#include <algorithm>

#include "wpgen/oracle.hpp"

namespace wpgen::oracle {

std::string to_string(const Value& v) {
  if (const bool* b = std::get_if<bool>(&v)) return *b ? "true" : "false";
  return std::to_string(std::get<std::int64_t>(v));
}

std::string to_string(const State& s) {
  std::string out = "{";
  bool first = true;
  for (const auto& [k, v] : s) {
    if (!first) out += ",";
    first = false;
    out += k + ":" + to_string(v);
  }
  return out + "}";
}

std::string_view to_string(Tri t) {
  switch (t) {
    case Tri::False: return "false";
    case Tri::True: return "true";
    case Tri::Unknown: return "unknown";
  }
  return "?";
}

namespace {

[[noreturn]] void unsupported(const std::string& what, Pos pos) {
  throw Error(ErrorCode::Unsupported, "oracle cannot evaluate " + what, pos);
}

std::int64_t euclid_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  std::int64_t r = a % b;
  if (r < 0) q += b > 0 ? -1 : 1;
  return q;
}

class Evaluator {
 public:
  Evaluator(const State& cur, const State& old, int bound, const Interpretation* funs)
      : cur_(cur), old_(old), bound_(bound), funs_(funs) {}

  Value eval(const Term& t, bool in_old = false) {
    if (const auto* v = t.as<VarTerm>()) {
      for (auto it = locals_.rbegin(); it != locals_.rend(); ++it) {
        if (it->first == v->name) return it->second;
      }
      const State& s = in_old ? old_ : cur_;
      auto it = s.find(v->name);
      if (it == s.end()) unsupported("unassigned variable '" + v->name + "'", t.pos());
      return it->second;
    }
    if (const auto* l = t.as<LitTerm>()) {
      if (l->kind == LitKind::Bool) return l->text == "true";
      if (l->kind == LitKind::Numeral) return static_cast<std::int64_t>(std::stoll(l->text));
      unsupported("real literals", t.pos());
    }
    if (const auto* a = t.as<AppTerm>()) return apply(*a, t.pos(), in_old);
    if (const auto* q = t.as<QuantTerm>()) return quantify(*q, 0, in_old);
    if (const auto* l = t.as<LetTerm>()) {
      std::vector<std::pair<std::string, Value>> values;
      for (const auto& [n, v] : l->bindings) values.emplace_back(n, eval(v, in_old));
      for (auto& b : values) locals_.push_back(std::move(b));
      Value r = eval(l->body, in_old);
      locals_.resize(locals_.size() - values.size());
      return r;
    }
    if (const auto* o = t.as<OldTerm>()) return eval(o->inner, true);
    unsupported("modalities", t.pos());
  }

 private:
  bool as_bool(const Term& t, bool in_old) { return std::get<bool>(eval(t, in_old)); }
  std::int64_t as_int(const Term& t, bool in_old) {
    Value v = eval(t, in_old);
    if (const auto* i = std::get_if<std::int64_t>(&v)) return *i;
    unsupported("a Bool where an Int is expected", t.pos());
  }

  std::vector<Value> domain(const Sort& s, Pos pos) const {
    std::vector<Value> out;
    if (s.is_bool()) {
      out = {false, true};
    } else if (s.is_int()) {
      for (std::int64_t v = -bound_; v <= bound_; ++v) out.emplace_back(v);
    } else {
      unsupported("quantifiers over " + s.str(), pos);
    }
    return out;
  }

  bool quantify(const QuantTerm& q, std::size_t i, bool in_old) {
    if (i == q.bound.size()) return as_bool(q.body, in_old);
    bool forall = q.quantifier == Quantifier::Forall;
    for (const auto& v : domain(q.bound[i].sort, q.body.pos())) {
      locals_.emplace_back(q.bound[i].name, v);
      bool r = quantify(q, i + 1, in_old);
      locals_.pop_back();
      if (forall && !r) return false;
      if (!forall && r) return true;
    }
    return forall;
  }

  Value apply(const AppTerm& a, Pos pos, bool in_old) {
    const std::string& f = a.fn;
    const auto& args = a.args;
    if (!a.indices.empty() || a.as_sort) unsupported("'" + f + "'", pos);

    if (f == "not") return !as_bool(args[0], in_old);
    if (f == "and") {
      for (const auto& x : args) {
        if (!as_bool(x, in_old)) return false;
      }
      return true;
    }
    if (f == "or") {
      for (const auto& x : args) {
        if (as_bool(x, in_old)) return true;
      }
      return false;
    }
    if (f == "=>") {
      // Right associative.
      for (std::size_t i = 0; i + 1 < args.size(); ++i) {
        if (!as_bool(args[i], in_old)) return true;
      }
      return as_bool(args.back(), in_old);
    }
    if (f == "xor") {
      bool r = false;
      for (const auto& x : args) r = r != as_bool(x, in_old);
      return r;
    }
    if (f == "ite") return as_bool(args[0], in_old) ? eval(args[1], in_old) : eval(args[2], in_old);
    if (f == "=") {
      Value first = eval(args[0], in_old);
      for (std::size_t i = 1; i < args.size(); ++i) {
        if (eval(args[i], in_old) != first) return false;
      }
      return true;
    }
    if (f == "distinct") {
      std::vector<Value> vs;
      for (const auto& x : args) vs.push_back(eval(x, in_old));
      std::sort(vs.begin(), vs.end());
      return std::adjacent_find(vs.begin(), vs.end()) == vs.end();
    }
    if (f == "+" || f == "*" || f == "-") {
      std::int64_t r = as_int(args[0], in_old);
      if (f == "-" && args.size() == 1) return -r;
      for (std::size_t i = 1; i < args.size(); ++i) {
        std::int64_t v = as_int(args[i], in_old);
        r = f == "+" ? r + v : f == "-" ? r - v : r * v;
      }
      return r;
    }
    if (f == "div" || f == "mod") {
      std::int64_t x = as_int(args[0], in_old);
      std::int64_t y = as_int(args[1], in_old);
      if (y == 0) unsupported("division by zero", pos);
      std::int64_t q = euclid_div(x, y);
      return f == "div" ? q : x - y * q;
    }
    if (f == "abs") return std::abs(as_int(args[0], in_old));
    if (f == "<" || f == "<=" || f == ">" || f == ">=") {
      for (std::size_t i = 0; i + 1 < args.size(); ++i) {
        std::int64_t x = as_int(args[i], in_old);
        std::int64_t y = as_int(args[i + 1], in_old);
        bool ok = f == "<" ? x < y : f == "<=" ? x <= y : f == ">" ? x > y : x >= y;
        if (!ok) return false;
      }
      return true;
    }
    if (funs_) {
      if (auto it = funs_->find(f); it != funs_->end()) {
        std::vector<Value> vs;
        for (const auto& x : args) vs.push_back(eval(x, in_old));
        return it->second(vs);
      }
    }
    unsupported("'" + f + "'", pos);
  }

  const State& cur_;
  const State& old_;
  int bound_;
  const Interpretation* funs_;
  std::vector<std::pair<std::string, Value>> locals_;
};

class Interpreter {
 public:
  Interpreter(int bound, const Interpretation* funs) : bound_(bound), funs_(funs) {}

  // Runs p from every state in `in`; `entry` is the reference point for old.
  void run(const Program& p, const std::set<State>& in, const State& entry, OutcomeSet& out,
           int& fuel) {
    if (const auto* a = p.as<AssignStmt>()) {
      for (const auto& s : in) {
        State next = s;
        for (const auto& [x, rhs] : a->bindings) next[x.name] = eval_term(rhs, s, entry, bound_, funs_);
        out.finals.insert(std::move(next));
      }
      return;
    }
    if (const auto* b = p.as<BlockStmt>()) {
      std::set<State> current = in;
      for (const auto& stmt : b->body) {
        OutcomeSet step;
        run(stmt, current, entry, step, fuel);
        out.aborted |= step.aborted;
        out.exhausted |= step.exhausted;
        current = std::move(step.finals);
      }
      out.finals.insert(current.begin(), current.end());
      return;
    }
    if (const auto* i = p.as<IfStmt>()) {
      std::set<State> yes, no;
      for (const auto& s : in) {
        (eval_formula(i->test, s, entry, bound_, funs_) ? yes : no).insert(s);
      }
      if (!yes.empty()) run(i->then_branch, yes, entry, out, fuel);
      if (!no.empty()) run(i->else_branch, no, entry, out, fuel);
      return;
    }
    if (const auto* sp = p.as<SpecStmt>()) {
      for (const auto& s : in) {
        if (!eval_formula(sp->pre, s, entry, bound_, funs_)) {
          out.aborted = true;
          continue;
        }
        havoc(*sp, s, 0, State(s), out);
      }
      return;
    }
    const auto& w = *p.as<WhileStmt>();
    for (const auto& s : in) {
      std::set<State> frontier{s};
      int left = fuel;
      while (!frontier.empty()) {
        std::set<State> continuing;
        for (const auto& f : frontier) {
          if (eval_formula(w.test, f, f, bound_, funs_)) {
            continuing.insert(f);
          } else {
            out.finals.insert(f);
          }
        }
        if (continuing.empty()) break;
        if (left == 0) {
          out.exhausted = true;
          break;
        }
        --left;
        std::set<State> next;
        for (const auto& f : continuing) {
          OutcomeSet body;
          int inner = left;
          run(w.body, {f}, f, body, inner);
          out.aborted |= body.aborted;
          out.exhausted |= body.exhausted;
          next.insert(body.finals.begin(), body.finals.end());
        }
        frontier = std::move(next);
      }
    }
  }

 private:
  void havoc(const SpecStmt& sp, const State& pre, std::size_t i, State cur, OutcomeSet& out) {
    if (i == sp.vars.size()) {
      if (eval_formula(sp.post, cur, pre, bound_, funs_)) out.finals.insert(std::move(cur));
      return;
    }
    const TypedName& v = sp.vars[i];
    if (v.sort.is_bool()) {
      for (bool b : {false, true}) {
        cur[v.name] = b;
        havoc(sp, pre, i + 1, cur, out);
      }
      return;
    }
    if (!v.sort.is_int()) throw Error(ErrorCode::Unsupported, "oracle cannot havoc " + v.sort.str());
    for (std::int64_t x = -bound_; x <= bound_; ++x) {
      cur[v.name] = x;
      havoc(sp, pre, i + 1, cur, out);
    }
  }

  int bound_;
  const Interpretation* funs_;
};

}  // namespace

Value eval_term(const Term& t, const State& cur, const State& old, int bound,
                const Interpretation* funs) {
  return Evaluator(cur, old, bound, funs).eval(t);
}

bool eval_formula(const Term& t, const State& cur, const State& old, int bound,
                  const Interpretation* funs) {
  Value v = eval_term(t, cur, old, bound, funs);
  if (const bool* b = std::get_if<bool>(&v)) return *b;
  throw Error(ErrorCode::Sort, "formula evaluated to a non-Bool value", t.pos());
}

OutcomeSet run_program(const Program& p, const State& start, int bound, int fuel,
                       const Interpretation* funs) {
  OutcomeSet out;
  Interpreter(bound, funs).run(p, {start}, start, out, fuel);
  return out;
}

Tri holds(Mode mode, const Program& p, const Term& post, const State& start, int bound, int fuel,
          const Interpretation* funs) {
  OutcomeSet o = run_program(p, start, bound, fuel, funs);
  bool some_good = false;
  bool some_bad = false;
  for (const auto& f : o.finals) {
    (eval_formula(post, f, start, bound, funs) ? some_good : some_bad) = true;
  }
  if (mode == Mode::Dia) {
    // Angelic: an aborting resolution is simply not a witness.
    if (some_good) return Tri::True;
    return o.exhausted ? Tri::Unknown : Tri::False;
  }
  if (o.aborted || some_bad) return Tri::False;
  return o.exhausted ? Tri::Unknown : Tri::True;
}

std::vector<State> all_states(const std::vector<std::string>& vars, int lo, int hi) {
  std::vector<State> out{State{}};
  for (const auto& v : vars) {
    std::vector<State> next;
    for (const auto& s : out) {
      for (std::int64_t x = lo; x <= hi; ++x) {
        State t = s;
        t[v] = x;
        next.push_back(std::move(t));
      }
    }
    out = std::move(next);
  }
  return out;
}

std::vector<State> all_states(const std::vector<std::string>& vars, int bound) {
  return all_states(vars, -bound, bound);
}

}  // namespace wpgen::oracle
