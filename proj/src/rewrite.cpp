#include "wpgen/rewrite.hpp"

#include <cctype>

namespace wpgen {

namespace {

template <class... Fs>
struct overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
overloaded(Fs...) -> overloaded<Fs...>;

// Strips a trailing `!digits` so fresh names of fresh names stay short.
std::string strip_counter(std::string_view base) {
  auto bang = base.rfind('!');
  if (bang == std::string_view::npos || bang + 1 == base.size() || bang == 0) return std::string(base);
  for (std::size_t i = bang + 1; i < base.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(base[i]))) return std::string(base);
  }
  return std::string(base.substr(0, bang));
}

void collect_symbols(const Term& t, std::set<std::string>& out);

void collect_symbols(const Program& p, std::set<std::string>& out) {
  std::visit(overloaded{
                 [&](const AssignStmt& a) {
                   for (const auto& [x, rhs] : a.bindings) {
                     out.insert(x.name);
                     collect_symbols(rhs, out);
                   }
                 },
                 [&](const SpecStmt& s) {
                   for (const auto& v : s.vars) out.insert(v.name);
                   collect_symbols(s.pre, out);
                   collect_symbols(s.post, out);
                 },
                 [&](const BlockStmt& b) {
                   for (const auto& q : b.body) collect_symbols(q, out);
                 },
                 [&](const IfStmt& i) {
                   collect_symbols(i.test, out);
                   collect_symbols(i.then_branch, out);
                   collect_symbols(i.else_branch, out);
                 },
                 [&](const WhileStmt& w) {
                   collect_symbols(w.test, out);
                   collect_symbols(w.body, out);
                   for (const auto* o : {&w.measure, &w.pre, &w.post}) {
                     if (*o) collect_symbols(**o, out);
                   }
                 },
             },
             p.node().v);
}

void collect_symbols(const Term& t, std::set<std::string>& out) {
  std::visit(overloaded{
                 [&](const VarTerm& v) { out.insert(v.name); },
                 [&](const LitTerm&) {},
                 [&](const AppTerm& a) {
                   out.insert(a.fn);
                   for (const auto& x : a.args) collect_symbols(x, out);
                 },
                 [&](const QuantTerm& q) {
                   for (const auto& b : q.bound) out.insert(b.name);
                   collect_symbols(q.body, out);
                 },
                 [&](const LetTerm& l) {
                   for (const auto& [n, v] : l.bindings) {
                     out.insert(n);
                     collect_symbols(v, out);
                   }
                   collect_symbols(l.body, out);
                 },
                 [&](const OldTerm& o) { collect_symbols(o.inner, out); },
                 [&](const ModalTerm& m) {
                   collect_symbols(m.program, out);
                   collect_symbols(m.post, out);
                 },
             },
             t.node().v);
}

void collect_free(const Term& t, std::set<std::string>& bound, std::set<std::string>& out);

void collect_free(const Program& p, std::set<std::string>& bound, std::set<std::string>& out) {
  auto name = [&](const std::string& n) {
    if (!bound.count(n)) out.insert(n);
  };
  std::visit(overloaded{
                 [&](const AssignStmt& a) {
                   for (const auto& [x, rhs] : a.bindings) {
                     name(x.name);
                     collect_free(rhs, bound, out);
                   }
                 },
                 [&](const SpecStmt& s) {
                   for (const auto& v : s.vars) name(v.name);
                   collect_free(s.pre, bound, out);
                   collect_free(s.post, bound, out);
                 },
                 [&](const BlockStmt& b) {
                   for (const auto& q : b.body) collect_free(q, bound, out);
                 },
                 [&](const IfStmt& i) {
                   collect_free(i.test, bound, out);
                   collect_free(i.then_branch, bound, out);
                   collect_free(i.else_branch, bound, out);
                 },
                 [&](const WhileStmt& w) {
                   collect_free(w.test, bound, out);
                   collect_free(w.body, bound, out);
                   for (const auto* o : {&w.measure, &w.pre, &w.post}) {
                     if (*o) collect_free(**o, bound, out);
                   }
                 },
             },
             p.node().v);
}

void collect_free(const Term& t, std::set<std::string>& bound, std::set<std::string>& out) {
  auto with_bound = [&](const std::vector<std::string>& names, auto&& body) {
    std::vector<std::string> added;
    for (const auto& n : names) {
      if (bound.insert(n).second) added.push_back(n);
    }
    body();
    for (const auto& n : added) bound.erase(n);
  };
  std::visit(overloaded{
                 [&](const VarTerm& v) {
                   if (!bound.count(v.name)) out.insert(v.name);
                 },
                 [&](const LitTerm&) {},
                 [&](const AppTerm& a) {
                   for (const auto& x : a.args) collect_free(x, bound, out);
                 },
                 [&](const QuantTerm& q) {
                   std::vector<std::string> names;
                   for (const auto& b : q.bound) names.push_back(b.name);
                   with_bound(names, [&] { collect_free(q.body, bound, out); });
                 },
                 [&](const LetTerm& l) {
                   std::vector<std::string> names;
                   for (const auto& [n, v] : l.bindings) {
                     collect_free(v, bound, out);
                     names.push_back(n);
                   }
                   with_bound(names, [&] { collect_free(l.body, bound, out); });
                 },
                 [&](const OldTerm& o) { collect_free(o.inner, bound, out); },
                 [&](const ModalTerm& m) {
                   collect_free(m.program, bound, out);
                   collect_free(m.post, bound, out);
                 },
             },
             t.node().v);
}

// ---------------------------------------------------------------------------

class Rewriter {
 public:
  Rewriter(const Subst& env, const OldMap* old, OldPolicy policy, NameSupply& names,
           const ModalHandler* on_modal)
      : env_(env), old_(old), policy_(policy), names_(names), on_modal_(on_modal) {
    for (const auto& [_, v] : env_) {
      for (const auto& n : free_vars(v)) env_free_.insert(n);
    }
    if (old_ && policy_ == OldPolicy::Resolve) {
      for (const auto& [_, v] : *old_) {
        for (const auto& n : free_vars(v)) env_free_.insert(n);
      }
    }
  }

  Term run(const Term& t) { return walk(t, Frame::Current); }

 private:
  enum class Frame { Current, Snapshot, KeepOld };

  const Subst* frame_env(Frame f) const {
    switch (f) {
      case Frame::Current: return &env_;
      case Frame::Snapshot: return old_;
      case Frame::KeepOld: return nullptr;
    }
    return nullptr;
  }

  Term walk(const Term& t, Frame frame) {
    const Pos pos = t.pos();
    return std::visit(
        overloaded{
            [&](const VarTerm& v) -> Term {
              if (auto it = bound_.find(v.name); it != bound_.end()) {
                const Term& renamed = it->second.back();
                return renamed ? renamed : t;
              }
              if (const Subst* m = frame_env(frame)) {
                if (auto it = m->find(v.name); it != m->end()) return it->second;
              }
              return t;
            },
            [&](const LitTerm&) -> Term { return t; },
            [&](const AppTerm& a) -> Term {
              AppTerm out = a;
              bool changed = false;
              for (auto& x : out.args) {
                Term y = walk(x, frame);
                if (!(y.get() == x.get())) changed = true;
                x = std::move(y);
              }
              if (!changed) return t;
              return Term(std::make_shared<const TermNode>(TermNode{std::move(out), pos}));
            },
            [&](const QuantTerm& q) -> Term {
              std::vector<TypedName> bound = q.bound;
              std::vector<std::string> names;
              for (auto& b : bound) {
                names.push_back(b.name);
                b.name = open_binder(b.name, b.sort);
              }
              Term body = walk(q.body, frame);
              for (const auto& n : names) close_binder(n);
              return Term::quant(q.quantifier, std::move(bound), std::move(body), pos);
            },
            [&](const LetTerm& l) -> Term {
              std::vector<std::pair<std::string, Term>> bindings;
              for (const auto& [n, v] : l.bindings) bindings.emplace_back(n, walk(v, frame));
              std::vector<std::string> names;
              for (auto& [n, v] : bindings) {
                names.push_back(n);
                n = open_binder(n, v.sort());
              }
              Term body = walk(l.body, frame);
              for (const auto& n : names) close_binder(n);
              return Term::let(std::move(bindings), std::move(body), pos);
            },
            [&](const OldTerm& o) -> Term {
              if (policy_ == OldPolicy::Keep) return Term::old(walk(o.inner, Frame::KeepOld), pos);
              if (!old_) {
                throw Error(ErrorCode::OldContext,
                            "'old' used where no pre-state is defined", pos);
              }
              return walk(o.inner, Frame::Snapshot);
            },
            [&](const ModalTerm& m) -> Term {
              if (!on_modal_) {
                throw Error(ErrorCode::Unsupported,
                            "cannot rewrite inside a modality without reducing it", pos);
              }
              Subst env = frame == Frame::Snapshot && old_ ? *old_ : env_;
              OldMap old_env;
              if (old_) old_env = *old_;
              // Bound names shadow same-named globals; renamed ones map to their new name.
              for (const auto& [n, stack] : bound_) {
                if (const Term& b = stack.back()) {
                  env[n] = b;
                  old_env[n] = b;
                } else {
                  env.erase(n);
                  old_env.erase(n);
                }
              }
              return (*on_modal_)(m, env, old_ ? &old_env : nullptr, pos);
            },
        },
        t.node().v);
  }

  // Registers a binder, renaming it if it would capture a free variable of a
  // replacement. Returns the name to use in the output.
  std::string open_binder(const std::string& name, const Sort& sort) {
    auto& stack = bound_[name];
    if (env_free_.count(name) || (names_.is_reserved(name) && captured_by_rename(name))) {
      std::string fresh = names_.fresh(name, env_free_);
      stack.push_back(Term::var(fresh, sort));
      return fresh;
    }
    stack.emplace_back();
    return name;
  }

  // A binder reusing the name of an enclosing renamed binder's target.
  bool captured_by_rename(const std::string& name) const {
    for (const auto& [_, stack] : bound_) {
      for (const auto& b : stack) {
        if (b && b.as<VarTerm>()->name == name) return true;
      }
    }
    return false;
  }

  void close_binder(const std::string& name) {
    auto it = bound_.find(name);
    it->second.pop_back();
    if (it->second.empty()) bound_.erase(it);
  }

  const Subst& env_;
  const OldMap* old_;
  OldPolicy policy_;
  NameSupply& names_;
  const ModalHandler* on_modal_;
  std::set<std::string> env_free_;
  // Innermost-last stack per bound name; an empty Term means "not renamed".
  std::map<std::string, std::vector<Term>> bound_;
};

}  // namespace

std::string NameSupply::fresh(std::string_view base, const std::set<std::string>& taken) {
  std::string stem = strip_counter(base);
  bool quoted = stem.size() >= 2 && stem.front() == '|' && stem.back() == '|';
  if (quoted) stem = stem.substr(1, stem.size() - 2);
  for (char& c : stem)
    if (!is_simple_symbol(std::string(1, c)) && !std::isdigit(static_cast<unsigned char>(c))) c = '_';
  if (stem.empty() || std::isdigit(static_cast<unsigned char>(stem[0]))) stem = "v" + stem;
  for (;;) {
    std::string candidate = stem + "!" + std::to_string(next_++);
    if (taken.count(candidate) || reserved_.count(candidate)) continue;
    reserved_.insert(candidate);
    return candidate;
  }
}

void NameSupply::reserve_symbols(const Term& t) { collect_symbols(t, reserved_); }
void NameSupply::reserve_symbols(const Program& p) { collect_symbols(p, reserved_); }

std::set<std::string> free_vars(const Term& t) {
  std::set<std::string> bound, out;
  collect_free(t, bound, out);
  return out;
}

std::set<std::string> free_vars(const Program& p) {
  std::set<std::string> bound, out;
  collect_free(p, bound, out);
  return out;
}

Term rewrite(const Term& t, const Subst& env, const OldMap* old, OldPolicy policy,
             NameSupply& names, const ModalHandler* on_modal) {
  return Rewriter(env, old, policy, names, on_modal).run(t);
}

Term substitute(const Term& t, const Subst& s, NameSupply& names) {
  return rewrite(t, s, nullptr, OldPolicy::Keep, names);
}

Term substitute(const Term& t, const Subst& s) {
  NameSupply names;
  names.reserve_symbols(t);
  for (const auto& [k, v] : s) {
    names.reserve(k);
    names.reserve_symbols(v);
  }
  return substitute(t, s, names);
}

Term resolve_old(const Term& t, const OldMap& m, NameSupply& names) {
  static const Subst identity;
  return rewrite(t, identity, &m, OldPolicy::Resolve, names);
}

Term resolve_old(const Term& t, const OldMap& m) {
  NameSupply names;
  names.reserve_symbols(t);
  for (const auto& [k, v] : m) {
    names.reserve(k);
    names.reserve_symbols(v);
  }
  return resolve_old(t, m, names);
}

namespace {

void collect_modified(const Program& p, std::vector<TypedName>& out) {
  auto add = [&](const TypedName& v) {
    for (const auto& o : out) {
      if (o.name == v.name) return;
    }
    out.push_back(v);
  };
  std::visit(overloaded{
                 [&](const AssignStmt& a) {
                   for (const auto& [x, _] : a.bindings) add(x);
                 },
                 [&](const SpecStmt& s) {
                   for (const auto& v : s.vars) add(v);
                 },
                 [&](const BlockStmt& b) {
                   for (const auto& q : b.body) collect_modified(q, out);
                 },
                 [&](const IfStmt& i) {
                   collect_modified(i.then_branch, out);
                   collect_modified(i.else_branch, out);
                 },
                 [&](const WhileStmt& w) { collect_modified(w.body, out); },
             },
             p.node().v);
}

template <class Pred>
bool any_node(const Term& t, Pred pred);

template <class Pred>
bool any_node(const Program& p, Pred pred) {
  return std::visit(
      overloaded{
          [&](const AssignStmt& a) {
            for (const auto& [_, rhs] : a.bindings) {
              if (any_node(rhs, pred)) return true;
            }
            return false;
          },
          [&](const SpecStmt& s) { return any_node(s.pre, pred) || any_node(s.post, pred); },
          [&](const BlockStmt& b) {
            for (const auto& q : b.body) {
              if (any_node(q, pred)) return true;
            }
            return false;
          },
          [&](const IfStmt& i) {
            return any_node(i.test, pred) || any_node(i.then_branch, pred) ||
                   any_node(i.else_branch, pred);
          },
          [&](const WhileStmt& w) {
            if (any_node(w.test, pred) || any_node(w.body, pred)) return true;
            for (const auto* o : {&w.measure, &w.pre, &w.post}) {
              if (*o && any_node(**o, pred)) return true;
            }
            return false;
          },
      },
      p.node().v);
}

template <class Pred>
bool any_node(const Term& t, Pred pred) {
  if (pred(t)) return true;
  return std::visit(overloaded{
                        [&](const VarTerm&) { return false; },
                        [&](const LitTerm&) { return false; },
                        [&](const AppTerm& a) {
                          for (const auto& x : a.args) {
                            if (any_node(x, pred)) return true;
                          }
                          return false;
                        },
                        [&](const QuantTerm& q) { return any_node(q.body, pred); },
                        [&](const LetTerm& l) {
                          for (const auto& [_, v] : l.bindings) {
                            if (any_node(v, pred)) return true;
                          }
                          return any_node(l.body, pred);
                        },
                        [&](const OldTerm& o) { return any_node(o.inner, pred); },
                        [&](const ModalTerm& m) {
                          return any_node(m.program, pred) || any_node(m.post, pred);
                        },
                    },
                    t.node().v);
}

class AlphaComparer {
 public:
  bool eq(const Term& a, const Term& b) {
    if (a.node().v.index() != b.node().v.index()) return false;
    return std::visit(
        [&](const auto& x) -> bool {
          using T = std::decay_t<decltype(x)>;
          const auto& y = std::get<T>(b.node().v);
          if constexpr (std::is_same_v<T, VarTerm>) {
            return x.sort == y.sort && level(left_, x.name) == level(right_, y.name) &&
                   (level(left_, x.name) >= 0 || x.name == y.name);
          } else if constexpr (std::is_same_v<T, LitTerm>) {
            return x.kind == y.kind && x.text == y.text && x.sort == y.sort;
          } else if constexpr (std::is_same_v<T, AppTerm>) {
            if (x.fn != y.fn || x.indices != y.indices || x.as_sort != y.as_sort ||
                x.args.size() != y.args.size())
              return false;
            for (std::size_t i = 0; i < x.args.size(); ++i) {
              if (!eq(x.args[i], y.args[i])) return false;
            }
            return true;
          } else if constexpr (std::is_same_v<T, QuantTerm>) {
            if (x.quantifier != y.quantifier || x.bound.size() != y.bound.size()) return false;
            for (std::size_t i = 0; i < x.bound.size(); ++i) {
              if (!(x.bound[i].sort == y.bound[i].sort)) return false;
            }
            for (std::size_t i = 0; i < x.bound.size(); ++i) {
              left_.push_back(x.bound[i].name);
              right_.push_back(y.bound[i].name);
            }
            bool r = eq(x.body, y.body);
            left_.resize(left_.size() - x.bound.size());
            right_.resize(right_.size() - y.bound.size());
            return r;
          } else if constexpr (std::is_same_v<T, LetTerm>) {
            if (x.bindings.size() != y.bindings.size()) return false;
            for (std::size_t i = 0; i < x.bindings.size(); ++i) {
              if (!eq(x.bindings[i].second, y.bindings[i].second)) return false;
            }
            for (std::size_t i = 0; i < x.bindings.size(); ++i) {
              left_.push_back(x.bindings[i].first);
              right_.push_back(y.bindings[i].first);
            }
            bool r = eq(x.body, y.body);
            left_.resize(left_.size() - x.bindings.size());
            right_.resize(right_.size() - y.bindings.size());
            return r;
          } else if constexpr (std::is_same_v<T, OldTerm>) {
            return eq(x.inner, y.inner);
          } else {
            // Programs are compared structurally.
            return x.mode == y.mode && x.program == y.program && eq(x.post, y.post);
          }
        },
        a.node().v);
  }

 private:
  static int level(const std::vector<std::string>& stack, const std::string& name) {
    for (int i = static_cast<int>(stack.size()) - 1; i >= 0; --i) {
      if (stack[i] == name) return i;
    }
    return -1;
  }

  std::vector<std::string> left_, right_;
};

}  // namespace

std::vector<TypedName> modified_vars(const Program& p) {
  std::vector<TypedName> out;
  collect_modified(p, out);
  return out;
}

bool contains_old(const Term& t) {
  return any_node(t, [](const Term& x) { return x.is<OldTerm>(); });
}

bool contains_modal(const Term& t) {
  return any_node(t, [](const Term& x) { return x.is<ModalTerm>(); });
}

bool alpha_equal(const Term& a, const Term& b) { return AlphaComparer().eq(a, b); }

}  // namespace wpgen
