#pragma once

#include <functional>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "wpgen/ast.hpp"

namespace wpgen {

/// Simultaneous substitution: variable name -> replacement.
using Subst = std::map<std::string, Term>;

/// Snapshot values for `old`; unmapped names denote themselves.
using OldMap = std::map<std::string, Term>;

/// Generates `base!k` symbols from a single monotone counter, skipping
/// anything reserved (declared globals, names seen in the input).
class NameSupply {
 public:
  explicit NameSupply(std::set<std::string> reserved = {}, unsigned next = 1)
      : reserved_(std::move(reserved)), next_(next) {}

  std::string fresh(std::string_view base, const std::set<std::string>& taken = {});

  void reserve(const std::string& name) { reserved_.insert(name); }
  void reserve_symbols(const Term& t);
  void reserve_symbols(const Program& p);
  bool is_reserved(const std::string& name) const { return reserved_.count(name) != 0; }
  unsigned next() const { return next_; }

 private:
  std::set<std::string> reserved_;
  unsigned next_;
};

inline std::string fresh_name(std::string_view base, const std::set<std::string>& taken,
                              NameSupply& supply) {
  return supply.fresh(base, taken);
}

std::set<std::string> free_vars(const Term& t);
std::set<std::string> free_vars(const Program& p);

/// Called for each modality met while rewriting. `env` and `old` already
/// include any renaming of enclosing binders.
using ModalHandler = std::function<Term(const ModalTerm& modal, const Subst& env,
                                        const OldMap* old, Pos pos)>;

enum class OldPolicy {
  Keep,     // leave (old u) in place; only binder renamings reach inside
  Resolve,  // replace (old u) by u rewritten under the old map
};

/// The shared capture-avoiding walker behind substitute, resolve_old and
/// the verification condition generator.
///
/// Free variables are rewritten through `env`. Under OldPolicy::Resolve an
/// (old u) node becomes u rewritten through `old`; a null `old` then raises
/// E_OLD_CONTEXT. Binders whose name occurs free in a replacement are
/// renamed with `names`. Modal nodes go to `on_modal`, or raise
/// E_UNSUPPORTED when no handler is given.
Term rewrite(const Term& t, const Subst& env, const OldMap* old, OldPolicy policy,
             NameSupply& names, const ModalHandler* on_modal = nullptr);

/// t[x1..xn <- t1..tn], simultaneous and capture avoiding. `old` subterms
/// denote a snapshot state and are not substituted into.
Term substitute(const Term& t, const Subst& s, NameSupply& names);
Term substitute(const Term& t, const Subst& s);

/// Replaces every (old u) by u evaluated in the snapshot `m`. Nested old is
/// idempotent. The result contains no Old nodes.
Term resolve_old(const Term& t, const OldMap& m, NameSupply& names);
Term resolve_old(const Term& t, const OldMap& m);

/// Assignment targets and spec variables anywhere in p, in first-occurrence order.
std::vector<TypedName> modified_vars(const Program& p);

bool contains_old(const Term& t);
bool contains_modal(const Term& t);

/// Structural equality up to renaming of bound variables.
bool alpha_equal(const Term& a, const Term& b);

}  // namespace wpgen
