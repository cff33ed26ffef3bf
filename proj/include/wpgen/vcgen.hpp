#pragma once

#include <memory>
#include <optional>
#include <string>

#include "wpgen/ast.hpp"
#include "wpgen/rewrite.hpp"
#include "wpgen/symbols.hpp"

namespace wpgen {

struct VcOptions {
  /// Which formula the base case of the loop rule must establish once the
  /// loop test is false: the loop's continuation (as printed in the rule)
  /// or the loop postcondition.
  enum class BaseCase { Continuation, LoopPost };
  BaseCase base_case = BaseCase::Continuation;

  /// Fault injection for harness sensitivity checks: quantify dia(spec)
  /// universally instead of existentially. Never set in production.
  bool dia_spec_universal = false;
};

/// Symbolic execution state. `env` holds the current value of every
/// variable touched so far (unmapped names still hold their entry value).
/// `old` is the active snapshot for (old x), if any.
struct ExecState {
  Subst env;
  std::optional<OldMap> old;

  static ExecState identity() { return {{}, OldMap{}}; }
  static ExecState no_old() { return {{}, std::nullopt}; }
};

/// Eliminates wp/box/dia and old by symbolic execution of the predicate
/// transformer rules. Substitutions are delayed in ExecState::env and only
/// applied when a term is finally lowered.
class VcGen {
 public:
  explicit VcGen(NameSupply& names, VcOptions options = {}) : names_(names), options_(options) {}

  /// Rewrites free variables through st.env, (old u) through st.old, and
  /// replaces each modality by its reduction.
  Term lower_term(const Term& t, const ExecState& st);

  /// Reduces (mode p post) at st. Old in `post` refers to st.old when set,
  /// otherwise to st itself.
  Term reduce(Mode mode, const Program& p, const Term& post, const ExecState& st);

  Term reduce_spec(Mode mode, const SpecStmt& spec, const Term& post, const ExecState& st);
  Term reduce_while(Mode mode, const Program& loop, const Term& post, const ExecState& st);

  NameSupply& names() { return names_; }

 private:
  struct Stmts;
  using StmtList = std::shared_ptr<const Stmts>;

  // What remains to be executed after the current statement.
  struct Continuation {
    StmtList stmts;
    Term post;
    OldMap post_old;
  };

  Term run(Mode mode, const Continuation& k, const ExecState& st);
  Term spec_rule(Mode mode, const SpecStmt& spec, const Continuation& k, const ExecState& st);
  Term while_rule(Mode mode, const Program& loop, const Continuation& k, const ExecState& st);

  std::vector<TypedName> fresh_copies(const std::vector<TypedName>& vars);

  NameSupply& names_;
  VcOptions options_;
};

/// Fills absent loop annotations from a surrounding contract when p is a
/// while loop (single-element blocks are unwrapped). Existing annotations
/// are kept. Any other program is returned unchanged.
Program infer_loop_contract(const Program& p, const Term& pre, const Term& post);

/// (not (=> pre (wp p' post))) with p' = infer_loop_contract(p, pre, post);
/// old in post refers to the pre-state.
Term lower_assert_counterexample(const Term& pre, const Program& p, const Term& post, VcGen& vc);

/// Replaces every extension construct by plain SMT-LIB; other commands are
/// returned untouched. Stops at the first error.
Script process_script(const Script& script, const SymbolTable& table, NameSupply& names,
                      VcOptions options = {});
Script process_script(const Script& script, const SymbolTable& table);

/// One command per line; unchanged commands print exactly as read.
std::string print_script(const Script& script);

}  // namespace wpgen
