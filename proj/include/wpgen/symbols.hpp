#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "wpgen/ast.hpp"

namespace wpgen {

enum class FunKind { Declared, Defined, Constructor, Selector, Tester };

struct FunSig {
  std::vector<Sort> args;
  Sort result;
  FunKind kind = FunKind::Declared;

  friend bool operator==(const FunSig&, const FunSig&) = default;
};

/// Sorts, constants and function signatures visible to elaboration, plus a
/// stack of local binders for quantifiers and let.
///
/// Core, Ints, Reals and ArraysEx operators are built in and are checked by
/// the elaborator directly rather than through FunSig entries.
class SymbolTable {
 public:
  SymbolTable();

  void declare_sort(const std::string& name, int arity, Pos pos = {});
  void define_sort(const std::string& name, std::vector<std::string> params, SExpr body,
                   Pos pos = {});
  void declare_datatype_sort(const std::string& name, Pos pos = {});
  bool has_sort(const std::string& name) const { return sorts_.count(name) != 0; }
  Sort resolve_sort(const SExpr& e) const;

  void declare_const(const std::string& name, const Sort& sort, Pos pos = {});
  void declare_fun(const std::string& name, FunSig sig, Pos pos = {});

  const Sort* lookup_const(const std::string& name) const;
  const FunSig* lookup_fun(const std::string& name) const;
  static bool is_builtin(const std::string& name);

  // Bound variables shadow globals; innermost scope wins.
  void push_scope() { scopes_.emplace_back(); }
  void pop_scope() { scopes_.pop_back(); }
  void bind(const std::string& name, const Sort& sort) { scopes_.back().emplace_back(name, sort); }
  const Sort* lookup_bound(const std::string& name) const;

  // Any symbol declared at global level (sorts, constants, functions).
  bool is_global(const std::string& name) const;
  std::set<std::string> global_names() const;

 private:
  struct SortEntry {
    int arity = 0;
    std::vector<std::string> params;
    std::optional<SExpr> alias;
  };

  Sort resolve_sort(const SExpr& e, const std::map<std::string, Sort>& params) const;
  void check_fresh_name(const std::string& name, Pos pos) const;

  std::map<std::string, SortEntry> sorts_;
  std::map<std::string, Sort> consts_;
  std::map<std::string, FunSig> funs_;
  std::vector<std::vector<std::pair<std::string, Sort>>> scopes_;
};

/// Pushes a binder scope for its lifetime.
class ScopeGuard {
 public:
  explicit ScopeGuard(SymbolTable& table) : table_(table) { table_.push_scope(); }
  ~ScopeGuard() { table_.pop_scope(); }
  ScopeGuard(const ScopeGuard&) = delete;
  ScopeGuard& operator=(const ScopeGuard&) = delete;

 private:
  SymbolTable& table_;
};

}  // namespace wpgen
