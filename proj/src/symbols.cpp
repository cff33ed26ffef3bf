#include "wpgen/symbols.hpp"

#include <array>
#include <string_view>

namespace wpgen {

namespace {

constexpr std::array<std::string_view, 28> kBuiltins = {
    "true", "false", "not",  "=>",     "and",    "or",     "xor",   "=",      "distinct", "ite",
    "+",    "-",     "*",    "/",      "div",    "mod",    "abs",   "<",      "<=",       ">",
    ">=",   "select", "store", "to_real", "to_int", "is_int", "const", "old"};

}  // namespace

SymbolTable::SymbolTable() {
  sorts_["Bool"] = {0, {}, std::nullopt};
  sorts_["Int"] = {0, {}, std::nullopt};
  sorts_["Real"] = {0, {}, std::nullopt};
  sorts_["Array"] = {2, {}, std::nullopt};
}

bool SymbolTable::is_builtin(const std::string& name) {
  for (auto b : kBuiltins) {
    if (b == name) return true;
  }
  return false;
}

void SymbolTable::declare_sort(const std::string& name, int arity, Pos pos) {
  auto it = sorts_.find(name);
  if (it != sorts_.end()) {
    if (!it->second.alias && it->second.arity == arity) return;
    throw Error(ErrorCode::Elab, "sort '" + name + "' already declared", pos);
  }
  sorts_[name] = {arity, {}, std::nullopt};
}

void SymbolTable::declare_datatype_sort(const std::string& name, Pos pos) {
  declare_sort(name, 0, pos);
}

void SymbolTable::define_sort(const std::string& name, std::vector<std::string> params,
                              SExpr body, Pos pos) {
  if (sorts_.count(name)) throw Error(ErrorCode::Elab, "sort '" + name + "' already declared", pos);
  // Validate the body now so errors point at the definition.
  std::map<std::string, Sort> dummy;
  for (const auto& p : params) dummy[p] = Sort{p, {}};
  resolve_sort(body, dummy);
  int arity = static_cast<int>(params.size());
  sorts_[name] = {arity, std::move(params), std::move(body)};
}

Sort SymbolTable::resolve_sort(const SExpr& e) const { return resolve_sort(e, {}); }

Sort SymbolTable::resolve_sort(const SExpr& e, const std::map<std::string, Sort>& params) const {
  std::string name;
  std::vector<SExpr> arg_forms;
  if (e.is_symbol()) {
    name = e.symbol_name();
    if (auto p = params.find(name); p != params.end()) return p->second;
  } else if (e.is_list() && !e.empty() && e[0].is_symbol()) {
    name = e[0].symbol_name();
    if (name == "_") throw Error(ErrorCode::Unsupported, "indexed sorts are not supported", e.pos());
    arg_forms.assign(e.items().begin() + 1, e.items().end());
    if (arg_forms.empty()) throw Error(ErrorCode::Elab, "malformed sort", e.pos());
  } else {
    throw Error(ErrorCode::Elab, "malformed sort '" + print_sexpr(e) + "'", e.pos());
  }

  auto it = sorts_.find(name);
  if (it == sorts_.end()) throw Error(ErrorCode::Undeclared, "unknown sort '" + name + "'", e.pos());
  const SortEntry& entry = it->second;
  if (static_cast<int>(arg_forms.size()) != entry.arity) {
    throw Error(ErrorCode::Arity,
                "sort '" + name + "' expects " + std::to_string(entry.arity) + " arguments",
                e.pos());
  }
  std::vector<Sort> args;
  for (const auto& a : arg_forms) args.push_back(resolve_sort(a, params));
  if (entry.alias) {
    std::map<std::string, Sort> inner;
    for (std::size_t i = 0; i < args.size(); ++i) inner[entry.params[i]] = args[i];
    return resolve_sort(*entry.alias, inner);
  }
  return Sort{name, std::move(args)};
}

void SymbolTable::check_fresh_name(const std::string& name, Pos pos) const {
  if (is_builtin(name))
    throw Error(ErrorCode::Elab, "cannot redeclare builtin symbol '" + name + "'", pos);
}

void SymbolTable::declare_const(const std::string& name, const Sort& sort, Pos pos) {
  check_fresh_name(name, pos);
  if (auto it = consts_.find(name); it != consts_.end()) {
    if (it->second == sort) return;
    throw Error(ErrorCode::Elab, "'" + name + "' already declared with sort " + it->second.str(),
                pos);
  }
  if (funs_.count(name))
    throw Error(ErrorCode::Elab, "'" + name + "' already declared as a function", pos);
  consts_[name] = sort;
}

void SymbolTable::declare_fun(const std::string& name, FunSig sig, Pos pos) {
  check_fresh_name(name, pos);
  if (auto it = funs_.find(name); it != funs_.end()) {
    if (it->second == sig) return;
    throw Error(ErrorCode::Elab, "'" + name + "' already declared with a different signature",
                pos);
  }
  if (consts_.count(name))
    throw Error(ErrorCode::Elab, "'" + name + "' already declared as a constant", pos);
  funs_[name] = std::move(sig);
}

const Sort* SymbolTable::lookup_const(const std::string& name) const {
  auto it = consts_.find(name);
  return it == consts_.end() ? nullptr : &it->second;
}

const FunSig* SymbolTable::lookup_fun(const std::string& name) const {
  auto it = funs_.find(name);
  return it == funs_.end() ? nullptr : &it->second;
}

const Sort* SymbolTable::lookup_bound(const std::string& name) const {
  for (auto s = scopes_.rbegin(); s != scopes_.rend(); ++s) {
    for (auto b = s->rbegin(); b != s->rend(); ++b) {
      if (b->first == name) return &b->second;
    }
  }
  return nullptr;
}

bool SymbolTable::is_global(const std::string& name) const {
  return consts_.count(name) || funs_.count(name) || sorts_.count(name) || is_builtin(name);
}

std::set<std::string> SymbolTable::global_names() const {
  std::set<std::string> out;
  for (const auto& [k, _] : consts_) out.insert(k);
  for (const auto& [k, _] : funs_) out.insert(k);
  for (const auto& [k, _] : sorts_) out.insert(k);
  return out;
}

}  // namespace wpgen
