#pragma once

#include <string_view>

#include "wpgen/ast.hpp"
#include "wpgen/sexpr.hpp"
#include "wpgen/symbols.hpp"

namespace wpgen {

/// Elaborates top-level forms into commands, threading `table` left to
/// right. Unknown command heads become RawCmd and are never errors.
Script parse_script(const std::vector<SExpr>& forms, SymbolTable& table);

/// Convenience: lex and elaborate a whole script with a fresh table.
Script parse_script(std::string_view text, SymbolTable& table);

Term elaborate_term(const SExpr& e, SymbolTable& scope);
Program elaborate_program(const SExpr& e, SymbolTable& scope);

inline const Sort& sort_of(const Term& t, const SymbolTable&) { return t.sort(); }

/// True if any list in `e` is headed by one of the extension keywords
/// (wp, box, dia, old, assign, spec, assert-counterexample).
bool mentions_extension(const SExpr& e);

}  // namespace wpgen
