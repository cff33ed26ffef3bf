#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "wpgen/error.hpp"

namespace wpgen {

enum class AtomKind {
  Symbol,
  QuotedSymbol,
  Keyword,
  Numeral,
  Decimal,
  Hexadecimal,
  Binary,
  String,
};

std::string_view to_string(AtomKind kind);

/// Generic SMT-LIB s-expression. Atoms keep their exact source spelling
/// (bars, quotes and escapes included); numbers are never converted here.
class SExpr {
 public:
  SExpr() = default;

  static SExpr atom(AtomKind kind, std::string text, Pos pos = {});
  static SExpr symbol(std::string text, Pos pos = {});
  static SExpr keyword(std::string text, Pos pos = {});
  static SExpr list(std::vector<SExpr> items, Pos pos = {});

  bool is_atom() const { return !is_list_; }
  bool is_list() const { return is_list_; }

  AtomKind kind() const { return kind_; }
  const std::string& text() const { return text_; }
  const std::vector<SExpr>& items() const { return items_; }
  Pos pos() const { return pos_; }

  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }
  const SExpr& operator[](std::size_t i) const { return items_[i]; }

  bool is_symbol() const {
    return !is_list_ && (kind_ == AtomKind::Symbol || kind_ == AtomKind::QuotedSymbol);
  }
  bool is_keyword() const { return !is_list_ && kind_ == AtomKind::Keyword; }

  // Symbol name with `|...|` removed when the quoted content is itself a
  // legal simple symbol, so that `|x|` and `x` denote the same name.
  std::string symbol_name() const;

  bool is_symbol(std::string_view name) const { return is_symbol() && symbol_name() == name; }

  // True if this is a non-empty list whose head is the given symbol.
  bool has_head(std::string_view name) const {
    return is_list_ && !items_.empty() && items_.front().is_symbol(name);
  }

  // Structural equality; positions are ignored.
  friend bool operator==(const SExpr& a, const SExpr& b);

 private:
  bool is_list_ = true;
  AtomKind kind_ = AtomKind::Symbol;
  std::string text_;
  std::vector<SExpr> items_;
  Pos pos_;
};

std::vector<SExpr> parse_sexprs(std::string_view text);

/// Single-line rendering; siblings separated by one space.
std::string print_sexpr(const SExpr& e);

bool is_simple_symbol(std::string_view text);

/// Renders a symbol name, adding `|...|` if it is not a legal simple symbol.
std::string symbol_text(std::string_view name);

}  // namespace wpgen
