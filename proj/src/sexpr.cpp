#include "wpgen/sexpr.hpp"

#include <cctype>

namespace wpgen {

std::string_view to_string(AtomKind kind) {
  switch (kind) {
    case AtomKind::Symbol: return "simple-symbol";
    case AtomKind::QuotedSymbol: return "quoted-symbol";
    case AtomKind::Keyword: return "keyword";
    case AtomKind::Numeral: return "numeral";
    case AtomKind::Decimal: return "decimal";
    case AtomKind::Hexadecimal: return "hexadecimal";
    case AtomKind::Binary: return "binary";
    case AtomKind::String: return "string";
  }
  return "?";
}

SExpr SExpr::atom(AtomKind kind, std::string text, Pos pos) {
  SExpr e;
  e.is_list_ = false;
  e.kind_ = kind;
  e.text_ = std::move(text);
  e.pos_ = pos;
  return e;
}

SExpr SExpr::symbol(std::string text, Pos pos) {
  if (is_simple_symbol(text)) return atom(AtomKind::Symbol, std::move(text), pos);
  return atom(AtomKind::QuotedSymbol, symbol_text(text), pos);
}

SExpr SExpr::keyword(std::string text, Pos pos) {
  return atom(AtomKind::Keyword, std::move(text), pos);
}

SExpr SExpr::list(std::vector<SExpr> items, Pos pos) {
  SExpr e;
  e.is_list_ = true;
  e.items_ = std::move(items);
  e.pos_ = pos;
  return e;
}

std::string SExpr::symbol_name() const {
  if (kind_ == AtomKind::QuotedSymbol && text_.size() >= 2) {
    std::string inner = text_.substr(1, text_.size() - 2);
    if (is_simple_symbol(inner)) return inner;
  }
  return text_;
}

bool operator==(const SExpr& a, const SExpr& b) {
  if (a.is_list_ != b.is_list_) return false;
  if (!a.is_list_) return a.kind_ == b.kind_ && a.text_ == b.text_;
  return a.items_ == b.items_;
}

namespace {

bool is_symbol_char(char c) {
  if (std::isalnum(static_cast<unsigned char>(c))) return true;
  switch (c) {
    case '~': case '!': case '@': case '$': case '%': case '^': case '&':
    case '*': case '_': case '-': case '+': case '=': case '<': case '>':
    case '.': case '?': case '/':
      return true;
    default:
      return false;
  }
}

bool is_digit(char c) { return c >= '0' && c <= '9'; }

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<SExpr> parse_all() {
    std::vector<SExpr> out;
    for (;;) {
      skip_blank();
      if (at_end()) break;
      if (peek() == ')') throw Error(ErrorCode::Unbalanced, "unexpected ')'", here());
      out.push_back(parse_one());
    }
    return out;
  }

 private:
  bool at_end() const { return i_ >= text_.size(); }
  char peek() const { return text_[i_]; }
  Pos here() const { return {line_, col_}; }

  void advance() {
    if (text_[i_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++i_;
  }

  void skip_blank() {
    while (!at_end()) {
      char c = peek();
      if (c == ';') {
        while (!at_end() && peek() != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  SExpr parse_one() {
    Pos start = here();
    if (peek() == '(') {
      advance();
      std::vector<SExpr> items;
      for (;;) {
        skip_blank();
        if (at_end()) throw Error(ErrorCode::Unbalanced, "missing ')' for list opened here", start);
        if (peek() == ')') {
          advance();
          return SExpr::list(std::move(items), start);
        }
        items.push_back(parse_one());
      }
    }
    return parse_atom();
  }

  SExpr parse_atom() {
    Pos start = here();
    std::size_t begin = i_;
    char c = peek();

    if (c == '"') {
      advance();
      for (;;) {
        if (at_end()) throw Error(ErrorCode::Lex, "unterminated string literal", start);
        if (peek() == '"') {
          advance();
          if (!at_end() && peek() == '"') {
            advance();
            continue;
          }
          break;
        }
        advance();
      }
      return SExpr::atom(AtomKind::String, std::string(text_.substr(begin, i_ - begin)), start);
    }

    if (c == '|') {
      advance();
      for (;;) {
        if (at_end()) throw Error(ErrorCode::Lex, "unterminated quoted symbol", start);
        if (peek() == '\\') throw Error(ErrorCode::Lex, "backslash in quoted symbol", here());
        if (peek() == '|') {
          advance();
          break;
        }
        advance();
      }
      return SExpr::atom(AtomKind::QuotedSymbol, std::string(text_.substr(begin, i_ - begin)),
                         start);
    }

    if (c == '#') {
      advance();
      if (at_end()) throw Error(ErrorCode::Lex, "dangling '#'", start);
      char base = peek();
      advance();
      if (base != 'x' && base != 'b') throw Error(ErrorCode::Lex, "expected #x or #b literal", start);
      auto ok = [base](char d) {
        return base == 'x' ? std::isxdigit(static_cast<unsigned char>(d)) != 0 : d == '0' || d == '1';
      };
      std::size_t digits = 0;
      while (!at_end() && ok(peek())) {
        advance();
        ++digits;
      }
      if (digits == 0 || (!at_end() && is_symbol_char(peek())))
        throw Error(ErrorCode::Lex, "malformed #" + std::string(1, base) + " literal", start);
      return SExpr::atom(base == 'x' ? AtomKind::Hexadecimal : AtomKind::Binary,
                         std::string(text_.substr(begin, i_ - begin)), start);
    }

    if (c == ':') {
      advance();
      while (!at_end() && is_symbol_char(peek())) advance();
      if (i_ - begin == 1) throw Error(ErrorCode::Lex, "empty keyword", start);
      return SExpr::atom(AtomKind::Keyword, std::string(text_.substr(begin, i_ - begin)), start);
    }

    if (is_digit(c)) {
      while (!at_end() && is_digit(peek())) advance();
      AtomKind kind = AtomKind::Numeral;
      if (!at_end() && peek() == '.') {
        advance();
        std::size_t frac = 0;
        while (!at_end() && is_digit(peek())) {
          advance();
          ++frac;
        }
        if (frac == 0) throw Error(ErrorCode::Lex, "malformed decimal", start);
        kind = AtomKind::Decimal;
      }
      if (!at_end() && is_symbol_char(peek()))
        throw Error(ErrorCode::Lex, "symbol may not start with a digit", start);
      return SExpr::atom(kind, std::string(text_.substr(begin, i_ - begin)), start);
    }

    if (is_symbol_char(c)) {
      while (!at_end() && is_symbol_char(peek())) advance();
      return SExpr::atom(AtomKind::Symbol, std::string(text_.substr(begin, i_ - begin)), start);
    }

    throw Error(ErrorCode::Lex, std::string("unexpected character '") + c + "'", start);
  }

  std::string_view text_;
  std::size_t i_ = 0;
  int line_ = 1;
  int col_ = 1;
};

void print_into(const SExpr& e, std::string& out) {
  if (e.is_atom()) {
    out += e.text();
    return;
  }
  out += '(';
  bool first = true;
  for (const auto& item : e.items()) {
    if (!first) out += ' ';
    first = false;
    print_into(item, out);
  }
  out += ')';
}

}  // namespace

std::vector<SExpr> parse_sexprs(std::string_view text) { return Lexer(text).parse_all(); }

std::string print_sexpr(const SExpr& e) {
  std::string out;
  print_into(e, out);
  return out;
}

bool is_simple_symbol(std::string_view text) {
  if (text.empty() || is_digit(text.front())) return false;
  for (char c : text) {
    if (!is_symbol_char(c)) return false;
  }
  return true;
}

std::string symbol_text(std::string_view name) {
  if (is_simple_symbol(name)) return std::string(name);
  if (name.size() >= 2 && name.front() == '|' && name.back() == '|') return std::string(name);
  return "|" + std::string(name) + "|";
}

}  // namespace wpgen
