#include "wpgen/oracle.hpp"

namespace wpgen::oracle {

namespace {

SExpr sym(const std::string& s) { return SExpr::symbol(s); }

SExpr num(int v) {
  SExpr lit = SExpr::atom(AtomKind::Numeral, std::to_string(v < 0 ? -v : v));
  if (v < 0) return SExpr::list({sym("-"), lit});
  return lit;
}

SExpr app(const std::string& f, std::vector<SExpr> args) {
  args.insert(args.begin(), sym(f));
  return SExpr::list(std::move(args));
}

}  // namespace

SExpr ProgramGenerator::int_expr(int depth, bool allow_old) {
  const auto& vars = config_.vars;
  if (depth <= 0 || coin(0.45)) {
    int r = pick(0, 9);
    if (r < 5) {
      SExpr v = sym(vars[pick(0, static_cast<int>(vars.size()) - 1)]);
      if (allow_old && config_.allow_old && coin(0.3)) return app("old", {v});
      return v;
    }
    return num(pick(-config_.bound, config_.bound));
  }
  switch (pick(0, 3)) {
    case 0: return app("+", {int_expr(depth - 1, allow_old), int_expr(depth - 1, allow_old)});
    case 1: return app("-", {int_expr(depth - 1, allow_old), int_expr(depth - 1, allow_old)});
    case 2: return app("-", {int_expr(depth - 1, allow_old)});
    default:
      return app("ite", {bool_expr(depth - 1, allow_old), int_expr(depth - 1, allow_old),
                         int_expr(depth - 1, allow_old)});
  }
}

SExpr ProgramGenerator::bool_expr(int depth, bool allow_old) {
  if (depth <= 0 || coin(0.5)) {
    switch (pick(0, 6)) {
      case 0: return app("<=", {int_expr(1, allow_old), int_expr(1, allow_old)});
      case 1: return app("<", {int_expr(1, allow_old), int_expr(1, allow_old)});
      case 2:
      case 3: return app("=", {int_expr(1, allow_old), int_expr(1, allow_old)});
      case 4: return app(">", {int_expr(1, allow_old), int_expr(1, allow_old)});
      case 5: return sym(coin() ? "true" : "false");
      default: return app(">=", {int_expr(1, allow_old), int_expr(1, allow_old)});
    }
  }
  switch (pick(0, 3)) {
    case 0: return app("not", {bool_expr(depth - 1, allow_old)});
    case 1: return app("and", {bool_expr(depth - 1, allow_old), bool_expr(depth - 1, allow_old)});
    case 2: return app("or", {bool_expr(depth - 1, allow_old), bool_expr(depth - 1, allow_old)});
    default: return app("=>", {bool_expr(depth - 1, allow_old), bool_expr(depth - 1, allow_old)});
  }
}

SExpr ProgramGenerator::statement(int& budget) {
  --budget;
  const auto& vars = config_.vars;
  const int n = static_cast<int>(vars.size());
  int kind = pick(0, config_.allow_spec ? 9 : 6);

  if (kind <= 3) {
    // Parallel assignment to one or more distinct targets.
    int first = pick(0, n - 1);
    std::vector<SExpr> items{sym("assign"), SExpr::list({sym(vars[first]), int_expr(2, false)})};
    if (n > 1 && coin(0.35)) {
      int second = (first + pick(1, n - 1)) % n;
      items.push_back(SExpr::list({sym(vars[second]), int_expr(2, false)}));
    }
    return SExpr::list(std::move(items));
  }
  if (kind <= 6) {
    auto branch = [&]() -> SExpr {
      if (budget > 0 && coin(0.7)) return statement(budget);
      return SExpr::list({sym("block")});
    };
    SExpr test = bool_expr(1, false);
    SExpr then_branch = branch();
    SExpr else_branch = branch();
    return app("if", {test, then_branch, else_branch});
  }

  std::vector<SExpr> havocked;
  for (const auto& v : vars) {
    if (coin(0.45)) havocked.push_back(sym(v));
  }
  SExpr pre = config_.spec_pre_true || coin(0.4) ? sym("true") : bool_expr(1, false);
  SExpr post = coin(0.15) ? sym("true") : bool_expr(1, true);
  return app("spec", {SExpr::list(std::move(havocked)), pre, post});
}

SExpr ProgramGenerator::program() {
  int budget = pick(1, config_.max_stmts);
  std::vector<SExpr> items{sym("block")};
  while (budget > 0) items.push_back(statement(budget));
  return SExpr::list(std::move(items));
}

SExpr ProgramGenerator::formula() { return bool_expr(2, true); }

SymbolTable int_table(const std::vector<std::string>& vars) {
  SymbolTable table;
  for (const auto& v : vars) table.declare_const(v, Sort::Int());
  return table;
}

}  // namespace wpgen::oracle

namespace wpgen::oracle {

namespace {

std::string random_chars(std::mt19937_64& rng, std::string_view alphabet, int lo, int hi) {
  std::uniform_int_distribution<int> len(lo, hi);
  std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
  std::string s;
  for (int n = len(rng); n > 0; --n) s += alphabet[pick(rng)];
  return s;
}

SExpr random_atom(std::mt19937_64& rng) {
  static constexpr std::string_view lower = "abcdefghijklmnopqrstuvwxyz";
  static constexpr std::string_view symchars =
      "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789~!@$%^&*_-+=<>.?/";
  static constexpr std::string_view digits = "0123456789";
  static constexpr std::string_view quoted = "abc xyz()\"';#:{}~\t\n01";
  static constexpr std::string_view strchars = "abc xyz()|;\\#:\"\n";
  switch (std::uniform_int_distribution<int>(0, 7)(rng)) {
    case 0: return SExpr::atom(AtomKind::Symbol, random_chars(rng, lower, 1, 1) + random_chars(rng, symchars, 0, 6));
    case 1: return SExpr::atom(AtomKind::QuotedSymbol, "|" + random_chars(rng, quoted, 0, 8) + "|");
    case 2: return SExpr::atom(AtomKind::Keyword, ":" + random_chars(rng, symchars, 1, 6));
    case 3: {
      std::string n = random_chars(rng, digits, 1, 6);
      while (n.size() > 1 && n[0] == '0') n.erase(0, 1);
      return SExpr::atom(AtomKind::Numeral, n);
    }
    case 4: {
      std::string n = random_chars(rng, digits, 1, 1);
      return SExpr::atom(AtomKind::Decimal, n + "." + random_chars(rng, digits, 1, 4));
    }
    case 5: return SExpr::atom(AtomKind::Hexadecimal, "#x" + random_chars(rng, "0123456789abcdefABCDEF", 1, 8));
    case 6: return SExpr::atom(AtomKind::Binary, "#b" + random_chars(rng, "01", 1, 8));
    default: {
      std::string body;
      for (char c : random_chars(rng, strchars, 0, 8)) {
        body += c;
        if (c == '"') body += '"';
      }
      return SExpr::atom(AtomKind::String, "\"" + body + "\"");
    }
  }
}

}  // namespace

SExpr random_sexpr(std::mt19937_64& rng, int depth) {
  if (depth <= 0 || std::bernoulli_distribution(0.35)(rng)) return random_atom(rng);
  std::vector<SExpr> items;
  for (int n = std::uniform_int_distribution<int>(0, 4)(rng); n > 0; --n)
    items.push_back(random_sexpr(rng, depth - 1));
  return SExpr::list(std::move(items));
}

}  // namespace wpgen::oracle
