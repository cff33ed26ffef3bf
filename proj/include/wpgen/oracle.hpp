#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "wpgen/ast.hpp"
#include "wpgen/vcgen.hpp"

/// Ground-truth semantics at small scale: a concrete interpreter over
/// bounded integer states and a bounded evaluator for formulas. Independent
/// of the rewriting and reduction code it is used to check.
namespace wpgen::oracle {

using Value = std::variant<bool, std::int64_t>;
using State = std::map<std::string, Value>;

/// Interpretations for uninterpreted function symbols.
using Interpretation = std::map<std::string, std::function<Value(std::span<const Value>)>>;

std::string to_string(const Value& v);
std::string to_string(const State& s);

/// Evaluates a modality-free term. (old u) is evaluated in `old`;
/// quantifiers range over [-bound, bound]. Only Core and Ints are supported.
Value eval_term(const Term& t, const State& cur, const State& old, int bound,
                const Interpretation* funs = nullptr);
bool eval_formula(const Term& t, const State& cur, const State& old, int bound,
                  const Interpretation* funs = nullptr);

struct OutcomeSet {
  std::set<State> finals;
  bool aborted = false;    // some resolution violated a spec precondition
  bool exhausted = false;  // some resolution ran out of loop fuel
};

/// Executes p from `start`, exploring every resolution of spec
/// nondeterminism over [-bound, bound]. Each loop iteration costs one unit of fuel.
OutcomeSet run_program(const Program& p, const State& start, int bound, int fuel,
                       const Interpretation* funs = nullptr);

enum class Tri { False, True, Unknown };
std::string_view to_string(Tri t);

/// Whether (mode p post) holds at `start`, judged from the explored outcomes.
/// (old x) in post refers to `start`.
Tri holds(Mode mode, const Program& p, const Term& post, const State& start, int bound, int fuel,
          const Interpretation* funs = nullptr);

/// Every state assigning each variable a value in [-bound, bound].
std::vector<State> all_states(const std::vector<std::string>& vars, int bound);
std::vector<State> all_states(const std::vector<std::string>& vars, int lo, int hi);

// ---------------------------------------------------------------------------
// Random loop-free programs over Int variables.

struct GenConfig {
  std::vector<std::string> vars{"x", "y"};
  int bound = 2;
  int max_stmts = 4;
  bool allow_spec = true;
  bool spec_pre_true = false;
  bool allow_old = true;
};

class ProgramGenerator {
 public:
  ProgramGenerator(GenConfig config, std::uint64_t seed) : config_(std::move(config)), rng_(seed) {}

  SExpr program();
  SExpr formula();
  SExpr int_expr(int depth, bool allow_old);
  SExpr bool_expr(int depth, bool allow_old);

  const GenConfig& config() const { return config_; }

 private:
  SExpr statement(int& budget);
  int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }

  GenConfig config_;
  std::mt19937_64 rng_;
};

/// Random well-formed s-expression mixing every atom kind, for round-trip fuzzing.
SExpr random_sexpr(std::mt19937_64& rng, int depth);

/// Symbol table declaring every variable as Int.
SymbolTable int_table(const std::vector<std::string>& vars);

// ---------------------------------------------------------------------------
// Differential testing of the reduction against the interpreter.

struct DiffConfig {
  int trials = 1000;
  int bound = 2;
  int fuel = 32;
  int max_stmts = 4;
  std::vector<std::string> vars{"x", "y"};
  std::uint64_t seed = 1;
  VcOptions options;
};

struct Mismatch {
  std::string program;
  std::string post;
  Mode mode = Mode::Wp;
  State state;
  Tri oracle = Tri::Unknown;
  bool formula = false;

  /// One machine-readable line.
  std::string line() const;
};

struct DiffReport {
  int trials = 0;
  long checks = 0;
  long skipped_unknown = 0;
  std::vector<Mismatch> mismatches;

  std::string summary() const;
};

/// Compares holds(...) with the bounded evaluation of the reduced formula
/// for every mode and every in-bound initial state of random programs.
/// Mismatches come with a greedily minimized program.
DiffReport differential_check(const DiffConfig& config);

/// Checks one program/postcondition pair (given as text) in every mode.
std::vector<Mismatch> check_one(const SExpr& program, const SExpr& post, const DiffConfig& config);

// ---------------------------------------------------------------------------
// Algebraic properties of the reduction under bounded evaluation.

struct PropertyConfig {
  int programs = 200;
  int bound = 2;
  int max_stmts = 4;
  std::vector<std::string> vars{"x", "y"};
  std::uint64_t seed = 1;
};

struct PropertyReport {
  int programs = 0;
  long checks = 0;
  std::vector<std::string> violations;  // one line each, naming the property

  std::string summary() const;
};

/// Samples loop-free programs and checks, at every in-bound state:
/// wp => box; wp = box = dia without specs; dia(p,Q) = not box(p, not Q)
/// when every spec pre is true; monotonicity and conjunctivity of wp.
PropertyReport property_check(const PropertyConfig& config);

}  // namespace wpgen::oracle
