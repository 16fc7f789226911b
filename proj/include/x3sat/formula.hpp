#pragma once

// Core data model for exactly-one-in-three satisfiability (X3SAT).
//
// A clause written (a ⊙ b ⊙ c) holds iff exactly one of its literals is
// true. Variables are dense and 1-based; a Formula over n variables may
// mention any id in 1..n.

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace x3sat {

struct Variable {
  std::uint32_t id = 0;

  constexpr auto operator<=>(const Variable&) const = default;
};

class Literal {
 public:
  constexpr Literal() = default;
  constexpr Literal(Variable var, bool positive)
      : code_((var.id << 1) | (positive ? 0u : 1u)) {}

  /// Signed DIMACS integer: +v for v, -v for its negation. Zero is rejected.
  static Literal from_dimacs(int value);

  constexpr Variable var() const { return Variable{code_ >> 1}; }
  constexpr bool positive() const { return (code_ & 1u) == 0; }
  constexpr int to_dimacs() const {
    const int v = static_cast<int>(code_ >> 1);
    return positive() ? v : -v;
  }
  constexpr Literal operator~() const {
    Literal l;
    l.code_ = code_ ^ 1u;
    return l;
  }

  // Orders by (var id, polarity) with the positive literal first.
  constexpr auto operator<=>(const Literal&) const = default;

 private:
  std::uint32_t code_ = 0;
};

constexpr Literal negate(Literal l) { return ~l; }

constexpr bool complementary(Literal a, Literal b) {
  return a.var() == b.var() && a.positive() != b.positive();
}

/// An exactly-one constraint over 1..3 literals on distinct variables,
/// stored sorted by (var id, polarity).
class XClause {
 public:
  static constexpr std::size_t kMaxWidth = 3;

  /// Throws std::invalid_argument when the width is outside 1..3 or two
  /// literals share a variable. Use normalize_clause() for raw input.
  explicit XClause(std::span<const Literal> literals);
  XClause(std::initializer_list<Literal> literals)
      : XClause(std::span<const Literal>(literals.begin(), literals.size())) {}

  std::size_t width() const { return width_; }
  std::span<const Literal> literals() const { return {lits_.data(), width_}; }
  auto begin() const { return lits_.begin(); }
  auto end() const { return lits_.begin() + width_; }
  Literal operator[](std::size_t i) const { return lits_[i]; }
  bool contains(Variable v) const;

  bool operator==(const XClause& other) const;

 private:
  std::array<Literal, kMaxWidth> lits_{};
  std::size_t width_ = 0;
};

class Formula {
 public:
  Formula() = default;
  /// Throws std::invalid_argument if a literal refers to a var id > nvars.
  Formula(std::uint32_t nvars, std::vector<XClause> clauses);

  std::uint32_t nvars() const { return nvars_; }
  const std::vector<XClause>& clauses() const { return clauses_; }
  std::size_t size() const { return clauses_.size(); }
  bool empty() const { return clauses_.empty(); }
  const XClause& operator[](std::size_t i) const { return clauses_[i]; }

  /// Variables that occur in at least one clause, ascending.
  std::vector<Variable> occurring_vars() const;
  bool mentions(Variable v) const;

  bool operator==(const Formula&) const = default;

 private:
  std::uint32_t nvars_ = 0;
  std::vector<XClause> clauses_;
};

/// A consistent set of fixed literals. Literals are kept in insertion
/// order for trace output; equality is set equality.
class Minterm {
 public:
  enum class Insert { Added, Present, Conflict };

  Minterm() = default;
  Minterm(std::initializer_list<Literal> literals);

  /// Adding the complement of a fixed literal leaves the minterm unchanged
  /// and reports Conflict.
  Insert add(Literal l);

  std::optional<bool> value(Variable v) const;
  bool contains(Literal l) const;
  bool assigned(Variable v) const { return value(v).has_value(); }
  std::span<const Literal> literals() const { return order_; }
  std::size_t size() const { return order_.size(); }
  bool empty() const { return order_.empty(); }

  /// Literals sorted by (var, polarity), for set-style comparison.
  std::vector<Literal> sorted() const;

  bool operator==(const Minterm& other) const;

 private:
  std::vector<std::int8_t> values_;  // indexed by var id: 0 unset, 1 true, -1 false
  std::vector<Literal> order_;
};

class TotalAssignment {
 public:
  TotalAssignment() = default;
  explicit TotalAssignment(std::uint32_t nvars) : values_(nvars, false) {}
  explicit TotalAssignment(std::vector<bool> values) : values_(std::move(values)) {}

  /// psi extended to vars 1..nvars; untouched vars default to false.
  static TotalAssignment from_minterm(const Minterm& psi, std::uint32_t nvars);

  std::uint32_t nvars() const { return static_cast<std::uint32_t>(values_.size()); }
  bool value(Variable v) const { return values_.at(v.id - 1); }
  void set(Variable v, bool b) { values_.at(v.id - 1) = b; }
  bool satisfies(Literal l) const { return value(l.var()) == l.positive(); }

  /// One signed literal per var, ascending: "-1 2 -3 ...".
  std::vector<Literal> literals() const;

  bool operator==(const TotalAssignment&) const = default;

 private:
  std::vector<bool> values_;
};

/// One step of a propagation derivation: a literal and the clause (index
/// into the formula that was propagated) that forced it. An empty clause
/// index marks an asserted literal.
struct DerivationStep {
  Literal literal;
  std::optional<std::size_t> clause;

  bool operator==(const DerivationStep&) const = default;
};

struct ConflictInfo {
  enum class Kind {
    // A clause forced the complement of a fixed literal.
    Complementary,
    // Every literal of a clause became false; the last literal to be
    // falsified is reported as the literal the clause would have forced.
    ClauseEmpty,
  };

  Variable var;
  Kind kind = Kind::Complementary;
  std::vector<DerivationStep> derivation;
};

// --- normalization of raw clauses -----------------------------------------

struct ForcedLiterals {
  std::vector<Literal> literals;
};
struct UnsatisfiableClause {};

using NormalizedClause = std::variant<XClause, ForcedLiterals, UnsatisfiableClause>;

/// Rewrites a raw clause of 1..3 literals (possibly with repeated or
/// complementary occurrences) into an equivalent clean clause, or into the
/// literals it forces, or reports that no assignment satisfies it.
///
/// A literal occurring twice contributes zero or two true occurrences, so
/// it is forced false. A complementary pair always contributes exactly one
/// true occurrence, so every other literal is forced false. A single
/// surviving literal after eliminating repeats is forced true.
NormalizedClause normalize_clause(std::span<const Literal> raw);

struct NormalizationEvent {
  std::size_t line = 0;  // source line, 0 when not parsed from text
  std::vector<Literal> raw;
  std::vector<Literal> forced;
  bool unsatisfiable = false;
};

/// A formula together with what normalization did to its raw clauses.
/// Forced literals become unit clauses at the position of the raw clause.
struct Instance {
  Formula formula;
  std::vector<NormalizationEvent> normalization;
  std::optional<NormalizationEvent> contradiction;
};

struct RawClause {
  std::vector<Literal> literals;
  std::size_t line = 0;
};

Instance normalize_formula(std::uint32_t nvars, std::span<const RawClause> raw);

// --- semantics -------------------------------------------------------------

/// True iff exactly one literal of the clause is true under t.
bool evaluate(const XClause& clause, const TotalAssignment& t);

/// True iff every clause has exactly one true literal. Throws
/// std::invalid_argument if t does not cover all variables of f.
bool evaluate(const Formula& f, const TotalAssignment& t);

std::string to_string(Literal l);
std::string to_string(const XClause& c);
std::string to_string(const Formula& f);

}  // namespace x3sat
