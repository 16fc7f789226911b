#pragma once

// Scope(l, f): assert a literal, close the minterm under exactly-one
// consequences, and either report incompatibility or split l ∧ f into the
// forced minterm and the residual formula over the untouched variables.

#include <cstdint>
#include <variant>
#include <vector>

#include "x3sat/formula.hpp"

namespace x3sat {

namespace status {
/// Some literal is true; every sibling is forced false.
struct Satisfied {
  Literal witness;
  std::vector<Literal> forces;
};
/// At least one literal is false and two or more remain open.
struct Reduced {
  XClause clause;
};
/// All but one literal are false; the remaining one is forced true.
struct Unit {
  Literal forces;
};
/// Every literal is false.
struct Empty {};
/// No literal is assigned.
struct Untouched {};
}  // namespace status

using ClauseStatus =
    std::variant<status::Satisfied, status::Reduced, status::Unit, status::Empty, status::Untouched>;

ClauseStatus clause_status(const XClause& clause, const Minterm& psi);

struct Compatible {
  Minterm psi;
  Formula residual;
};

struct Incompatible {
  ConflictInfo conflict;
};

struct ScopeResult {
  std::variant<Compatible, Incompatible> outcome;
  /// Clause examinations performed; the solver's step budget counts these.
  std::uint64_t steps = 0;

  bool compatible() const { return std::holds_alternative<Compatible>(outcome); }
  const Compatible& as_compatible() const { return std::get<Compatible>(outcome); }
  const Incompatible& as_incompatible() const { return std::get<Incompatible>(outcome); }
};

/// Closes `seed` under the clauses of `f` until fixpoint.
///
/// The first sweep visits every clause in formula order; afterwards each
/// newly fixed literal, in FIFO order, revisits the clauses mentioning its
/// variable. Propagation stops at the first conflict. Seed literals appear
/// in the derivation as asserted steps, forced literals cite the index of
/// the clause that forced them.
ScopeResult propagate(const Formula& f, const Minterm& seed);

/// propagate(f, {l}). Throws std::invalid_argument if var(l) does not occur
/// in f.
ScopeResult scope(Literal l, const Formula& f);

/// Checks that every step of `conflict.derivation` is either asserted or
/// forced by its cited clause given the earlier steps, and that the final
/// step is complementary to an earlier one on `conflict.var`.
bool replays(const Formula& f, const ConflictInfo& conflict);

}  // namespace x3sat
