#pragma once

// The scope-scanning decision procedure and the complete DPLL reference.
//
// decide() probes every literal of the current formula with scope(), in
// order var 1..n with the positive literal first. The first incompatible
// literal makes its complement necessary: the complement is propagated,
// absorbed into the global minterm, and the scan restarts on the residual.
// When no literal is incompatible, a model is built by committing scope
// results literal by literal.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "x3sat/formula.hpp"
#include "x3sat/scope.hpp"

namespace x3sat {

struct SolverOptions {
  /// Construction never backtracks; a dead end is reported as Unknown.
  bool paper_strict = false;
  /// Upper bound on clause examinations across all propagations.
  std::uint64_t step_budget = 10'000'000;
};

enum class Verdict {
  Sat,
  Unsat,
  /// Construction without backtracking (paper_strict) reached a dead end.
  Unknown,
  BudgetExceeded,
  /// A constructed model failed verification against the input formula.
  Discrepancy,
};

enum class UnsatCause {
  NormalizationContradiction,
  /// Propagating the empty minterm already conflicts.
  EmptiedClause,
  /// Both polarities of one variable are incompatible.
  DoubleIncompatibility,
  /// Every literal was compatible, yet backtracking construction found no
  /// model.
  ConstructionExhausted,
  /// dpll_solve exhausted its search tree.
  SearchExhausted,
};

struct UnsatInfo {
  UnsatCause cause = UnsatCause::SearchExhausted;
  std::optional<Variable> var;
  /// Conflict of the literal found incompatible during the scan.
  std::optional<ConflictInfo> first;
  /// Conflict of its complement (double incompatibility) or of the empty
  /// seed (emptied clause).
  std::optional<ConflictInfo> second;
  std::optional<NormalizationEvent> normalization;
};

namespace trace {
struct Normalized {
  NormalizationEvent event;
};
struct ScopeRun {
  Literal literal;
  ScopeResult result;
};
struct NecessaryFixed {
  Literal literal;
  ConflictInfo because;  // conflict of ~literal
};
struct FormulaReduced {
  Formula formula;
};
struct Restarted {};
struct Constructed {
  Literal literal;
};
struct Backtracked {
  Literal literal;
};
struct Decided {
  Verdict verdict = Verdict::Unknown;
  Minterm fixed;
  std::optional<TotalAssignment> model;
  std::optional<UnsatCause> cause;
  std::optional<Variable> var;
  std::uint64_t steps = 0;
};
}  // namespace trace

using TraceEvent = std::variant<trace::Normalized, trace::ScopeRun, trace::NecessaryFixed,
                                trace::FormulaReduced, trace::Restarted, trace::Constructed,
                                trace::Backtracked, trace::Decided>;

struct SolveOutcome {
  Verdict verdict = Verdict::Unknown;
  /// Present for Sat, and for Discrepancy (the model that failed).
  std::optional<TotalAssignment> model;
  /// Literals fixed as necessary (with their propagated consequences)
  /// before construction started.
  Minterm fixed;
  std::optional<UnsatInfo> unsat;
  std::vector<TraceEvent> trace;
  std::uint64_t steps = 0;

  /// An all-compatible formula for which construction found no model.
  bool completeness_counterexample() const {
    return unsat && unsat->cause == UnsatCause::ConstructionExhausted;
  }
};

struct Incompatibility {
  Literal literal;
  ConflictInfo conflict;
};

/// First literal, scanning var 1..n positive before negative over the
/// variables occurring in f, whose scope is incompatible.
std::optional<Incompatibility> find_incompatible(const Formula& f);

struct Fixed {
  Formula formula;
  Minterm psi;
};
struct FixConflict {
  ConflictInfo conflict;
};
using FixResult = std::variant<Fixed, FixConflict>;

/// Conjoins the necessary literal `l` to f: the residual of propagating l
/// becomes the formula and psi absorbs the forced literals. FixConflict
/// means l is incompatible as well.
FixResult fix_necessary(const Formula& f, const Minterm& psi, Literal l);

SolveOutcome decide(const Formula& f, const SolverOptions& options = {});

/// Reports normalization contradictions as Unsat before solving.
SolveOutcome decide(const Instance& instance, const SolverOptions& options = {});

/// Builds a model of psi ∧ f by committing the first open variable
/// positively, fixing necessary literals on the residual, and repeating.
/// Dead ends flip the most recent commit unless options.paper_strict.
std::optional<TotalAssignment> construct_assignment(const Formula& f, const Minterm& psi,
                                                    const SolverOptions& options = {});

/// Complete reference solver with its own propagation.
SolveOutcome dpll_solve(const Formula& f);

class BudgetExceeded : public std::runtime_error {
 public:
  explicit BudgetExceeded(std::uint64_t steps)
      : std::runtime_error("step budget exceeded after " + std::to_string(steps) + " steps"), steps_(steps) {}
  std::uint64_t steps() const { return steps_; }

 private:
  std::uint64_t steps_;
};

const char* to_string(Verdict v);
const char* to_string(UnsatCause c);

}  // namespace x3sat
