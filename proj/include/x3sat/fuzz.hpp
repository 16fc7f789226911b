#pragma once

// Differential harness: decide() against dpll_solve() and the brute-force
// oracle, with an oracle audit of every step decide() records.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "x3sat/formula.hpp"
#include "x3sat/solver.hpp"

namespace x3sat {

struct FuzzConfig {
  std::uint64_t count = 1000;
  std::uint32_t max_vars = 8;
  std::uint32_t max_clauses = 6;
  std::uint64_t seed = 0;

  /// Every multiset of at most exhaustive_clauses normalized clauses over
  /// exhaustive_vars variables, instead of random instances.
  bool exhaustive = false;
  std::uint32_t exhaustive_vars = 4;
  std::uint32_t exhaustive_clauses = 3;

  SolverOptions solver;
  /// Instances above this size skip the oracle and the audit.
  std::uint32_t oracle_max_vars = 16;
  bool audit = true;
  bool shrink = true;
  unsigned jobs = 1;
  std::optional<std::filesystem::path> out_dir;
};

struct Finding {
  std::uint64_t index = 0;
  /// disagreement | soundness | discrepancy | crash | undecided |
  /// completeness-counterexample
  std::string category;
  std::string detail;
  Formula original;
  Formula minimal;
  /// Trace of decide() on the minimal instance.
  std::string trace;
};

struct FuzzReport {
  std::string mode;
  std::uint64_t seed = 0;
  std::uint64_t instances = 0;
  std::uint64_t sat = 0;
  std::uint64_t unsat = 0;
  std::uint64_t agree = 0;
  std::uint64_t disagree = 0;
  std::uint64_t completeness_counterexamples = 0;
  std::uint64_t undecided = 0;
  std::uint64_t discrepancies = 0;
  std::uint64_t soundness_violations = 0;
  std::uint64_t crashes = 0;
  std::uint64_t oracle_checked = 0;
  std::vector<Finding> findings;

  /// Deterministic, line-oriented summary.
  std::string summary(const FuzzConfig& config) const;
};

/// Runs the campaign; findings are written to config.out_dir when set.
FuzzReport run_fuzz(const FuzzConfig& config);

/// Instance number `index` of a random campaign seeded with `seed`.
Formula random_instance(std::uint64_t seed, std::uint64_t index, std::uint32_t max_vars,
                        std::uint32_t max_clauses);

/// All normalized clauses over variables 1..nvars, in a fixed order.
std::vector<XClause> clause_universe(std::uint32_t nvars);

/// Every formula over nvars variables with at most max_clauses clauses
/// drawn from clause_universe(nvars). `ordered` enumerates sequences,
/// otherwise non-decreasing index multisets.
std::vector<Formula> exhaustive_family(std::uint32_t nvars, std::uint32_t max_clauses, bool ordered);

/// Oracle audit of a decide() outcome on f. Returns one message per
/// violation:
///  - every literal of every compatible scope is entailed,
///  - every incompatible literal has no model,
///  - every necessary literal holds in every model (count preserved),
///  - each recorded residual matches a fresh propagation,
///  - Sat models satisfy f; Unsat verdicts have zero models.
std::vector<std::string> audit_decide(const Formula& f, const SolveOutcome& outcome,
                                      std::uint32_t oracle_max_vars = 16);

}  // namespace x3sat
