#pragma once

// Brute-force ground truth over all 2^n assignments.
//
// Assignments are enumerated in lexicographic order of (x1, ..., xn) with
// false < true, i.e. x1 is the most significant bit.

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "x3sat/formula.hpp"

namespace x3sat {

enum class Semantics {
  ExactlyOne,   // (a ⊙ b ⊙ c)
  InclusiveOr,  // (a ∨ b ∨ c)
};

const char* to_string(Semantics s);
std::optional<Semantics> parse_semantics(std::string_view name);

struct OracleOptions {
  std::uint32_t max_vars = 24;
  /// Models are listed only when the count is at most this cap.
  std::uint64_t model_cap = 64;
  /// Worker threads; results do not depend on this.
  unsigned workers = 1;
};

struct ModelReport {
  std::uint64_t count = 0;
  std::optional<std::vector<TotalAssignment>> models;
  Semantics semantics = Semantics::ExactlyOne;
};

class OracleGuardError : public std::runtime_error {
 public:
  OracleGuardError(std::uint32_t nvars, std::uint32_t limit)
      : std::runtime_error("oracle refuses " + std::to_string(nvars) + " variables (limit " +
                           std::to_string(limit) + "; raise it explicitly to override)") {}
};

ModelReport enumerate_models(const Formula& f, Semantics semantics, const OracleOptions& options = {});

/// Models of f in which every literal of `assumptions` holds.
std::uint64_t count_models(const Formula& f, std::span<const Literal> assumptions,
                           Semantics semantics = Semantics::ExactlyOne, const OracleOptions& options = {});

/// True iff every exactly-one model of f containing `assumption` also
/// contains `consequence` (vacuously true when there is none).
bool entails(const Formula& f, Literal assumption, Literal consequence, const OracleOptions& options = {});

}  // namespace x3sat
