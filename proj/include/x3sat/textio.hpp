#pragma once

// The x3 instance format and the line-oriented trace stream.
//
// x3 is DIMACS-flavored with its own header so it is never mistaken for
// inclusive-or CNF:
//
//   c optional comment lines
//   p x3 <nvars> <nclauses>
//   1 2 3 0
//   2 4 5 0
//   3 4 -5 0
//
// Each clause line holds 1..3 nonzero literals followed by a terminating 0.
//
// A trace record is one line: a tag followed by key=value fields. Values
// containing spaces are double-quoted. Literal lists are space separated
// DIMACS integers; clause lists use x3 clause syntax ("4 5 0 4 -5 0").
// Derivation steps are written <literal>/<clause>, where <clause> is the
// 1-based clause number in the formula being propagated and "a" marks an
// asserted literal.

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "x3sat/formula.hpp"
#include "x3sat/solver.hpp"

namespace x3sat {

enum class ParseErrorKind {
  MissingHeader,
  DuplicateHeader,
  BadHeader,
  BadToken,
  VariableOutOfRange,
  ClauseWidth,
  MissingTerminator,
  CountMismatch,
};

class ParseError : public std::runtime_error {
 public:
  ParseError(ParseErrorKind kind, std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), kind_(kind), line_(line) {}

  ParseErrorKind kind() const { return kind_; }
  std::size_t line() const { return line_; }

 private:
  ParseErrorKind kind_;
  std::size_t line_;
};

/// Parses and normalizes an x3 document. Throws ParseError.
Instance parse_x3(std::string_view text);

std::string serialize_x3(const Formula& f);

/// "4 5 0 4 -5 0"
std::string format_clause_list(const Formula& f);
/// "1 -2 -3"
std::string format_literals(std::span<const Literal> literals);

/// Inverse of format_clause_list; clauses must already be normal.
Formula parse_clause_list(std::uint32_t nvars, std::string_view text);
std::vector<Literal> parse_literals(std::string_view text);

std::string format_trace_event(const TraceEvent& event);
/// One line per event, each terminated by '\n'.
std::string emit_trace(std::span<const TraceEvent> events);

struct TraceRecord {
  std::string tag;
  std::vector<std::pair<std::string, std::string>> fields;

  /// Value of `key`; throws std::out_of_range if absent.
  const std::string& at(std::string_view key) const;
  bool has(std::string_view key) const;
};

/// Splits a trace stream into records. Throws std::invalid_argument on a
/// malformed line.
std::vector<TraceRecord> parse_trace(std::string_view text);

}  // namespace x3sat
