#include <doctest.h>

#include <stdexcept>

#include <fstream>
#include <sstream>

#include "support/paper_example.hpp"
#include "x3sat/fuzz.hpp"
#include "x3sat/generator.hpp"
#include "x3sat/textio.hpp"

using namespace x3sat;
using namespace x3sat::testing;

namespace {

std::string slurp(const std::string& name) {
  std::ifstream in(std::string(X3SAT_FIXTURES) + "/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ParseErrorKind error_of(std::string_view text, std::size_t* line = nullptr) {
  try {
    parse_x3(text);
  } catch (const ParseError& e) {
    if (line) *line = e.line();
    return e.kind();
  }
  FAIL("no parse error for: " << text);
  return ParseErrorKind::BadToken;
}

}  // namespace

TEST_CASE("parse the worked example") {
  const Instance inst = parse_x3(slurp("example.x3"));
  CHECK(inst.formula == example());
  CHECK(inst.normalization.empty());
  CHECK_FALSE(inst.contradiction.has_value());

  CHECK(parse_x3("p x3 1 0\n").formula == Formula(1, {}));
  CHECK(parse_x3("c lead\n\np x3 2 1\nc mid\n  -1   2 0\n").formula == formula(2, {{-1, 2}}));
}

TEST_CASE("parse normalizes repeated literals and records the event") {
  const Instance inst = parse_x3("p x3 2 1\n1 1 2 0\n");
  CHECK(inst.formula == formula(2, {{-1}, {2}}));
  REQUIRE(inst.normalization.size() == 1);
  CHECK(inst.normalization[0].line == 2);
  CHECK(inst.normalization[0].forced == std::vector<Literal>{lit(-1), lit(2)});

  const Instance bad = parse_x3("p x3 1 1\n1 1 1 0\n");
  REQUIRE(bad.contradiction.has_value());
  CHECK(bad.contradiction->unsatisfiable);
}

TEST_CASE("parse errors carry kind and line") {
  std::size_t line = 0;
  CHECK(error_of("1 2 0\n", &line) == ParseErrorKind::MissingHeader);
  CHECK(line == 1);
  CHECK(error_of("") == ParseErrorKind::MissingHeader);
  CHECK(error_of("p x3 2 0\np x3 2 0\n", &line) == ParseErrorKind::DuplicateHeader);
  CHECK(line == 2);
  CHECK(error_of("p cnf 2 1\n1 0\n") == ParseErrorKind::BadHeader);
  CHECK(error_of("p x3 -2 1\n1 0\n") == ParseErrorKind::BadHeader);
  CHECK(error_of("p x3 2 1\n1 q 0\n", &line) == ParseErrorKind::BadToken);
  CHECK(line == 2);
  CHECK(error_of("p x3 2 1\nc\n1 3 0\n", &line) == ParseErrorKind::VariableOutOfRange);
  CHECK(line == 3);
  CHECK(error_of("p x3 4 1\n1 2 3 4 0\n") == ParseErrorKind::ClauseWidth);
  CHECK(error_of("p x3 4 1\n0\n") == ParseErrorKind::ClauseWidth);
  CHECK(error_of("p x3 4 1\n1 2\n") == ParseErrorKind::MissingTerminator);
  CHECK(error_of("p x3 4 2\n1 2 0\n") == ParseErrorKind::CountMismatch);
}

TEST_CASE("serialize and round trip") {
  CHECK(serialize_x3(example()) == "p x3 5 3\n1 2 3 0\n2 4 5 0\n3 4 -5 0\n");
  CHECK(serialize_x3(Formula{}) == "p x3 0 0\n");
  CHECK(format_clause_list(formula(5, {{x, y}, {x, -y}})) == "4 5 0 4 -5 0");
  CHECK(parse_clause_list(5, "4 5 0 4 -5 0") == formula(5, {{x, y}, {x, -y}}));
  CHECK(parse_literals("1 -2 -3") == std::vector<Literal>{lit(1), lit(-2), lit(-3)});

  for (std::uint64_t s = 0; s < 1000; ++s) {
    const Formula f = generate({1 + static_cast<std::uint32_t>(s % 20) + 3, static_cast<std::uint32_t>(s % 17),
                                WidthDistribution::mixed(1, 2, 4), s});
    const std::string text = serialize_x3(f);
    const Instance back = parse_x3(text);
    CHECK(back.formula == f);
    CHECK(serialize_x3(back.formula) == text);
  }
}

TEST_CASE("trace records") {
  ConflictInfo because{Variable{y}, ConflictInfo::Kind::Complementary, {}};
  CHECK(format_trace_event(trace::NecessaryFixed{lit(-x), because}) ==
        "necessary lit=-4 cause=complement-incompatible conflict_var=5");
  CHECK(format_trace_event(trace::Restarted{}) == "restart");
  CHECK(emit_trace({}).empty());

  const SolveOutcome out = decide(example());
  const std::string text = emit_trace(out.trace);
  const auto records = parse_trace(text);
  REQUIRE(records.size() == out.trace.size());
  const TraceRecord& last = records.back();
  CHECK(last.tag == "decided");
  CHECK(last.at("result") == "SAT");
  CHECK(last.at("fixed") == "-4 -1");
  CHECK(last.at("model") == "-1 2 -3 -4 -5");
  CHECK_FALSE(last.has("cause"));
  CHECK_THROWS_AS(last.at("cause"), std::out_of_range);

  CHECK(records[0].tag == "scope");
  CHECK(records[0].at("psi") == "1 -2 -3");
  CHECK(records[0].at("residual") == "4 5 0 4 -5 0");
  CHECK(records[6].at("derivation") == "4/a -2/2 -5/2 -3/3 5/3");

  CHECK_THROWS_AS(parse_trace("scope lit\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_trace("scope psi=\"1 2\n"), std::invalid_argument);
}

namespace {

// Rebuilds every reduced formula from the necessary records of a trace
// stream and checks it against the record and the in-memory event.
void replay(const Formula& input, const SolveOutcome& out) {
  const std::string text = emit_trace(out.trace);
  const auto records = parse_trace(text);
  REQUIRE(records.size() == out.trace.size());
  Formula current = input;
  Minterm psi;
  std::optional<Formula> expected;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const TraceRecord& r = records[i];
    if (r.tag == "necessary") {
      const auto l = parse_literals(r.at("lit"));
      REQUIRE(l.size() == 1);
      auto fixed = fix_necessary(current, psi, l[0]);
      REQUIRE(std::holds_alternative<Fixed>(fixed));
      expected = std::get<Fixed>(fixed).formula;
      psi = std::get<Fixed>(fixed).psi;
    } else if (r.tag == "reduced") {
      const Formula got = parse_clause_list(static_cast<std::uint32_t>(std::stoul(r.at("nvars"))), r.at("clauses"));
      CHECK(got == std::get<trace::FormulaReduced>(out.trace[i]).formula);
      if (expected) CHECK(got == *expected);
      expected.reset();
      current = got;
    } else if (r.tag == "construct") {
      break;
    }
  }
}

}  // namespace

TEST_CASE("a trace stream replays to the same reduced formulas") {
  replay(example(), decide(example()));
  for (std::uint64_t i = 0; i < 300; ++i) {
    const Formula f = random_instance(11, i, 10, 10);
    replay(f, decide(f));
  }
}
