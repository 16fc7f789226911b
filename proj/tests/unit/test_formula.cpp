#include <doctest.h>

#include <algorithm>
#include <set>
#include <stdexcept>

#include "support/brute.hpp"
#include "support/paper_example.hpp"
#include "x3sat/formula.hpp"
#include "x3sat/generator.hpp"

using namespace x3sat;
using namespace x3sat::testing;

TEST_CASE("negate flips polarity and is an involution") {
  CHECK(negate(lit(x)) == lit(-x));
  CHECK(negate(lit(-y)) == lit(y));
  CHECK(negate(negate(lit(a))) == lit(a));
  for (int v = 1; v <= 64; ++v)
    for (int s : {1, -1}) {
      const Literal l = lit(s * v);
      CHECK(negate(negate(l)) == l);
      CHECK(complementary(l, negate(l)));
      CHECK(negate(l).var() == l.var());
    }
  CHECK_FALSE(complementary(lit(a), lit(b)));
  CHECK_THROWS_AS(Literal::from_dimacs(0), std::invalid_argument);
}

TEST_CASE("XClause keeps 1..3 literals on distinct variables, sorted") {
  const XClause cl = clause({5, -2, 3});
  CHECK(cl.width() == 3);
  CHECK(cl[0] == lit(-2));
  CHECK(cl[1] == lit(3));
  CHECK(cl[2] == lit(5));
  CHECK_THROWS_AS(XClause(std::span<const Literal>{}), std::invalid_argument);
  CHECK_THROWS_AS(clause({1, 2, 3, 4}), std::invalid_argument);
  CHECK_THROWS_AS(clause({1, -1}), std::invalid_argument);
  CHECK_THROWS_AS(clause({2, 2}), std::invalid_argument);
}

TEST_CASE("Formula rejects variables beyond nvars") {
  CHECK_THROWS_AS(formula(2, {{1, 3}}), std::invalid_argument);
  const Formula f = example();
  CHECK(f.nvars() == 5);
  CHECK(f.size() == 3);
  CHECK(f.occurring_vars().size() == 5);
  CHECK(formula(6, {{1, 2}}).occurring_vars() == std::vector<Variable>{{1}, {2}});
}

TEST_CASE("Minterm never stores both polarities") {
  Minterm m;
  CHECK(m.add(lit(3)) == Minterm::Insert::Added);
  CHECK(m.add(lit(3)) == Minterm::Insert::Present);
  CHECK(m.add(lit(-3)) == Minterm::Insert::Conflict);
  CHECK(m.size() == 1);
  CHECK(m.value(Variable{3}) == true);
  CHECK_FALSE(m.value(Variable{4}).has_value());
  CHECK(minterm({-4, -1}) == minterm({-1, -4}));
  CHECK(minterm({-4, -1}).literals()[0] == lit(-4));
  CHECK_THROWS_AS((Minterm{lit(1), lit(-1)}), std::invalid_argument);
}

TEST_CASE("normalize_clause examples") {
  const std::vector<Literal> abc{lit(a), lit(b), lit(c)};
  auto r1 = normalize_clause(abc);
  REQUIRE(std::holds_alternative<XClause>(r1));
  CHECK(std::get<XClause>(r1) == clause({a, b, c}));

  const std::vector<Literal> xxy{lit(1), lit(1), lit(2)};
  auto r2 = normalize_clause(xxy);
  REQUIRE(std::holds_alternative<ForcedLiterals>(r2));
  CHECK(std::get<ForcedLiterals>(r2).literals == std::vector<Literal>{lit(-1), lit(2)});

  const std::vector<Literal> xnx_y{lit(1), lit(-1), lit(2)};
  auto r3 = normalize_clause(xnx_y);
  REQUIRE(std::holds_alternative<ForcedLiterals>(r3));
  CHECK(std::get<ForcedLiterals>(r3).literals == std::vector<Literal>{lit(-2)});

  const std::vector<Literal> xxx{lit(1), lit(1), lit(1)};
  CHECK(std::holds_alternative<UnsatisfiableClause>(normalize_clause(xxx)));
  const std::vector<Literal> xx{lit(1), lit(1)};
  CHECK(std::holds_alternative<UnsatisfiableClause>(normalize_clause(xx)));
}

TEST_CASE("normalization is sound on every raw clause over three variables") {
  // Every raw clause of width 1..3 over literals ±1..±3, compared with the
  // exactly-one-per-occurrence reading by enumerating all 8 assignments.
  std::vector<Literal> pool;
  for (int v = 1; v <= 3; ++v) {
    pool.push_back(lit(v));
    pool.push_back(lit(-v));
  }
  std::size_t checked = 0;
  for (std::size_t w = 1; w <= 3; ++w) {
    std::vector<std::size_t> idx(w, 0);
    for (;;) {
      std::vector<Literal> raw;
      for (auto i : idx) raw.push_back(pool[i]);
      const auto norm = normalize_clause(raw);
      for (std::uint64_t bits = 0; bits < 8; ++bits) {
        bool got = false;
        if (auto* cl = std::get_if<XClause>(&norm)) {
          got = direct_eval(Formula(3, {*cl}), bits);
        } else if (auto* forced = std::get_if<ForcedLiterals>(&norm)) {
          got = std::all_of(forced->literals.begin(), forced->literals.end(),
                            [&](Literal l) { return holds(bits, l); });
        }
        CHECK_MESSAGE(got == raw_exactly_one(raw, bits), "raw clause width ", w, " bits ", bits);
      }
      ++checked;
      std::size_t k = 0;
      while (k < w && ++idx[k] == pool.size()) idx[k++] = 0;
      if (k == w) break;
    }
  }
  CHECK(checked == 6 + 36 + 216);
}

TEST_CASE("normalize_formula turns forced literals into unit clauses in place") {
  std::vector<RawClause> raw{{{lit(1), lit(2), lit(3)}, 2}, {{lit(1), lit(1), lit(2)}, 3}, {{lit(3), lit(4)}, 4}};
  Instance inst = normalize_formula(4, raw);
  CHECK(inst.formula == formula(4, {{1, 2, 3}, {-1}, {2}, {3, 4}}));
  REQUIRE(inst.normalization.size() == 1);
  CHECK(inst.normalization[0].line == 3);
  CHECK_FALSE(inst.contradiction.has_value());

  std::vector<RawClause> bad{{{lit(1), lit(1), lit(1)}, 7}};
  Instance unsat = normalize_formula(1, bad);
  REQUIRE(unsat.contradiction.has_value());
  CHECK(unsat.contradiction->line == 7);
  CHECK(unsat.formula.empty());
}

TEST_CASE("evaluate: exactly one true literal per clause") {
  const Formula f = example();
  CHECK(evaluate(f, TotalAssignment(std::vector<bool>{false, true, false, false, false})));
  CHECK_FALSE(evaluate(f, TotalAssignment(std::vector<bool>{true, true, false, false, false})));
  CHECK(evaluate(Formula{}, TotalAssignment{}));
  CHECK(evaluate(Formula(3, {}), TotalAssignment(3)));
  CHECK_THROWS_AS(evaluate(f, TotalAssignment(4)), std::invalid_argument);
}

TEST_CASE("evaluate agrees with direct counting on random pairs") {
  SplitMix64 rng(2024);
  for (int i = 0; i < 1000; ++i) {
    GenSpec spec;
    spec.nvars = 3 + static_cast<std::uint32_t>(rng.below(10));
    spec.nclauses = static_cast<std::uint32_t>(rng.below(8));
    spec.widths = WidthDistribution::mixed(1, 1, 2);
    spec.seed = rng.next();
    const Formula f = generate(spec);
    const std::uint64_t bits = rng.below(std::uint64_t{1} << spec.nvars);
    CHECK(evaluate(f, to_assignment(bits, spec.nvars)) == direct_eval(f, bits));
  }
}
