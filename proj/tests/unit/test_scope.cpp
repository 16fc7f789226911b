#include <doctest.h>

#include <stdexcept>

#include "support/brute.hpp"
#include "support/paper_example.hpp"
#include "x3sat/fuzz.hpp"
#include "x3sat/scope.hpp"

using namespace x3sat;
using namespace x3sat::testing;

namespace {

void check_compatible(const ScopeResult& r, const Minterm& psi, const Formula& residual) {
  REQUIRE(r.compatible());
  CHECK(r.as_compatible().psi == psi);
  CHECK(r.as_compatible().residual == residual);
}

}  // namespace

TEST_CASE("clause_status transitions") {
  const XClause bxy = clause({b, x, y});
  CHECK(std::holds_alternative<status::Untouched>(clause_status(bxy, Minterm{})));

  auto sat = clause_status(bxy, minterm({x}));
  REQUIRE(std::holds_alternative<status::Satisfied>(sat));
  CHECK(std::get<status::Satisfied>(sat).forces == std::vector<Literal>{lit(-b), lit(-y)});

  auto red = clause_status(bxy, minterm({-b}));
  REQUIRE(std::holds_alternative<status::Reduced>(red));
  CHECK(std::get<status::Reduced>(red).clause == clause({x, y}));

  auto unit = clause_status(bxy, minterm({-b, -x}));
  REQUIRE(std::holds_alternative<status::Unit>(unit));
  CHECK(std::get<status::Unit>(unit).forces == lit(y));

  CHECK(std::holds_alternative<status::Empty>(clause_status(bxy, minterm({-b, -x, -y}))));
  CHECK(std::holds_alternative<status::Unit>(clause_status(clause({-c}), Minterm{})));
}

TEST_CASE("propagate reproduces the worked example") {
  const Formula f = example();
  check_compatible(propagate(f, minterm({a})), minterm({a, -b, -c}), formula(5, {{x, y}, {x, -y}}));
  check_compatible(propagate(f, minterm({-a})), minterm({-a}), formula(5, {{b, c}, {b, x, y}, {c, x, -y}}));

  auto rx = propagate(f, minterm({x}));
  REQUIRE_FALSE(rx.compatible());
  const ConflictInfo& conflict = rx.as_incompatible().conflict;
  CHECK(conflict.var == Variable{y});
  CHECK(conflict.kind == ConflictInfo::Kind::Complementary);
  // x, then b̄ ȳ from (b x y), then c̄ y from (c x ȳ)
  const std::vector<DerivationStep> expected{
      {lit(x), std::nullopt}, {lit(-b), 1}, {lit(-y), 1}, {lit(-c), 2}, {lit(y), 2}};
  CHECK(conflict.derivation == expected);
  CHECK(replays(f, conflict));

  check_compatible(propagate(Formula{}, Minterm{}), Minterm{}, Formula{});
}

TEST_CASE("scope on the reduced formulas of the worked example") {
  const Formula g = formula(5, {{b, c}, {b, y}, {c, -y}});
  check_compatible(scope(lit(b), g), minterm({b, -c, -y}), Formula(5, {}));
  check_compatible(scope(lit(-b), g), minterm({-b, c, y}), Formula(5, {}));

  const Formula h = formula(5, {{a, b, c}, {b, y}, {c, -y}});
  auto r = scope(lit(a), h);
  REQUIRE_FALSE(r.compatible());
  CHECK(r.as_incompatible().conflict.var == Variable{y});
  CHECK(r.as_incompatible().conflict.kind == ConflictInfo::Kind::ClauseEmpty);
  CHECK(replays(h, r.as_incompatible().conflict));

  CHECK_THROWS_AS(scope(lit(4), g), std::invalid_argument);
}

TEST_CASE("unit clauses propagate from an empty seed") {
  const Formula f = formula(3, {{-1}, {1, 2, 3}, {2}});
  check_compatible(propagate(f, Minterm{}), minterm({-1, 2, -3}), Formula(3, {}));

  auto r = propagate(formula(1, {{1}, {-1}}), Minterm{});
  REQUIRE_FALSE(r.compatible());
  CHECK(replays(formula(1, {{1}, {-1}}), r.as_incompatible().conflict));
}

TEST_CASE("replays rejects tampered derivations") {
  const Formula f = example();
  auto conflict = propagate(f, minterm({x})).as_incompatible().conflict;
  auto tampered = conflict;
  tampered.derivation[1].clause = 0;  // (a b c) does not force b̄ from x
  CHECK_FALSE(replays(f, tampered));
  auto truncated = conflict;
  truncated.derivation.pop_back();
  CHECK_FALSE(replays(f, truncated));
}

namespace {

// Scope properties checked against direct enumeration.
void check_scope_properties(const Formula& f) {
  for (Variable v : f.occurring_vars()) {
    for (bool positive : {true, false}) {
      const Literal l(v, positive);
      const Literal just_l[] = {l};
      const std::uint64_t with_l = brute_count(f, just_l);
      const ScopeResult r = scope(l, f);
      if (!r.compatible()) {
        CHECK_MESSAGE(with_l == 0, to_string(f), " scope ", to_string(l));
        CHECK(replays(f, r.as_incompatible().conflict));
        continue;
      }
      const auto& c = r.as_compatible();
      CHECK(c.psi.contains(l));
      for (Literal p : c.psi.literals()) {
        const Literal contra[] = {l, ~p};
        CHECK_MESSAGE(brute_count(f, contra) == 0, to_string(f), " scope ", to_string(l), " fixed ", to_string(p));
      }
      for (Variable w : c.residual.occurring_vars()) CHECK_FALSE(c.psi.assigned(w));
      const std::vector<Literal> psi(c.psi.literals().begin(), c.psi.literals().end());
      CHECK_MESSAGE(brute_count(c.residual, psi) == with_l, to_string(f), " scope ", to_string(l));
      const ScopeResult again = propagate(c.residual, Minterm{});
      REQUIRE(again.compatible());
      CHECK(again.as_compatible().psi.empty());
      CHECK(again.as_compatible().residual == c.residual);
    }
  }
}

}  // namespace

TEST_CASE("scope properties on every formula with at most two clauses over four variables") {
  for (std::uint32_t n = 1; n <= 4; ++n)
    for (const Formula& f : exhaustive_family(n, 2, true)) check_scope_properties(f);
}

TEST_CASE("scope properties on random instances") {
  for (std::uint64_t i = 0; i < 1500; ++i) check_scope_properties(random_instance(99, i, 12, 10));
}
