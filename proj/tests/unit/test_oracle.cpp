#include <doctest.h>

#include <algorithm>

#include "support/brute.hpp"
#include "support/paper_example.hpp"
#include "x3sat/fuzz.hpp"
#include "x3sat/oracle.hpp"

using namespace x3sat;
using namespace x3sat::testing;

namespace {

bool direct_or(const Formula& f, std::uint64_t bits) {
  for (const auto& c : f.clauses()) {
    bool any = false;
    for (Literal l : c) any |= holds(bits, l);
    if (!any) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("model counts of the worked example") {
  const Formula f = example();
  const ModelReport xo = enumerate_models(f, Semantics::ExactlyOne);
  CHECK(xo.count == 2);
  REQUIRE(xo.models.has_value());
  REQUIRE(xo.models->size() == 2);
  // lexicographic with x1 most significant: (-1 -2 3 -4 5) < (-1 2 -3 -4 -5)
  CHECK((*xo.models)[0].literals() == std::vector<Literal>{lit(-1), lit(-2), lit(3), lit(-4), lit(5)});
  CHECK((*xo.models)[1].literals() == std::vector<Literal>{lit(-1), lit(2), lit(-3), lit(-4), lit(-5)});

  CHECK(enumerate_models(f, Semantics::InclusiveOr).count == 22);
  const Literal none[] = {lit(x)};
  CHECK(count_models(f, none) == 0);
}

TEST_CASE("edge cases and guard") {
  const ModelReport empty = enumerate_models(Formula{}, Semantics::ExactlyOne);
  CHECK(empty.count == 1);
  CHECK(enumerate_models(Formula(3, {}), Semantics::ExactlyOne).count == 8);

  CHECK_THROWS_AS(enumerate_models(Formula(25, {}), Semantics::ExactlyOne), OracleGuardError);
  OracleOptions raised;
  raised.max_vars = 25;
  raised.model_cap = 0;
  CHECK_NOTHROW(count_models(formula(25, {{1, 25}}), {}, Semantics::ExactlyOne, raised));

  OracleOptions capped;
  capped.model_cap = 1;
  CHECK_FALSE(enumerate_models(example(), Semantics::ExactlyOne, capped).models.has_value());

  CHECK(parse_semantics("exactly-one") == Semantics::ExactlyOne);
  CHECK(parse_semantics("inclusive-or") == Semantics::InclusiveOr);
  CHECK_FALSE(parse_semantics("xor").has_value());
}

TEST_CASE("entails") {
  const Formula f = example();
  CHECK(entails(f, lit(a), lit(-b)));
  CHECK(entails(f, lit(a), lit(-c)));
  CHECK_FALSE(entails(f, lit(-a), lit(b)));
  CHECK(entails(f, lit(x), lit(a)));  // vacuous
}

TEST_CASE("oracle agrees with direct enumeration") {
  for (std::uint64_t i = 0; i < 500; ++i) {
    const Formula f = random_instance(3, i, 10, 10);
    CHECK(count_models(f, {}) == brute_count(f));
    std::uint64_t ors = 0;
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << f.nvars()); ++bits) ors += direct_or(f, bits);
    CHECK(count_models(f, {}, Semantics::InclusiveOr) == ors);
    const ModelReport r = enumerate_models(f, Semantics::ExactlyOne);
    if (r.models)
      for (const auto& m : *r.models) CHECK(evaluate(f, m));
  }
}

TEST_CASE("worker count does not change results") {
  OracleOptions many;
  many.workers = 4;
  many.model_cap = 1u << 20;
  for (std::uint64_t i = 0; i < 50; ++i) {
    const Formula f = random_instance(8, i, 16, 8);
    OracleOptions one = many;
    one.workers = 1;
    const ModelReport r1 = enumerate_models(f, Semantics::ExactlyOne, one);
    const ModelReport r4 = enumerate_models(f, Semantics::ExactlyOne, many);
    CHECK(r1.count == r4.count);
    REQUIRE(r1.models.has_value());
    REQUIRE(r4.models.has_value());
    CHECK(std::equal(r1.models->begin(), r1.models->end(), r4.models->begin(), r4.models->end(),
                     [](const TotalAssignment& p, const TotalAssignment& q) { return p.literals() == q.literals(); }));
  }
}

TEST_CASE("clause order and variable renaming preserve the count") {
  for (std::uint64_t i = 0; i < 300; ++i) {
    const Formula f = random_instance(4, i, 8, 8);
    std::vector<XClause> reversed(f.clauses().rbegin(), f.clauses().rend());
    CHECK(count_models(Formula(f.nvars(), reversed), {}) == count_models(f, {}));

    // v -> n + 1 - v
    std::vector<XClause> renamed;
    for (const auto& c : f.clauses()) {
      std::vector<Literal> lits;
      for (Literal l : c) lits.emplace_back(Variable{f.nvars() + 1 - l.var().id}, l.positive());
      renamed.emplace_back(lits);
    }
    CHECK(count_models(Formula(f.nvars(), renamed), {}) == count_models(f, {}));
  }
}
