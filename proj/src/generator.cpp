#include "x3sat/generator.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace x3sat {

std::uint32_t WidthDistribution::max_width() const {
  for (std::uint32_t w = 3; w >= 1; --w)
    if (weights[w - 1] > 0) return w;
  return 0;
}

Formula generate(const GenSpec& spec) {
  if (spec.nvars < 1) throw std::invalid_argument("generator needs at least one variable");
  const std::uint64_t total =
      std::uint64_t{spec.widths.weights[0]} + spec.widths.weights[1] + spec.widths.weights[2];
  if (total == 0) throw std::invalid_argument("width weights are all zero");
  if (spec.nclauses > 0 && spec.nvars < spec.widths.max_width())
    throw std::invalid_argument("cannot draw width-" + std::to_string(spec.widths.max_width()) +
                                " clauses with distinct variables from " + std::to_string(spec.nvars) +
                                " variables");

  SplitMix64 rng(spec.seed);
  std::vector<XClause> clauses;
  clauses.reserve(spec.nclauses);
  for (std::uint32_t i = 0; i < spec.nclauses; ++i) {
    std::uint64_t pick = rng.below(total);
    std::uint32_t width = 1;
    while (pick >= spec.widths.weights[width - 1]) {
      pick -= spec.widths.weights[width - 1];
      ++width;
    }
    std::vector<std::uint32_t> vars;
    while (vars.size() < width) {
      const auto v = static_cast<std::uint32_t>(1 + rng.below(spec.nvars));
      if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
    }
    std::vector<Literal> lits;
    for (std::uint32_t v : vars) lits.emplace_back(Variable{v}, (rng.next() >> 63) == 0);
    clauses.emplace_back(lits);
  }
  return Formula(spec.nvars, std::move(clauses));
}

}  // namespace x3sat
