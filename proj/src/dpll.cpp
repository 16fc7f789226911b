#include <cstdint>
#include <vector>

#include "x3sat/solver.hpp"

namespace x3sat {

namespace {

// Deliberately shares no code with the scope engine: plain sweeps over a
// value array until nothing changes.
class Dpll {
 public:
  explicit Dpll(const Formula& f) : f_(f) {}

  std::optional<std::vector<std::int8_t>> solve() {
    std::vector<std::int8_t> values(f_.nvars() + 1, 0);
    if (search(values)) return values;
    return std::nullopt;
  }

 private:
  static std::int8_t lit_value(const std::vector<std::int8_t>& values, Literal l) {
    const std::int8_t v = values[l.var().id];
    return l.positive() ? v : static_cast<std::int8_t>(-v);
  }

  // Returns false on conflict.
  bool propagate(std::vector<std::int8_t>& values) const {
    bool changed = true;
    while (changed) {
      changed = false;
      for (const XClause& c : f_.clauses()) {
        int trues = 0, open = 0;
        for (Literal l : c) {
          const auto v = lit_value(values, l);
          trues += v > 0;
          open += v == 0;
        }
        if (trues > 1) return false;
        if (trues == 1) {
          for (Literal l : c)
            if (lit_value(values, l) == 0) {
              values[l.var().id] = l.positive() ? -1 : 1;
              changed = true;
            }
        } else if (open == 0) {
          return false;
        } else if (open == 1) {
          for (Literal l : c)
            if (lit_value(values, l) == 0) {
              values[l.var().id] = l.positive() ? 1 : -1;
              changed = true;
            }
        }
      }
    }
    return true;
  }

  bool search(std::vector<std::int8_t>& values) {
    if (!propagate(values)) return false;
    std::uint32_t branch = 0;
    for (const XClause& c : f_.clauses()) {
      for (Literal l : c)
        if (values[l.var().id] == 0) {
          branch = l.var().id;
          break;
        }
      if (branch) break;
    }
    if (!branch) return true;
    for (std::int8_t phase : {std::int8_t{1}, std::int8_t{-1}}) {
      auto copy = values;
      copy[branch] = phase;
      if (search(copy)) {
        values = std::move(copy);
        return true;
      }
    }
    return false;
  }

  const Formula& f_;
};

}  // namespace

SolveOutcome dpll_solve(const Formula& f) {
  SolveOutcome out;
  if (auto values = Dpll(f).solve()) {
    TotalAssignment model(f.nvars());
    for (std::uint32_t v = 1; v <= f.nvars(); ++v) model.set(Variable{v}, (*values)[v] > 0);
    out.verdict = evaluate(f, model) ? Verdict::Sat : Verdict::Discrepancy;
    out.model = std::move(model);
  } else {
    out.verdict = Verdict::Unsat;
    out.unsat = UnsatInfo{};
    out.unsat->cause = UnsatCause::SearchExhausted;
  }
  trace::Decided d;
  d.verdict = out.verdict;
  d.model = out.model;
  if (out.unsat) d.cause = out.unsat->cause;
  out.trace.emplace_back(std::move(d));
  return out;
}

}  // namespace x3sat
