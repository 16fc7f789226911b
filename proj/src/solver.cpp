#include "x3sat/solver.hpp"

namespace x3sat {

namespace {

Minterm merged(const Minterm& base, const Minterm& extra) {
  Minterm out = base;
  for (Literal l : extra.literals()) out.add(l);
  return out;
}

class ScopeSearch {
 public:
  ScopeSearch(const SolverOptions& options, std::vector<TraceEvent>* trace)
      : options_(options), trace_(trace) {}

  std::uint64_t steps() const { return steps_; }

  ScopeResult probe(Literal l, const Formula& f) {
    ScopeResult r = scope(l, f);
    charge(r.steps);
    emit(trace::ScopeRun{l, r});
    return r;
  }

  ScopeResult run(const Formula& f, const Minterm& seed) {
    ScopeResult r = propagate(f, seed);
    charge(r.steps);
    return r;
  }

  std::optional<Incompatibility> scan(const Formula& f) {
    for (Variable v : f.occurring_vars()) {
      for (bool positive : {true, false}) {
        const Literal l(v, positive);
        ScopeResult r = probe(l, f);
        if (!r.compatible()) return Incompatibility{l, r.as_incompatible().conflict};
      }
    }
    return std::nullopt;
  }

  FixResult fix(const Formula& f, const Minterm& psi, Literal l) {
    ScopeResult r = run(f, Minterm{l});
    if (!r.compatible()) return FixConflict{r.as_incompatible().conflict};
    const auto& c = r.as_compatible();
    return Fixed{c.residual, merged(psi, c.psi)};
  }

  // Repeats scan + fix until every literal of f is compatible. Returns the
  // double-incompatibility information on failure.
  std::optional<UnsatInfo> settle(Formula& f, Minterm& psi) {
    while (auto found = scan(f)) {
      const Literal necessary = ~found->literal;
      auto result = fix(f, psi, necessary);
      if (auto* bad = std::get_if<FixConflict>(&result)) {
        UnsatInfo info;
        info.cause = UnsatCause::DoubleIncompatibility;
        info.var = necessary.var();
        info.first = found->conflict;
        info.second = bad->conflict;
        return info;
      }
      auto& fixed = std::get<Fixed>(result);
      emit(trace::NecessaryFixed{necessary, found->conflict});
      f = std::move(fixed.formula);
      psi = std::move(fixed.psi);
      emit(trace::FormulaReduced{f});
      emit(trace::Restarted{});
    }
    return std::nullopt;
  }

  // Depth-first construction. Each level commits the first open variable
  // positively, then negatively after a dead end.
  std::optional<Minterm> construct(const Formula& f, const Minterm& psi) {
    if (f.empty()) return psi;
    const Variable v = f.occurring_vars().front();
    for (bool positive : {true, false}) {
      const Literal l(v, positive);
      if (!positive) emit(trace::Backtracked{~l});
      emit(trace::Constructed{l});
      ScopeResult r = probe(l, f);
      if (r.compatible()) {
        Formula next = r.as_compatible().residual;
        Minterm next_psi = merged(psi, r.as_compatible().psi);
        emit(trace::FormulaReduced{next});
        if (!settle(next, next_psi)) {
          if (auto model = construct(next, next_psi)) return model;
          if (strict_failure_) return std::nullopt;
        }
      }
      if (options_.paper_strict) {
        strict_failure_ = true;
        return std::nullopt;
      }
    }
    return std::nullopt;
  }

  bool strict_failure() const { return strict_failure_; }

  void emit(TraceEvent ev) {
    if (trace_) trace_->push_back(std::move(ev));
  }

 private:
  void charge(std::uint64_t n) {
    steps_ += n;
    if (steps_ > options_.step_budget) throw BudgetExceeded(steps_);
  }

  const SolverOptions& options_;
  std::vector<TraceEvent>* trace_;
  std::uint64_t steps_ = 0;
  bool strict_failure_ = false;
};

void finish(SolveOutcome& out) {
  trace::Decided d;
  d.verdict = out.verdict;
  d.fixed = out.fixed;
  d.model = out.model;
  if (out.unsat) {
    d.cause = out.unsat->cause;
    d.var = out.unsat->var;
  }
  d.steps = out.steps;
  out.trace.emplace_back(std::move(d));
}

SolveOutcome decide_formula(const Formula& input, const SolverOptions& options, SolveOutcome out) {
  ScopeSearch search(options, &out.trace);
  try {
    Formula f = input;
    Minterm psi;

    // Unit clauses (e.g. from normalization) are absorbed up front.
    ScopeResult root = search.run(f, Minterm{});
    if (!root.compatible()) {
      out.verdict = Verdict::Unsat;
      out.unsat = UnsatInfo{UnsatCause::EmptiedClause, root.as_incompatible().conflict.var, std::nullopt,
                            root.as_incompatible().conflict, std::nullopt};
      out.steps = search.steps();
      finish(out);
      return out;
    }
    if (!root.as_compatible().psi.empty()) {
      psi = root.as_compatible().psi;
      f = root.as_compatible().residual;
      search.emit(trace::FormulaReduced{f});
    }

    if (auto unsat = search.settle(f, psi)) {
      out.verdict = Verdict::Unsat;
      out.fixed = psi;
      out.unsat = std::move(unsat);
      out.steps = search.steps();
      finish(out);
      return out;
    }
    out.fixed = psi;

    auto full = search.construct(f, psi);
    out.steps = search.steps();
    if (!full) {
      if (search.strict_failure()) {
        out.verdict = Verdict::Unknown;
      } else {
        out.verdict = Verdict::Unsat;
        out.unsat = UnsatInfo{};
        out.unsat->cause = UnsatCause::ConstructionExhausted;
      }
      finish(out);
      return out;
    }

    TotalAssignment model = TotalAssignment::from_minterm(*full, input.nvars());
    out.verdict = evaluate(input, model) ? Verdict::Sat : Verdict::Discrepancy;
    out.model = std::move(model);
  } catch (const BudgetExceeded& e) {
    out.verdict = Verdict::BudgetExceeded;
    out.steps = e.steps();
    out.model.reset();
    out.unsat.reset();
  }
  finish(out);
  return out;
}

}  // namespace

std::optional<Incompatibility> find_incompatible(const Formula& f) {
  SolverOptions unlimited;
  unlimited.step_budget = UINT64_MAX;
  return ScopeSearch(unlimited, nullptr).scan(f);
}

FixResult fix_necessary(const Formula& f, const Minterm& psi, Literal l) {
  SolverOptions unlimited;
  unlimited.step_budget = UINT64_MAX;
  return ScopeSearch(unlimited, nullptr).fix(f, psi, l);
}

SolveOutcome decide(const Formula& f, const SolverOptions& options) {
  return decide_formula(f, options, SolveOutcome{});
}

SolveOutcome decide(const Instance& instance, const SolverOptions& options) {
  SolveOutcome out;
  for (const auto& ev : instance.normalization) out.trace.emplace_back(trace::Normalized{ev});
  if (instance.contradiction) {
    out.verdict = Verdict::Unsat;
    out.unsat = UnsatInfo{};
    out.unsat->cause = UnsatCause::NormalizationContradiction;
    out.unsat->normalization = instance.contradiction;
    finish(out);
    return out;
  }
  return decide_formula(instance.formula, options, std::move(out));
}

std::optional<TotalAssignment> construct_assignment(const Formula& f, const Minterm& psi,
                                                    const SolverOptions& options) {
  ScopeSearch search(options, nullptr);
  auto full = search.construct(f, psi);
  if (!full) return std::nullopt;
  return TotalAssignment::from_minterm(*full, f.nvars());
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Sat: return "SAT";
    case Verdict::Unsat: return "UNSAT";
    case Verdict::Unknown: return "UNKNOWN";
    case Verdict::BudgetExceeded: return "BUDGET";
    case Verdict::Discrepancy: return "DISCREPANCY";
  }
  return "?";
}

const char* to_string(UnsatCause c) {
  switch (c) {
    case UnsatCause::NormalizationContradiction: return "normalization-contradiction";
    case UnsatCause::EmptiedClause: return "emptied-clause";
    case UnsatCause::DoubleIncompatibility: return "double-incompatibility";
    case UnsatCause::ConstructionExhausted: return "construction-exhausted";
    case UnsatCause::SearchExhausted: return "search-exhausted";
  }
  return "?";
}

}  // namespace x3sat
