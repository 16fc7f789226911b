#include "x3sat/fuzz.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <thread>

#include "x3sat/generator.hpp"
#include "x3sat/oracle.hpp"
#include "x3sat/scope.hpp"
#include "x3sat/textio.hpp"

namespace x3sat {

namespace {

struct CaseResult {
  Verdict decided = Verdict::Unknown;
  Verdict reference = Verdict::Unknown;
  std::optional<std::uint64_t> oracle_count;
  bool counterexample = false;
  std::vector<std::string> violations;
  std::optional<std::string> crash;

  bool truth_sat() const { return oracle_count ? *oracle_count > 0 : reference == Verdict::Sat; }
  bool conclusive() const { return decided == Verdict::Sat || decided == Verdict::Unsat; }
  bool agrees() const {
    if (!conclusive()) return false;
    const bool sat = decided == Verdict::Sat;
    if (oracle_count && (*oracle_count > 0) != sat) return false;
    return (reference == Verdict::Sat) == sat;
  }

  std::optional<std::pair<std::string, std::string>> finding() const {
    if (crash) return std::pair{std::string("crash"), *crash};
    if (!violations.empty()) return std::pair{std::string("soundness"), violations.front()};
    if (decided == Verdict::Discrepancy || reference == Verdict::Discrepancy)
      return std::pair{std::string("discrepancy"), std::string("a model failed verification")};
    if (conclusive() && !agrees()) {
      std::string detail = std::string("decide=") + to_string(decided) + " dpll=" + to_string(reference);
      if (oracle_count) detail += " oracle_models=" + std::to_string(*oracle_count);
      return std::pair{std::string("disagreement"), detail};
    }
    if (!conclusive()) return std::pair{std::string("undecided"), std::string("decide=") + to_string(decided)};
    if (counterexample)
      return std::pair{std::string("completeness-counterexample"),
                       std::string("every literal compatible but construction found no model")};
    return std::nullopt;
  }
};

CaseResult run_case(const Formula& f, const FuzzConfig& config) {
  CaseResult r;
  try {
    SolveOutcome outcome = decide(f, config.solver);
    r.decided = outcome.verdict;
    r.counterexample = outcome.completeness_counterexample();
    r.reference = dpll_solve(f).verdict;
    if (f.nvars() <= config.oracle_max_vars) {
      OracleOptions o;
      o.max_vars = config.oracle_max_vars;
      r.oracle_count = count_models(f, {}, Semantics::ExactlyOne, o);
      if (config.audit) r.violations = audit_decide(f, outcome, config.oracle_max_vars);
    }
  } catch (const std::exception& e) {
    r.crash = e.what();
  }
  return r;
}

Formula without_clause(const Formula& f, std::size_t skip) {
  std::vector<XClause> clauses;
  for (std::size_t i = 0; i < f.size(); ++i)
    if (i != skip) clauses.push_back(f[i]);
  return Formula(f.nvars(), std::move(clauses));
}

Formula shrink(const Formula& f, const std::string& category, const FuzzConfig& config) {
  Formula current = f;
  bool progress = true;
  while (progress) {
    progress = false;
    for (std::size_t i = 0; i < current.size(); ++i) {
      Formula candidate = without_clause(current, i);
      auto found = run_case(candidate, config).finding();
      if (found && found->first == category) {
        current = std::move(candidate);
        progress = true;
        break;
      }
    }
  }
  return current;
}

void write_finding(const std::filesystem::path& dir, const Finding& finding) {
  char name[32];
  std::snprintf(name, sizeof name, "case-%06llu", static_cast<unsigned long long>(finding.index));
  std::ofstream x3(dir / (std::string(name) + ".x3"), std::ios::binary);
  x3 << "c category " << finding.category << "\n"
     << "c detail " << finding.detail << "\n"
     << "c instance " << finding.index << "\n"
     << serialize_x3(finding.minimal);
  std::ofstream tr(dir / (std::string(name) + ".trace"), std::ios::binary);
  tr << finding.trace;
  if (!x3 || !tr) throw std::runtime_error("cannot write findings to " + dir.string());
}

}  // namespace

Formula random_instance(std::uint64_t seed, std::uint64_t index, std::uint32_t max_vars,
                        std::uint32_t max_clauses) {
  SplitMix64 rng(seed ^ (0xD1B54A32D192ED03ull * (index + 1)));
  GenSpec spec;
  spec.nvars = 1 + static_cast<std::uint32_t>(rng.below(std::max<std::uint32_t>(max_vars, 1)));
  spec.nclauses = static_cast<std::uint32_t>(rng.below(std::uint64_t{max_clauses} + 1));
  spec.widths = WidthDistribution::mixed(1, 2, 4);
  for (std::uint32_t w = spec.nvars + 1; w <= 3; ++w) spec.widths.weights[w - 1] = 0;
  spec.seed = rng.next();
  return generate(spec);
}

std::vector<XClause> clause_universe(std::uint32_t nvars) {
  std::vector<XClause> out;
  for (std::uint32_t width = 1; width <= 3; ++width) {
    // vars a < b < c, then all polarity patterns
    std::vector<std::uint32_t> vars(width);
    auto emit = [&](auto&& self, std::uint32_t pos, std::uint32_t from) -> void {
      if (pos == width) {
        for (std::uint32_t pattern = 0; pattern < (1u << width); ++pattern) {
          std::vector<Literal> lits;
          for (std::uint32_t k = 0; k < width; ++k)
            lits.emplace_back(Variable{vars[k]}, ((pattern >> (width - 1 - k)) & 1u) == 0);
          out.emplace_back(lits);
        }
        return;
      }
      for (std::uint32_t v = from; v <= nvars; ++v) {
        vars[pos] = v;
        self(self, pos + 1, v + 1);
      }
    };
    emit(emit, 0, 1);
  }
  return out;
}

std::vector<Formula> exhaustive_family(std::uint32_t nvars, std::uint32_t max_clauses, bool ordered) {
  const auto universe = clause_universe(nvars);
  std::vector<Formula> out;
  std::vector<std::size_t> pick;
  auto rec = [&](auto&& self, std::size_t from) -> void {
    std::vector<XClause> clauses;
    for (std::size_t i : pick) clauses.push_back(universe[i]);
    out.emplace_back(nvars, std::move(clauses));
    if (pick.size() == max_clauses) return;
    for (std::size_t i = ordered ? 0 : from; i < universe.size(); ++i) {
      pick.push_back(i);
      self(self, i);
      pick.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

std::vector<std::string> audit_decide(const Formula& f, const SolveOutcome& outcome,
                                      std::uint32_t oracle_max_vars) {
  std::vector<std::string> violations;
  if (f.nvars() > oracle_max_vars) return violations;
  OracleOptions o;
  o.max_vars = oracle_max_vars;
  o.model_cap = UINT64_MAX - 1;
  auto models_of = [&](const Formula& g) { return *enumerate_models(g, Semantics::ExactlyOne, o).models; };
  auto fail = [&](std::string msg) { violations.push_back(std::move(msg)); };

  Formula current = f;
  auto models = models_of(current);
  std::optional<Formula> pending;
  struct Frame {
    Literal literal;
    Formula formula;
  };
  std::vector<Frame> frames;

  for (const TraceEvent& event : outcome.trace) {
    if (auto* run = std::get_if<trace::ScopeRun>(&event)) {
      const Literal l = run->literal;
      std::vector<const TotalAssignment*> with_l;
      for (const auto& m : models)
        if (m.satisfies(l)) with_l.push_back(&m);
      if (run->result.compatible()) {
        const auto& c = run->result.as_compatible();
        for (Literal p : c.psi.literals())
          for (const auto* m : with_l)
            if (!m->satisfies(p)) {
              fail("scope(" + to_string(l) + ") fixed " + to_string(p) + " which a model of l contradicts");
              break;
            }
        for (Variable v : c.residual.occurring_vars())
          if (c.psi.assigned(v)) fail("scope(" + to_string(l) + ") residual mentions fixed var " + std::to_string(v.id));
      } else {
        if (!with_l.empty())
          fail("scope(" + to_string(l) + ") incompatible but " + std::to_string(with_l.size()) + " models contain it");
        if (!replays(current, run->result.as_incompatible().conflict))
          fail("scope(" + to_string(l) + ") conflict derivation does not replay");
      }
    } else if (auto* nec = std::get_if<trace::NecessaryFixed>(&event)) {
      for (const auto& m : models)
        if (!m.satisfies(nec->literal)) {
          fail("necessary " + to_string(nec->literal) + " is false in a model");
          break;
        }
      ScopeResult r = propagate(current, Minterm{nec->literal});
      if (!r.compatible()) {
        fail("necessary " + to_string(nec->literal) + " conflicts on propagation");
        continue;
      }
      const auto& c = r.as_compatible();
      std::vector<Literal> psi(c.psi.literals().begin(), c.psi.literals().end());
      const auto after = count_models(c.residual, psi, Semantics::ExactlyOne, o);
      if (after != models.size())
        fail("fixing " + to_string(nec->literal) + " changed the model count from " + std::to_string(models.size()) +
             " to " + std::to_string(after));
      pending = c.residual;
    } else if (auto* con = std::get_if<trace::Constructed>(&event)) {
      frames.push_back({con->literal, current});
      ScopeResult r = propagate(current, Minterm{con->literal});
      if (r.compatible())
        pending = r.as_compatible().residual;
      else
        pending.reset();
    } else if (auto* red = std::get_if<trace::FormulaReduced>(&event)) {
      const Formula expected = pending ? *pending : [&] {
        ScopeResult r = propagate(current, Minterm{});
        return r.compatible() ? r.as_compatible().residual : current;
      }();
      if (!(red->formula == expected)) fail("recorded residual differs from a fresh propagation");
      current = red->formula;
      models = models_of(current);
      pending.reset();
    } else if (auto* back = std::get_if<trace::Backtracked>(&event)) {
      while (!frames.empty()) {
        Frame fr = std::move(frames.back());
        frames.pop_back();
        if (fr.literal == back->literal) {
          current = std::move(fr.formula);
          models = models_of(current);
          break;
        }
      }
      pending.reset();
    }
  }

  switch (outcome.verdict) {
    case Verdict::Sat:
      if (!outcome.model || !evaluate(f, *outcome.model)) fail("SAT model does not satisfy the formula");
      else
        for (Literal l : outcome.fixed.literals())
          if (!outcome.model->satisfies(l)) fail("fixed literal " + to_string(l) + " missing from the model");
      break;
    case Verdict::Unsat: {
      const auto n = count_models(f, {}, Semantics::ExactlyOne, o);
      if (n != 0) fail(std::string("UNSAT (") + to_string(outcome.unsat->cause) + ") but " + std::to_string(n) + " models");
      break;
    }
    case Verdict::Discrepancy:
      fail("constructed model failed verification");
      break;
    default:
      break;
  }
  return violations;
}

std::string FuzzReport::summary(const FuzzConfig& config) const {
  std::ostringstream os;
  os << "mode " << mode << "\n";
  if (config.exhaustive) {
    os << "vars " << config.exhaustive_vars << "\n"
       << "max_clauses " << config.exhaustive_clauses << "\n";
  } else {
    os << "seed " << seed << "\n"
       << "max_vars " << config.max_vars << "\n"
       << "max_clauses " << config.max_clauses << "\n";
  }
  char rate[32];
  std::snprintf(rate, sizeof rate, "%.6f", instances ? static_cast<double>(agree) / static_cast<double>(instances) : 1.0);
  os << "paper_strict " << (config.solver.paper_strict ? 1 : 0) << "\n"
     << "instances " << instances << "\n"
     << "sat " << sat << "\n"
     << "unsat " << unsat << "\n"
     << "agree " << agree << "\n"
     << "disagree " << disagree << "\n"
     << "agreement_rate " << rate << "\n"
     << "completeness_counterexamples " << completeness_counterexamples << "\n"
     << "undecided " << undecided << "\n"
     << "discrepancies " << discrepancies << "\n"
     << "soundness_violations " << soundness_violations << "\n"
     << "crashes " << crashes << "\n"
     << "oracle_checked " << oracle_checked << "\n"
     << "findings " << findings.size() << "\n";
  for (const auto& f : findings) os << "finding " << f.index << " " << f.category << " " << f.detail << "\n";
  return os.str();
}

FuzzReport run_fuzz(const FuzzConfig& config) {
  std::vector<Formula> family;
  if (config.exhaustive) family = exhaustive_family(config.exhaustive_vars, config.exhaustive_clauses, false);
  const std::uint64_t n = config.exhaustive ? family.size() : config.count;
  auto instance = [&](std::uint64_t i) {
    return config.exhaustive ? family[i] : random_instance(config.seed, i, config.max_vars, config.max_clauses);
  };

  std::vector<CaseResult> results(n);
  const unsigned jobs = std::max(1u, config.jobs);
  auto worker = [&](unsigned w) {
    for (std::uint64_t i = w; i < n; i += jobs) results[i] = run_case(instance(i), config);
  };
  if (jobs == 1) {
    worker(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < jobs; ++w) pool.emplace_back(worker, w);
  }

  FuzzReport report;
  report.mode = config.exhaustive ? "exhaustive" : "random";
  report.seed = config.seed;
  report.instances = n;
  for (std::uint64_t i = 0; i < n; ++i) {
    const CaseResult& r = results[i];
    if (r.crash) {
      ++report.crashes;
    } else {
      (r.truth_sat() ? report.sat : report.unsat) += 1;
      if (r.oracle_count) ++report.oracle_checked;
      if (r.conclusive()) (r.agrees() ? report.agree : report.disagree) += 1;
      else ++report.undecided;
      if (r.decided == Verdict::Discrepancy) ++report.discrepancies;
      if (r.counterexample) ++report.completeness_counterexamples;
      report.soundness_violations += r.violations.size();
    }
    auto found = r.finding();
    if (!found) continue;
    Finding finding;
    finding.index = i;
    finding.category = found->first;
    finding.detail = found->second;
    finding.original = instance(i);
    finding.minimal = config.shrink ? shrink(finding.original, finding.category, config) : finding.original;
    SolveOutcome outcome;
    try {
      outcome = decide(finding.minimal, config.solver);
      finding.trace = emit_trace(outcome.trace);
    } catch (const std::exception& e) {
      finding.trace = std::string("error ") + e.what() + "\n";
    }
    report.findings.push_back(std::move(finding));
  }

  if (config.out_dir) {
    std::filesystem::create_directories(*config.out_dir);
    for (const auto& f : report.findings) write_finding(*config.out_dir, f);
  }
  return report;
}

}  // namespace x3sat
