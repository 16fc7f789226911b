#include "x3sat/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include "x3sat/fuzz.hpp"
#include "x3sat/generator.hpp"
#include "x3sat/oracle.hpp"
#include "x3sat/scope.hpp"
#include "x3sat/solver.hpp"
#include "x3sat/textio.hpp"

namespace x3sat {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_input(const std::string& path, std::istream& in) {
  std::ostringstream buf;
  if (path == "-") {
    buf << in.rdbuf();
  } else {
    std::ifstream file(path, std::ios::binary);
    if (!file) throw UsageError("cannot open '" + path + "'");
    buf << file.rdbuf();
  }
  return buf.str();
}

void print_normalization(const Instance& inst, std::ostream& out) {
  for (const auto& ev : inst.normalization) {
    out << "c normalized line " << ev.line << ": " << format_literals(ev.raw);
    if (ev.unsatisfiable)
      out << " -> unsatisfiable\n";
    else
      out << " -> forced " << format_literals(ev.forced) << "\n";
  }
}

void print_model(const TotalAssignment& model, std::ostream& out) {
  out << "v";
  for (Literal l : model.literals()) out << ' ' << to_string(l);
  out << " 0\n";
}

struct SolveArgs {
  std::string input = "-";
  bool paper_strict = false;
  std::uint64_t budget = SolverOptions{}.step_budget;
  bool trace = false;
};

int cmd_solve(const SolveArgs& args, std::istream& in, std::ostream& out) {
  const Instance inst = parse_x3(read_input(args.input, in));
  SolverOptions options;
  options.paper_strict = args.paper_strict;
  options.step_budget = args.budget;
  const SolveOutcome outcome = decide(inst, options);

  if (args.trace) out << emit_trace(outcome.trace);
  print_normalization(inst, out);
  switch (outcome.verdict) {
    case Verdict::Sat:
      // decide() verified the model; check again at the boundary.
      if (!evaluate(inst.formula, *outcome.model)) {
        out << "s UNKNOWN\nc discrepancy: model fails verification\n";
        return exit_code::kDiscrepancy;
      }
      out << "s SATISFIABLE\n";
      print_model(*outcome.model, out);
      out << "c fixed " << format_literals(outcome.fixed.literals()) << "\n";
      out << "c steps " << outcome.steps << "\n";
      return exit_code::kSat;
    case Verdict::Unsat:
      out << "s UNSATISFIABLE\n";
      out << "c cause " << to_string(outcome.unsat->cause);
      if (outcome.unsat->var) out << " var " << outcome.unsat->var->id;
      if (outcome.unsat->normalization) out << " line " << outcome.unsat->normalization->line;
      out << "\n";
      if (outcome.completeness_counterexample())
        out << "c completeness-counterexample: every literal compatible, yet no model exists\n";
      out << "c fixed " << format_literals(outcome.fixed.literals()) << "\n";
      out << "c steps " << outcome.steps << "\n";
      return exit_code::kUnsat;
    case Verdict::Unknown:
      out << "s UNKNOWN\nc construction-failed (paper-strict: no backtracking)\n";
      out << "c fixed " << format_literals(outcome.fixed.literals()) << "\n";
      return exit_code::kOk;
    case Verdict::BudgetExceeded:
      out << "s UNKNOWN\nc budget-exceeded steps " << outcome.steps << "\n";
      return exit_code::kBudget;
    case Verdict::Discrepancy:
      out << "s UNKNOWN\nc discrepancy: constructed model fails verification\n";
      print_model(*outcome.model, out);
      return exit_code::kDiscrepancy;
  }
  return exit_code::kError;
}

int cmd_scope(const std::string& input, int literal, std::istream& in, std::ostream& out) {
  const Instance inst = parse_x3(read_input(input, in));
  if (literal == 0) throw UsageError("literal must be nonzero");
  const Literal l = Literal::from_dimacs(literal);
  if (l.var().id > inst.formula.nvars() || !inst.formula.mentions(l.var()))
    throw UsageError("variable " + std::to_string(l.var().id) + " does not occur in the formula");
  const ScopeResult r = scope(l, inst.formula);
  if (r.compatible()) {
    const auto& c = r.as_compatible();
    out << "s COMPATIBLE\n";
    out << "psi " << format_literals(c.psi.literals()) << "\n";
    out << "residual " << to_string(c.residual) << "\n";
  } else {
    const auto& c = r.as_incompatible().conflict;
    out << "s INCOMPATIBLE\n";
    out << "conflict var " << c.var.id << " kind "
        << (c.kind == ConflictInfo::Kind::Complementary ? "complementary" : "clause-empty") << "\n";
    for (const auto& step : c.derivation) {
      out << "d " << to_string(step.literal);
      if (step.clause)
        out << " clause " << (*step.clause + 1) << " " << to_string(inst.formula[*step.clause]) << "\n";
      else
        out << " asserted\n";
    }
  }
  return exit_code::kOk;
}

struct CountArgs {
  std::string input = "-";
  std::string semantics = "exactly-one";
  bool models = false;
  std::uint64_t cap = 64;
  std::uint32_t max_vars = 24;
  unsigned jobs = 1;
};

int cmd_count(const CountArgs& args, std::istream& in, std::ostream& out) {
  auto semantics = parse_semantics(args.semantics);
  if (!semantics) throw UsageError("unknown semantics '" + args.semantics + "'");
  const Instance inst = parse_x3(read_input(args.input, in));
  OracleOptions options;
  options.max_vars = args.max_vars;
  options.model_cap = args.cap;
  options.workers = args.jobs;
  if (inst.contradiction && *semantics == Semantics::ExactlyOne) {
    out << "0\n";
    return exit_code::kOk;
  }
  // The inclusive-or reading is applied to the normalized clauses, which
  // differ from the raw ones only for degenerate input.
  const ModelReport report = enumerate_models(inst.formula, *semantics, options);
  out << report.count << "\n";
  if (args.models && report.models)
    for (const auto& m : *report.models) print_model(m, out);
  return exit_code::kOk;
}

struct GenArgs {
  std::uint32_t vars = 1;
  std::uint32_t clauses = 0;
  std::uint64_t seed = 0;
  std::string width = "fixed3";
  std::vector<std::uint32_t> weights;
};

int cmd_gen(const GenArgs& args, std::ostream& out) {
  GenSpec spec;
  spec.nvars = args.vars;
  spec.nclauses = args.clauses;
  spec.seed = args.seed;
  if (args.width == "fixed3") {
    spec.widths = WidthDistribution::fixed3();
  } else if (args.width == "mixed") {
    spec.widths = WidthDistribution::mixed(1, 1, 1);
    if (!args.weights.empty()) {
      if (args.weights.size() != 3) throw UsageError("--weights takes three values");
      spec.widths = WidthDistribution::mixed(args.weights[0], args.weights[1], args.weights[2]);
    }
  } else {
    throw UsageError("unknown width distribution '" + args.width + "'");
  }
  out << serialize_x3(generate(spec));
  return exit_code::kOk;
}

int cmd_fuzz(const FuzzConfig& config, std::ostream& out) {
  const FuzzReport report = run_fuzz(config);
  out << report.summary(config);
  return exit_code::kOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"exactly-one-in-three satisfiability by scope scanning", "x3sat"};
  app.require_subcommand(1);

  SolveArgs solve;
  auto* solve_cmd = app.add_subcommand("solve", "decide an x3 instance");
  solve_cmd->add_option("input", solve.input, "x3 file, or - for stdin");
  solve_cmd->add_flag("--paper-strict", solve.paper_strict, "construct without backtracking");
  solve_cmd->add_option("--budget", solve.budget, "propagation step budget")->check(CLI::PositiveNumber);
  solve_cmd->add_flag("--trace", solve.trace, "print the trace stream before the result");

  std::string scope_input;
  int scope_literal = 0;
  auto* scope_cmd = app.add_subcommand("scope", "run Scope(l, f) for one literal");
  scope_cmd->add_option("input", scope_input, "x3 file, or - for stdin")->required();
  scope_cmd->add_option("literal", scope_literal, "signed DIMACS literal")->required();

  CountArgs count;
  auto* count_cmd = app.add_subcommand("count", "count models by enumeration");
  count_cmd->add_option("input", count.input, "x3 file, or - for stdin");
  count_cmd->add_option("--semantics", count.semantics, "exactly-one | inclusive-or")
      ->check(CLI::IsMember({"exactly-one", "inclusive-or"}));
  count_cmd->add_flag("--models", count.models, "list models when at most --cap");
  count_cmd->add_option("--cap", count.cap, "model listing cap");
  count_cmd->add_option("--max-vars", count.max_vars, "enumeration guard (raise to override)");
  count_cmd->add_option("--jobs", count.jobs, "worker threads")->check(CLI::PositiveNumber);

  FuzzConfig fuzz;
  auto* fuzz_cmd = app.add_subcommand("fuzz", "differential campaign: decide vs dpll vs oracle");
  fuzz_cmd->add_option("--n", fuzz.count, "number of random instances");
  fuzz_cmd->add_option("--vars", fuzz.max_vars, "maximum variables per instance")->check(CLI::PositiveNumber);
  fuzz_cmd->add_option("--clauses", fuzz.max_clauses, "maximum clauses per instance");
  fuzz_cmd->add_option("--seed", fuzz.seed, "campaign seed");
  std::string out_dir;
  fuzz_cmd->add_option("--out-dir", out_dir, "directory for counterexample files");
  fuzz_cmd->add_flag("--exhaustive", fuzz.exhaustive, "enumerate all small formulas instead");
  fuzz_cmd->add_option("--exhaustive-vars", fuzz.exhaustive_vars, "variables in exhaustive mode");
  fuzz_cmd->add_option("--exhaustive-clauses", fuzz.exhaustive_clauses, "maximum clauses in exhaustive mode");
  fuzz_cmd->add_flag("--paper-strict", fuzz.solver.paper_strict, "construct without backtracking");
  fuzz_cmd->add_option("--budget", fuzz.solver.step_budget, "propagation step budget")->check(CLI::PositiveNumber);
  fuzz_cmd->add_option("--oracle-max-vars", fuzz.oracle_max_vars, "largest instance checked by the oracle");
  fuzz_cmd->add_option("--jobs", fuzz.jobs, "worker threads")->check(CLI::PositiveNumber);
  bool no_shrink = false;
  fuzz_cmd->add_flag("--no-shrink", no_shrink, "persist findings without minimizing");

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "generate a random x3 instance");
  gen_cmd->add_option("--vars", gen.vars, "number of variables")->required();
  gen_cmd->add_option("--clauses", gen.clauses, "number of clauses")->required();
  gen_cmd->add_option("--seed", gen.seed, "generator seed");
  gen_cmd->add_option("--width", gen.width, "fixed3 | mixed")->check(CLI::IsMember({"fixed3", "mixed"}));
  gen_cmd->add_option("--weights", gen.weights, "weights of widths 1,2,3 for mixed")->delimiter(',');

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_code::kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return exit_code::kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::kError;
  }

  try {
    if (*solve_cmd) return cmd_solve(solve, in, out);
    if (*scope_cmd) return cmd_scope(scope_input, scope_literal, in, out);
    if (*count_cmd) return cmd_count(count, in, out);
    if (*gen_cmd) return cmd_gen(gen, out);
    if (*fuzz_cmd) {
      if (!out_dir.empty()) fuzz.out_dir = out_dir;
      fuzz.shrink = !no_shrink;
      return cmd_fuzz(fuzz, out);
    }
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::kError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::kError;
  }
  return exit_code::kError;
}

}  // namespace x3sat
