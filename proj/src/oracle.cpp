#include "x3sat/oracle.hpp"

#include <algorithm>
#include <bit>
#include <thread>

namespace x3sat {

namespace {

struct ClauseMask {
  std::uint64_t pos = 0;
  std::uint64_t neg = 0;
};

struct Enumerator {
  std::uint32_t n = 0;
  std::vector<ClauseMask> clauses;
  std::uint64_t must_true = 0;
  std::uint64_t must_false = 0;
  Semantics semantics = Semantics::ExactlyOne;

  std::uint64_t bit(Variable v) const { return std::uint64_t{1} << (n - v.id); }

  bool accepts(std::uint64_t a) const {
    if ((a & must_true) != must_true || (a & must_false) != 0) return false;
    const std::uint64_t na = ~a;
    for (const auto& c : clauses) {
      const int t = std::popcount(a & c.pos) + std::popcount(na & c.neg);
      if (semantics == Semantics::ExactlyOne ? t != 1 : t == 0) return false;
    }
    return true;
  }

  TotalAssignment decode(std::uint64_t a) const {
    TotalAssignment t(n);
    for (std::uint32_t v = 1; v <= n; ++v) t.set(Variable{v}, (a & bit(Variable{v})) != 0);
    return t;
  }
};

Enumerator make_enumerator(const Formula& f, std::span<const Literal> assumptions, Semantics semantics,
                           const OracleOptions& options) {
  if (f.nvars() > options.max_vars || f.nvars() > 62) throw OracleGuardError(f.nvars(), options.max_vars);
  Enumerator e;
  e.n = f.nvars();
  e.semantics = semantics;
  for (const auto& c : f.clauses()) {
    ClauseMask m;
    for (Literal l : c) (l.positive() ? m.pos : m.neg) |= e.bit(l.var());
    e.clauses.push_back(m);
  }
  for (Literal l : assumptions) {
    if (l.var().id == 0 || l.var().id > e.n) throw std::invalid_argument("assumption outside the formula's variables");
    (l.positive() ? e.must_true : e.must_false) |= e.bit(l.var());
  }
  return e;
}

struct Chunk {
  std::uint64_t count = 0;
  std::vector<std::uint64_t> first;  // up to cap + 1 accepted assignments
};

ModelReport run(const Enumerator& e, const OracleOptions& options, bool want_models) {
  const std::uint64_t total = std::uint64_t{1} << e.n;
  const std::uint64_t keep = want_models ? options.model_cap + 1 : 0;
  unsigned workers = std::max(1u, options.workers);
  if (total < (1u << 12)) workers = 1;
  std::vector<Chunk> chunks(workers);

  auto scan = [&](unsigned w) {
    const std::uint64_t lo = total / workers * w;
    const std::uint64_t hi = w + 1 == workers ? total : total / workers * (w + 1);
    Chunk& c = chunks[w];
    for (std::uint64_t a = lo; a < hi; ++a) {
      if (!e.accepts(a)) continue;
      ++c.count;
      if (c.first.size() < keep) c.first.push_back(a);
    }
  };
  if (workers == 1) {
    scan(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(scan, w);
  }

  ModelReport report;
  report.semantics = e.semantics;
  for (const auto& c : chunks) report.count += c.count;
  if (want_models && report.count <= options.model_cap) {
    std::vector<TotalAssignment> models;
    for (const auto& c : chunks)
      for (std::uint64_t a : c.first) models.push_back(e.decode(a));
    report.models = std::move(models);
  }
  return report;
}

}  // namespace

const char* to_string(Semantics s) {
  return s == Semantics::ExactlyOne ? "exactly-one" : "inclusive-or";
}

std::optional<Semantics> parse_semantics(std::string_view name) {
  if (name == "exactly-one") return Semantics::ExactlyOne;
  if (name == "inclusive-or") return Semantics::InclusiveOr;
  return std::nullopt;
}

ModelReport enumerate_models(const Formula& f, Semantics semantics, const OracleOptions& options) {
  return run(make_enumerator(f, {}, semantics, options), options, true);
}

std::uint64_t count_models(const Formula& f, std::span<const Literal> assumptions, Semantics semantics,
                           const OracleOptions& options) {
  return run(make_enumerator(f, assumptions, semantics, options), options, false).count;
}

bool entails(const Formula& f, Literal assumption, Literal consequence, const OracleOptions& options) {
  const Literal both[] = {assumption, ~consequence};
  return count_models(f, both, Semantics::ExactlyOne, options) == 0;
}

}  // namespace x3sat
