#include "x3sat/formula.hpp"

#include <algorithm>
#include <stdexcept>

namespace x3sat {

Literal Literal::from_dimacs(int value) {
  if (value == 0) throw std::invalid_argument("literal 0 is not a variable reference");
  const auto id = static_cast<std::uint32_t>(value > 0 ? value : -static_cast<long long>(value));
  return Literal(Variable{id}, value > 0);
}

XClause::XClause(std::span<const Literal> literals) {
  if (literals.empty() || literals.size() > kMaxWidth)
    throw std::invalid_argument("clause width must be 1..3, got " + std::to_string(literals.size()));
  std::copy(literals.begin(), literals.end(), lits_.begin());
  width_ = literals.size();
  std::sort(lits_.begin(), lits_.begin() + width_);
  for (std::size_t i = 0; i < width_; ++i) {
    if (lits_[i].var().id == 0) throw std::invalid_argument("variable id 0 in clause");
    if (i > 0 && lits_[i - 1].var() == lits_[i].var())
      throw std::invalid_argument("clause mentions variable " + std::to_string(lits_[i].var().id) +
                                  " twice; normalize it first");
  }
}

bool XClause::contains(Variable v) const {
  return std::any_of(begin(), end(), [v](Literal l) { return l.var() == v; });
}

bool XClause::operator==(const XClause& other) const {
  return std::equal(begin(), end(), other.begin(), other.end());
}

Formula::Formula(std::uint32_t nvars, std::vector<XClause> clauses)
    : nvars_(nvars), clauses_(std::move(clauses)) {
  for (const auto& c : clauses_)
    for (Literal l : c)
      if (l.var().id > nvars_)
        throw std::invalid_argument("variable " + std::to_string(l.var().id) + " exceeds nvars " +
                                    std::to_string(nvars_));
}

std::vector<Variable> Formula::occurring_vars() const {
  std::vector<bool> seen(nvars_ + 1, false);
  for (const auto& c : clauses_)
    for (Literal l : c) seen[l.var().id] = true;
  std::vector<Variable> out;
  for (std::uint32_t v = 1; v <= nvars_; ++v)
    if (seen[v]) out.push_back(Variable{v});
  return out;
}

bool Formula::mentions(Variable v) const {
  return std::any_of(clauses_.begin(), clauses_.end(), [v](const XClause& c) { return c.contains(v); });
}

Minterm::Minterm(std::initializer_list<Literal> literals) {
  for (Literal l : literals)
    if (add(l) == Insert::Conflict) throw std::invalid_argument("minterm literals are complementary");
}

Minterm::Insert Minterm::add(Literal l) {
  const auto id = l.var().id;
  if (id >= values_.size()) values_.resize(id + 1, 0);
  const std::int8_t want = l.positive() ? 1 : -1;
  if (values_[id] == want) return Insert::Present;
  if (values_[id] != 0) return Insert::Conflict;
  values_[id] = want;
  order_.push_back(l);
  return Insert::Added;
}

std::optional<bool> Minterm::value(Variable v) const {
  if (v.id >= values_.size() || values_[v.id] == 0) return std::nullopt;
  return values_[v.id] > 0;
}

bool Minterm::contains(Literal l) const {
  auto v = value(l.var());
  return v && *v == l.positive();
}

std::vector<Literal> Minterm::sorted() const {
  std::vector<Literal> out = order_;
  std::sort(out.begin(), out.end());
  return out;
}

bool Minterm::operator==(const Minterm& other) const { return sorted() == other.sorted(); }

TotalAssignment TotalAssignment::from_minterm(const Minterm& psi, std::uint32_t nvars) {
  TotalAssignment t(nvars);
  for (Literal l : psi.literals()) t.set(l.var(), l.positive());
  return t;
}

std::vector<Literal> TotalAssignment::literals() const {
  std::vector<Literal> out;
  out.reserve(values_.size());
  for (std::uint32_t v = 1; v <= nvars(); ++v) out.emplace_back(Variable{v}, values_[v - 1]);
  return out;
}

NormalizedClause normalize_clause(std::span<const Literal> raw) {
  if (raw.empty() || raw.size() > XClause::kMaxWidth)
    throw std::invalid_argument("raw clause width must be 1..3");

  // Occurrence counts per variable, in first-occurrence order.
  struct Occ {
    Variable var;
    int pos = 0;
    int neg = 0;
  };
  std::vector<Occ> occ;
  for (Literal l : raw) {
    auto it = std::find_if(occ.begin(), occ.end(), [&](const Occ& o) { return o.var == l.var(); });
    if (it == occ.end()) {
      occ.push_back({l.var()});
      it = occ.end() - 1;
    }
    (l.positive() ? it->pos : it->neg) += 1;
  }

  if (occ.size() == raw.size()) return XClause(raw);

  ForcedLiterals forced;
  auto mixed = std::find_if(occ.begin(), occ.end(), [](const Occ& o) { return o.pos > 0 && o.neg > 0; });
  if (mixed != occ.end()) {
    // Variable v contributes pos true occurrences when true, neg when false.
    if (mixed->pos == 1 && mixed->neg == 1) {
      for (const Occ& o : occ) {
        if (o.var == mixed->var) continue;
        forced.literals.emplace_back(o.var, o.pos == 0);
      }
    } else {
      // width 3: (v v ~v) forces ~v, (v ~v ~v) forces v.
      forced.literals.emplace_back(mixed->var, mixed->pos == 1);
    }
    return forced;
  }

  std::vector<Literal> survivors;
  for (const Occ& o : occ) {
    const int n = o.pos + o.neg;
    const bool positive = o.pos > 0;
    if (n >= 2)
      forced.literals.emplace_back(o.var, !positive);
    else
      survivors.emplace_back(o.var, positive);
  }
  if (survivors.empty()) return UnsatisfiableClause{};
  if (survivors.size() == 1) {
    forced.literals.push_back(survivors.front());
    return forced;
  }
  // Unreachable for width <= 3: a repeat leaves at most one survivor.
  throw std::logic_error("normalize_clause: unexpected shape");
}

Instance normalize_formula(std::uint32_t nvars, std::span<const RawClause> raw) {
  Instance out;
  std::vector<XClause> clauses;
  for (const RawClause& rc : raw) {
    auto result = normalize_clause(rc.literals);
    if (auto* clause = std::get_if<XClause>(&result)) {
      clauses.push_back(*clause);
      continue;
    }
    NormalizationEvent ev{rc.line, rc.literals, {}, false};
    if (auto* f = std::get_if<ForcedLiterals>(&result)) {
      ev.forced = f->literals;
      for (Literal l : f->literals) clauses.push_back(XClause{l});
    } else {
      ev.unsatisfiable = true;
      if (!out.contradiction) out.contradiction = ev;
    }
    out.normalization.push_back(std::move(ev));
  }
  out.formula = Formula(nvars, std::move(clauses));
  return out;
}

bool evaluate(const XClause& clause, const TotalAssignment& t) {
  int count = 0;
  for (Literal l : clause) count += t.satisfies(l) ? 1 : 0;
  return count == 1;
}

bool evaluate(const Formula& f, const TotalAssignment& t) {
  if (t.nvars() < f.nvars())
    throw std::invalid_argument("assignment covers " + std::to_string(t.nvars()) + " of " +
                                std::to_string(f.nvars()) + " variables");
  return std::all_of(f.clauses().begin(), f.clauses().end(),
                     [&](const XClause& c) { return evaluate(c, t); });
}

std::string to_string(Literal l) { return std::to_string(l.to_dimacs()); }

std::string to_string(const XClause& c) {
  std::string s = "(";
  for (std::size_t i = 0; i < c.width(); ++i) {
    if (i) s += ' ';
    s += to_string(c[i]);
  }
  return s + ")";
}

std::string to_string(const Formula& f) {
  std::string s;
  for (const auto& c : f.clauses()) {
    if (!s.empty()) s += ' ';
    s += to_string(c);
  }
  return s;
}

}  // namespace x3sat
