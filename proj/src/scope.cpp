#include "x3sat/scope.hpp"

#include <stdexcept>

namespace x3sat {

ClauseStatus clause_status(const XClause& clause, const Minterm& psi) {
  std::optional<Literal> witness;
  std::vector<Literal> open;
  bool any_false = false;
  for (Literal l : clause) {
    auto v = psi.value(l.var());
    if (!v) {
      open.push_back(l);
    } else if (*v == l.positive()) {
      if (!witness) witness = l;
    } else {
      any_false = true;
    }
  }
  if (witness) {
    status::Satisfied s{*witness, {}};
    for (Literal l : clause)
      if (l != *witness) s.forces.push_back(~l);
    return s;
  }
  if (open.empty()) return status::Empty{};
  if (open.size() == 1) return status::Unit{open.front()};
  if (!any_false) return status::Untouched{};
  return status::Reduced{XClause(open)};
}

namespace {

class Propagator {
 public:
  Propagator(const Formula& f, const Minterm& seed) : f_(f), occurs_(f.nvars() + 1), position_(f.nvars() + 1, 0) {
    for (std::size_t ci = 0; ci < f.size(); ++ci)
      for (Literal l : f[ci]) occurs_[l.var().id].push_back(ci);
    discharged_.assign(f.size(), false);
    for (Literal l : seed.literals()) {
      psi_.add(l);
      record(l, std::nullopt);
    }
  }

  ScopeResult run() {
    for (std::size_t ci = 0; ci < f_.size() && !conflict_; ++ci) examine(ci);
    while (!conflict_ && head_ < trail_.size()) {
      const Literal l = trail_[head_++].literal;
      if (l.var().id > f_.nvars()) continue;
      for (std::size_t ci : occurs_[l.var().id]) {
        examine(ci);
        if (conflict_) break;
      }
    }
    if (conflict_) return {Incompatible{std::move(*conflict_)}, steps_};
    Formula rest = residual();
    return {Compatible{std::move(psi_), std::move(rest)}, steps_};
  }

 private:
  void record(Literal l, std::optional<std::size_t> clause) {
    if (l.var().id < position_.size()) position_[l.var().id] = trail_.size();
    trail_.push_back({l, clause});
  }

  // Returns false on conflict.
  bool force(Literal l, std::size_t clause) {
    switch (psi_.add(l)) {
      case Minterm::Insert::Present:
        return true;
      case Minterm::Insert::Added:
        record(l, clause);
        return true;
      case Minterm::Insert::Conflict:
        conflict_ = ConflictInfo{l.var(), ConflictInfo::Kind::Complementary, trail_};
        conflict_->derivation.push_back({l, clause});
        return false;
    }
    return false;
  }

  void examine(std::size_t ci) {
    ++steps_;
    if (discharged_[ci]) return;
    const XClause& clause = f_[ci];
    auto st = clause_status(clause, psi_);
    if (auto* sat = std::get_if<status::Satisfied>(&st)) {
      discharged_[ci] = true;
      for (Literal l : sat->forces)
        if (!force(l, ci)) return;
    } else if (auto* unit = std::get_if<status::Unit>(&st)) {
      discharged_[ci] = true;
      force(unit->forces, ci);
    } else if (std::holds_alternative<status::Empty>(st)) {
      // The literal falsified last is the one the clause was waiting on.
      Literal last = clause[0];
      for (Literal l : clause)
        if (position_[l.var().id] > position_[last.var().id]) last = l;
      conflict_ = ConflictInfo{last.var(), ConflictInfo::Kind::ClauseEmpty, trail_};
      conflict_->derivation.push_back({last, ci});
    }
  }

  Formula residual() const {
    std::vector<XClause> out;
    for (std::size_t ci = 0; ci < f_.size(); ++ci) {
      if (discharged_[ci]) continue;
      std::vector<Literal> open;
      for (Literal l : f_[ci])
        if (!psi_.assigned(l.var())) open.push_back(l);
      out.emplace_back(open);
    }
    return Formula(f_.nvars(), std::move(out));
  }

  const Formula& f_;
  std::vector<std::vector<std::size_t>> occurs_;
  std::vector<std::size_t> position_;
  std::vector<bool> discharged_;
  Minterm psi_;
  std::vector<DerivationStep> trail_;
  std::size_t head_ = 0;
  std::optional<ConflictInfo> conflict_;
  std::uint64_t steps_ = 0;
};

bool forced_by(const XClause& clause, Literal l, const Minterm& m) {
  bool member = false, anti = false;
  for (Literal c : clause) {
    member |= c == l;
    anti |= c == ~l;
  }
  if (member) {
    for (Literal c : clause)
      if (c != l && !m.contains(~c)) return false;
    return true;
  }
  if (anti) {
    for (Literal c : clause)
      if (c != ~l && m.contains(c)) return true;
  }
  return false;
}

}  // namespace

ScopeResult propagate(const Formula& f, const Minterm& seed) {
  for (Literal l : seed.literals())
    if (l.var().id == 0 || l.var().id > f.nvars())
      throw std::invalid_argument("seed literal " + to_string(l) + " outside the formula's variables");
  return Propagator(f, seed).run();
}

ScopeResult scope(Literal l, const Formula& f) {
  if (!f.mentions(l.var()))
    throw std::invalid_argument("scope: variable " + std::to_string(l.var().id) + " does not occur in the formula");
  return propagate(f, Minterm{l});
}

bool replays(const Formula& f, const ConflictInfo& conflict) {
  Minterm m;
  const auto& steps = conflict.derivation;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const auto& step = steps[i];
    if (step.clause) {
      if (*step.clause >= f.size() || !forced_by(f[*step.clause], step.literal, m)) return false;
    }
    if (m.add(step.literal) == Minterm::Insert::Conflict)
      return i + 1 == steps.size() && step.literal.var() == conflict.var;
  }
  return false;
}

}  // namespace x3sat
