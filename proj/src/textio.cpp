#include "x3sat/textio.hpp"

#include <charconv>
#include <optional>
#include <sstream>

namespace x3sat {

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

template <typename Int>
std::optional<Int> to_int(std::string_view tok) {
  Int value{};
  if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc{} || ptr != tok.data() + tok.size()) return std::nullopt;
  return value;
}

std::string quoted(const std::string& s) { return "\"" + s + "\""; }

const char* kind_name(ConflictInfo::Kind k) {
  return k == ConflictInfo::Kind::Complementary ? "complementary" : "clause-empty";
}

std::string format_derivation(const std::vector<DerivationStep>& steps) {
  std::string s;
  for (const auto& st : steps) {
    if (!s.empty()) s += ' ';
    s += to_string(st.literal);
    s += '/';
    s += st.clause ? std::to_string(*st.clause + 1) : std::string("a");
  }
  return s;
}

}  // namespace

Instance parse_x3(std::string_view text) {
  std::optional<std::pair<std::uint32_t, std::size_t>> header;
  std::vector<RawClause> raw;
  std::size_t lineno = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++lineno;

    const auto tokens = split_ws(line);
    if (tokens.empty() || tokens.front().front() == 'c') continue;
    if (tokens.front() == "p") {
      if (header) throw ParseError(ParseErrorKind::DuplicateHeader, lineno, "duplicate header");
      if (tokens.size() != 4 || tokens[1] != "x3")
        throw ParseError(ParseErrorKind::BadHeader, lineno, "expected 'p x3 <nvars> <nclauses>'");
      auto nvars = to_int<std::uint32_t>(tokens[2]);
      auto nclauses = to_int<std::size_t>(tokens[3]);
      if (!nvars || !nclauses)
        throw ParseError(ParseErrorKind::BadHeader, lineno, "header counts must be non-negative integers");
      header = {*nvars, *nclauses};
      continue;
    }
    if (!header) throw ParseError(ParseErrorKind::MissingHeader, lineno, "clause before 'p x3' header");

    RawClause rc;
    rc.line = lineno;
    bool terminated = false;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      auto value = to_int<int>(tokens[i]);
      if (!value)
        throw ParseError(ParseErrorKind::BadToken, lineno, "not an integer: '" + std::string(tokens[i]) + "'");
      if (*value == 0) {
        if (i + 1 != tokens.size())
          throw ParseError(ParseErrorKind::VariableOutOfRange, lineno, "variable id 0 inside a clause");
        terminated = true;
        break;
      }
      const auto var = static_cast<std::uint32_t>(*value > 0 ? *value : -static_cast<long long>(*value));
      if (var > header->first)
        throw ParseError(ParseErrorKind::VariableOutOfRange, lineno,
                         "variable " + std::to_string(var) + " exceeds declared " + std::to_string(header->first));
      rc.literals.push_back(Literal::from_dimacs(*value));
    }
    if (!terminated) throw ParseError(ParseErrorKind::MissingTerminator, lineno, "clause not terminated by 0");
    if (rc.literals.empty() || rc.literals.size() > XClause::kMaxWidth)
      throw ParseError(ParseErrorKind::ClauseWidth, lineno,
                       "clause has " + std::to_string(rc.literals.size()) + " literals, expected 1..3");
    raw.push_back(std::move(rc));
  }
  if (!header) throw ParseError(ParseErrorKind::MissingHeader, lineno == 0 ? 1 : lineno, "missing 'p x3' header");
  if (raw.size() != header->second)
    throw ParseError(ParseErrorKind::CountMismatch, lineno == 0 ? 1 : lineno,
                     "header declares " + std::to_string(header->second) + " clauses, found " +
                         std::to_string(raw.size()));
  return normalize_formula(header->first, raw);
}

std::string serialize_x3(const Formula& f) {
  std::string out = "p x3 " + std::to_string(f.nvars()) + " " + std::to_string(f.size()) + "\n";
  for (const auto& c : f.clauses()) {
    for (Literal l : c) out += to_string(l) + " ";
    out += "0\n";
  }
  return out;
}

std::string format_clause_list(const Formula& f) {
  std::string s;
  for (const auto& c : f.clauses()) {
    for (Literal l : c) s += to_string(l) + " ";
    s += "0 ";
  }
  if (!s.empty()) s.pop_back();
  return s;
}

std::string format_literals(std::span<const Literal> literals) {
  std::string s;
  for (Literal l : literals) {
    if (!s.empty()) s += ' ';
    s += to_string(l);
  }
  return s;
}

std::vector<Literal> parse_literals(std::string_view text) {
  std::vector<Literal> out;
  for (auto tok : split_ws(text)) {
    auto v = to_int<int>(tok);
    if (!v || *v == 0) throw std::invalid_argument("bad literal '" + std::string(tok) + "'");
    out.push_back(Literal::from_dimacs(*v));
  }
  return out;
}

Formula parse_clause_list(std::uint32_t nvars, std::string_view text) {
  std::vector<XClause> clauses;
  std::vector<Literal> current;
  for (auto tok : split_ws(text)) {
    auto v = to_int<int>(tok);
    if (!v) throw std::invalid_argument("bad literal '" + std::string(tok) + "'");
    if (*v == 0) {
      clauses.emplace_back(current);
      current.clear();
    } else {
      current.push_back(Literal::from_dimacs(*v));
    }
  }
  if (!current.empty()) throw std::invalid_argument("clause list not terminated by 0");
  return Formula(nvars, std::move(clauses));
}

std::string format_trace_event(const TraceEvent& event) {
  std::ostringstream os;
  std::visit(
      [&](const auto& ev) {
        using T = std::decay_t<decltype(ev)>;
        if constexpr (std::is_same_v<T, trace::Normalized>) {
          os << "normalize line=" << ev.event.line << " raw=" << quoted(format_literals(ev.event.raw));
          if (ev.event.unsatisfiable)
            os << " result=unsatisfiable";
          else
            os << " forced=" << quoted(format_literals(ev.event.forced));
        } else if constexpr (std::is_same_v<T, trace::ScopeRun>) {
          os << "scope lit=" << to_string(ev.literal);
          if (ev.result.compatible()) {
            const auto& c = ev.result.as_compatible();
            os << " result=compatible psi=" << quoted(format_literals(c.psi.literals()))
               << " residual=" << quoted(format_clause_list(c.residual));
          } else {
            const auto& conflict = ev.result.as_incompatible().conflict;
            os << " result=incompatible conflict_var=" << conflict.var.id << " kind=" << kind_name(conflict.kind)
               << " derivation=" << quoted(format_derivation(conflict.derivation));
          }
        } else if constexpr (std::is_same_v<T, trace::NecessaryFixed>) {
          os << "necessary lit=" << to_string(ev.literal) << " cause=complement-incompatible conflict_var="
             << ev.because.var.id;
        } else if constexpr (std::is_same_v<T, trace::FormulaReduced>) {
          os << "reduced nvars=" << ev.formula.nvars() << " clauses=" << quoted(format_clause_list(ev.formula));
        } else if constexpr (std::is_same_v<T, trace::Restarted>) {
          os << "restart";
        } else if constexpr (std::is_same_v<T, trace::Constructed>) {
          os << "construct lit=" << to_string(ev.literal);
        } else if constexpr (std::is_same_v<T, trace::Backtracked>) {
          os << "backtrack lit=" << to_string(ev.literal);
        } else if constexpr (std::is_same_v<T, trace::Decided>) {
          os << "decided result=" << to_string(ev.verdict);
          if (ev.cause) os << " cause=" << to_string(*ev.cause);
          if (ev.var) os << " var=" << ev.var->id;
          os << " fixed=" << quoted(format_literals(ev.fixed.literals()));
          if (ev.model) os << " model=" << quoted(format_literals(ev.model->literals()));
          os << " steps=" << ev.steps;
        }
      },
      event);
  return os.str();
}

std::string emit_trace(std::span<const TraceEvent> events) {
  std::string out;
  for (const auto& ev : events) {
    out += format_trace_event(ev);
    out += '\n';
  }
  return out;
}

const std::string& TraceRecord::at(std::string_view key) const {
  for (const auto& [k, v] : fields)
    if (k == key) return v;
  throw std::out_of_range("trace record '" + tag + "' has no field '" + std::string(key) + "'");
}

bool TraceRecord::has(std::string_view key) const {
  for (const auto& [k, v] : fields)
    if (k == key) return true;
  return false;
}

std::vector<TraceRecord> parse_trace(std::string_view text) {
  std::vector<TraceRecord> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    if (line.empty()) continue;

    TraceRecord rec;
    std::size_t i = line.find(' ');
    rec.tag = std::string(line.substr(0, i));
    while (i != std::string_view::npos && i < line.size()) {
      while (i < line.size() && line[i] == ' ') ++i;
      if (i >= line.size()) break;
      const std::size_t eq = line.find('=', i);
      if (eq == std::string_view::npos) throw std::invalid_argument("trace field without '=': " + std::string(line));
      std::string key(line.substr(i, eq - i));
      std::string value;
      if (eq + 1 < line.size() && line[eq + 1] == '"') {
        const std::size_t close = line.find('"', eq + 2);
        if (close == std::string_view::npos) throw std::invalid_argument("unterminated quote: " + std::string(line));
        value = std::string(line.substr(eq + 2, close - eq - 2));
        i = close + 1;
      } else {
        const std::size_t sp = line.find(' ', eq + 1);
        value = std::string(line.substr(eq + 1, sp == std::string_view::npos ? std::string_view::npos : sp - eq - 1));
        i = sp;
      }
      rec.fields.emplace_back(std::move(key), std::move(value));
    }
    out.push_back(std::move(rec));
  }
  return out;
}

}  // namespace x3sat
