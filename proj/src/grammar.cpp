#include "ligforge/grammar.hpp"

#include <algorithm>
#include <sstream>

namespace ligforge {

GrammarError::GrammarError(std::size_t line, std::size_t column, const std::string& what)
    : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
      line_(line),
      column_(column) {}

std::optional<std::size_t> LigProduction::primary_index() const {
  for (std::size_t i = 0; i < rhs.size(); ++i) {
    if (rhs[i].kind == Constituent::Kind::Primary) return i;
  }
  return std::nullopt;
}

namespace {

std::optional<std::uint32_t> find_in(const std::vector<std::string>& names, std::string_view name) {
  auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) return std::nullopt;
  return static_cast<std::uint32_t>(it - names.begin());
}

}  // namespace

std::optional<std::uint32_t> LigGrammar::find_nonterminal(std::string_view name) const {
  return find_in(nonterminals, name);
}

std::optional<std::uint32_t> LigGrammar::find_terminal(std::string_view name) const {
  return find_in(terminals, name);
}

std::optional<std::uint32_t> LigGrammar::find_stack_symbol(std::string_view name) const {
  return find_in(stack_symbols, name);
}

std::optional<std::uint32_t> LigGrammar::find_production(std::string_view name) const {
  for (const auto& p : productions) {
    if (p.name == name) return p.id;
  }
  return std::nullopt;
}

std::string_view to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::WordTooLong: return "word-too-long";
    case ViolationKind::SchemaTooLong: return "schema-too-long";
    case ViolationKind::TooManyFlanks: return "too-many-flanks";
    case ViolationKind::SecondaryWithStack: return "secondary-with-stack";
    case ViolationKind::NoPrimary: return "no-primary";
    case ViolationKind::MultiplePrimaries: return "multiple-primaries";
    case ViolationKind::PrimaryUnderEmptyHead: return "primary-under-empty-head";
  }
  return "?";
}

std::vector<Violation> validate_normal_form(const LigGrammar& g) {
  std::vector<Violation> out;
  for (const auto& p : g.productions) {
    auto report = [&](ViolationKind kind, std::string message) {
      out.push_back({p.id, kind, p.name + ": " + std::move(message)});
    };

    std::size_t primaries = 0;
    std::size_t flanks = 0;
    std::size_t pushed = 0;
    bool has_nonterminal = false;
    for (const auto& c : p.rhs) {
      switch (c.kind) {
        case Constituent::Kind::Primary:
          ++primaries;
          pushed += c.stack.size();
          has_nonterminal = true;
          break;
        case Constituent::Kind::Secondary:
          ++flanks;
          has_nonterminal = true;
          if (!c.stack.empty()) {
            report(ViolationKind::SecondaryWithStack,
                   "secondary constituent " + g.nonterminals[c.symbol] + " carries a nonempty stack");
          }
          break;
        case Constituent::Kind::Terminal:
          ++flanks;
          break;
      }
    }

    if (primaries > 1) {
      report(ViolationKind::MultiplePrimaries, std::to_string(primaries) + " primary constituents");
      continue;
    }
    if (!p.lhs_inherits) {
      if (primaries == 1) {
        report(ViolationKind::PrimaryUnderEmptyHead, "primary constituent under an empty-stack head");
      } else if (has_nonterminal) {
        report(ViolationKind::NoPrimary, "secondary constituents without a primary constituent");
      } else if (p.rhs.size() > 2) {
        report(ViolationKind::WordTooLong,
               "terminal word of length " + std::to_string(p.rhs.size()) + " exceeds 2");
      }
      continue;
    }
    if (primaries == 0) {
      report(ViolationKind::NoPrimary, "inheriting head without a primary constituent");
      continue;
    }
    if (p.lhs_pop.size() + pushed > 1) {
      report(ViolationKind::SchemaTooLong,
             "|aa'| = " + std::to_string(p.lhs_pop.size() + pushed) + " exceeds 1");
    }
    if (flanks > 1) {
      report(ViolationKind::TooManyFlanks, std::to_string(flanks) + " flanks exceed 1");
    }
  }
  return out;
}

std::vector<NormalProduction> normal_view(const LigGrammar& g) {
  auto violations = validate_normal_form(g);
  if (!violations.empty()) {
    std::string msg = "grammar is not in normal form:";
    for (const auto& v : violations) msg += "\n  " + v.message;
    throw NormalFormError(msg);
  }

  std::vector<NormalProduction> out;
  out.reserve(g.productions.size());
  for (const auto& p : g.productions) {
    NormalProduction n;
    n.id = p.id;
    n.lhs = p.lhs;
    if (!p.lhs_inherits) {
      n.terminal_word = true;
      n.lhs_schema = StackSchema::empty();
      for (const auto& c : p.rhs) n.word.push_back(c.symbol);
      out.push_back(std::move(n));
      continue;
    }
    n.lhs_schema = p.lhs_pop.empty() ? StackSchema::copy() : StackSchema::pop(p.lhs_pop.front());
    bool seen_primary = false;
    for (const auto& c : p.rhs) {
      if (c.kind == Constituent::Kind::Primary) {
        n.primary = c.symbol;
        n.primary_schema = c.stack.empty() ? StackSchema::copy() : StackSchema::push(c.stack.front());
        seen_primary = true;
      } else {
        n.flank = Flank{c.kind == Constituent::Kind::Secondary, c.symbol, !seen_primary};
      }
    }
    out.push_back(std::move(n));
  }
  return out;
}

CfGrammar cf_backbone(const LigGrammar& g) {
  CfGrammar cf;
  cf.nonterminals = g.nonterminals;
  cf.terminals = g.terminals;
  cf.start = g.start;
  cf.productions.reserve(g.productions.size());
  for (const auto& p : g.productions) {
    CfProduction q{p.id, p.lhs, {}};
    for (const auto& c : p.rhs) {
      q.rhs.push_back(c.kind == Constituent::Kind::Terminal ? Symbol::t(c.symbol) : Symbol::nt(c.symbol));
    }
    cf.productions.push_back(std::move(q));
  }
  return cf;
}

std::string render_cf_production(const CfGrammar& g, const CfProduction& p,
                                 const std::vector<std::string>* production_names) {
  std::ostringstream os;
  if (production_names != nullptr && p.id < production_names->size()) {
    os << (*production_names)[p.id] << ": ";
  }
  os << g.nonterminals[p.lhs] << " ->";
  for (const auto& s : p.rhs) {
    os << ' ' << (s.terminal ? g.terminals[s.index] : g.nonterminals[s.index]);
  }
  return os.str();
}

}  // namespace ligforge
