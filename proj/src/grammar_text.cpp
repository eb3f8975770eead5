#include "ligforge/grammar.hpp"

#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

namespace ligforge {
namespace {

enum class Tok { Ident, String, LParen, RParen, Dots, Arrow, Colon, Directive, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  std::size_t column = 0;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }

bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '#' || c == '\'';
}

std::vector<Token> lex_line(std::string_view line, std::size_t lineno) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    char c = line[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == '#') break;
    std::size_t col = i + 1;
    if (c == '(') {
      out.push_back({Tok::LParen, "(", col});
      ++i;
    } else if (c == ')') {
      out.push_back({Tok::RParen, ")", col});
      ++i;
    } else if (c == ':') {
      out.push_back({Tok::Colon, ":", col});
      ++i;
    } else if (line.substr(i, 2) == "..") {
      out.push_back({Tok::Dots, "..", col});
      i += 2;
    } else if (line.substr(i, 2) == "->") {
      out.push_back({Tok::Arrow, "->", col});
      i += 2;
    } else if (c == '"') {
      std::string text;
      ++i;
      bool closed = false;
      while (i < line.size()) {
        if (line[i] == '\\' && i + 1 < line.size()) {
          text += line[i + 1];
          i += 2;
        } else if (line[i] == '"') {
          closed = true;
          ++i;
          break;
        } else {
          text += line[i++];
        }
      }
      if (!closed) throw GrammarError(lineno, col, "unterminated string literal");
      if (text.empty()) throw GrammarError(lineno, col, "empty terminal literal");
      out.push_back({Tok::String, std::move(text), col});
    } else if (c == '%') {
      std::size_t j = i + 1;
      while (j < line.size() && ident_char(line[j])) ++j;
      out.push_back({Tok::Directive, std::string(line.substr(i + 1, j - i - 1)), col});
      i = j;
    } else if (ident_start(c)) {
      std::size_t j = i + 1;
      while (j < line.size() && ident_char(line[j])) ++j;
      out.push_back({Tok::Ident, std::string(line.substr(i, j - i)), col});
      i = j;
    } else {
      throw GrammarError(lineno, col, std::string("unexpected character '") + c + "'");
    }
  }
  out.push_back({Tok::End, "", line.size() + 1});
  return out;
}

bool is_nonterminal_name(const std::string& s) {
  return !s.empty() && std::isupper(static_cast<unsigned char>(s[0]));
}

struct Schema {
  bool dotted = false;
  std::vector<std::string> symbols;
  std::size_t column = 0;
};

class LineParser {
public:
  LineParser(std::vector<Token> toks, std::size_t lineno) : toks_(std::move(toks)), lineno_(lineno) {}

  const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  const Token& next() {
    const Token& t = toks_[pos_];
    if (pos_ + 1 < toks_.size()) ++pos_;
    return t;
  }

  [[noreturn]] void fail(const Token& t, const std::string& what) const {
    throw GrammarError(lineno_, t.column, what);
  }

  const Token& expect(Tok kind, const char* what) {
    if (peek().kind != kind) fail(peek(), std::string("expected ") + what);
    return next();
  }

  Schema schema() {
    Schema s;
    s.column = expect(Tok::LParen, "'('").column;
    if (peek().kind == Tok::Dots) {
      next();
      s.dotted = true;
    }
    while (peek().kind == Tok::Ident) s.symbols.push_back(next().text);
    expect(Tok::RParen, "')' or stack symbol");
    return s;
  }

  std::size_t line() const { return lineno_; }

private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::size_t lineno_;
};

struct RawItem {
  enum class Kind { Terminal, Nonterminal } kind;
  std::string name;
  Schema schema;
  std::size_t column;
};

struct RawProduction {
  std::size_t line;
  std::size_t column;
  std::string name;
  std::string lhs;
  Schema lhs_schema;
  std::vector<RawItem> rhs;
};

}  // namespace

LigGrammar parse_grammar(std::string_view text, const ParseOptions& options) {
  std::optional<std::string> start;
  std::vector<std::string> stack_symbols;
  std::vector<RawProduction> raw;

  std::size_t lineno = 0;
  std::size_t begin = 0;
  while (begin <= text.size()) {
    std::size_t end = text.find('\n', begin);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(begin, end - begin);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    ++lineno;
    begin = end + 1;

    LineParser lp(lex_line(line, lineno), lineno);
    if (lp.peek().kind == Tok::End) continue;

    if (lp.peek().kind == Tok::Directive) {
      const Token& d = lp.next();
      if (d.text == "start") {
        if (start) lp.fail(d, "duplicate %start");
        const Token& s = lp.expect(Tok::Ident, "start nonterminal");
        if (!is_nonterminal_name(s.text)) lp.fail(s, "start symbol must be an uppercase-initial identifier");
        start = s.text;
      } else if (d.text == "stack") {
        while (lp.peek().kind == Tok::Ident) {
          const Token& s = lp.next();
          if (std::find(stack_symbols.begin(), stack_symbols.end(), s.text) != stack_symbols.end()) {
            lp.fail(s, "stack symbol '" + s.text + "' declared twice");
          }
          stack_symbols.push_back(s.text);
        }
      } else {
        lp.fail(d, "unknown directive %" + d.text);
      }
      if (lp.peek().kind != Tok::End) lp.fail(lp.peek(), "unexpected token after directive");
      continue;
    }

    RawProduction p;
    p.line = lineno;
    p.column = lp.peek().column;
    if (lp.peek().kind == Tok::Ident && lp.peek(1).kind == Tok::Colon) {
      p.name = lp.next().text;
      lp.next();
    }
    const Token& head = lp.expect(Tok::Ident, "left-hand side nonterminal");
    if (!is_nonterminal_name(head.text)) lp.fail(head, "left-hand side must be an uppercase-initial nonterminal");
    p.lhs = head.text;
    if (lp.peek().kind != Tok::LParen) lp.fail(lp.peek(), "nonterminal requires a stack schema");
    p.lhs_schema = lp.schema();
    lp.expect(Tok::Arrow, "'->'");
    while (lp.peek().kind != Tok::End) {
      const Token& t = lp.next();
      if (t.kind == Tok::String) {
        p.rhs.push_back({RawItem::Kind::Terminal, t.text, {}, t.column});
      } else if (t.kind == Tok::Ident && is_nonterminal_name(t.text)) {
        if (lp.peek().kind != Tok::LParen) lp.fail(lp.peek(), "nonterminal requires a stack schema");
        p.rhs.push_back({RawItem::Kind::Nonterminal, t.text, lp.schema(), t.column});
      } else if (t.kind == Tok::Ident) {
        if (lp.peek().kind == Tok::LParen) lp.fail(lp.peek(), "terminal '" + t.text + "' cannot carry a stack schema");
        p.rhs.push_back({RawItem::Kind::Terminal, t.text, {}, t.column});
      } else {
        lp.fail(t, "unexpected '" + t.text + "' on right-hand side");
      }
    }
    raw.push_back(std::move(p));
  }

  if (!start) throw GrammarError(lineno == 0 ? 1 : lineno, 1, "missing %start declaration");

  LigGrammar g;
  g.stack_symbols = stack_symbols;
  g.nonterminals.push_back(*start);
  g.start = 0;

  auto nonterminal = [&](const std::string& name) {
    if (auto i = g.find_nonterminal(name)) return *i;
    g.nonterminals.push_back(name);
    return static_cast<std::uint32_t>(g.nonterminals.size() - 1);
  };
  auto terminal = [&](const std::string& name) {
    if (auto i = g.find_terminal(name)) return *i;
    g.terminals.push_back(name);
    return static_cast<std::uint32_t>(g.terminals.size() - 1);
  };
  auto stack = [&](const Schema& s, std::size_t line) {
    std::vector<std::uint32_t> out;
    for (const auto& name : s.symbols) {
      auto i = g.find_stack_symbol(name);
      if (!i) throw GrammarError(line, s.column, "undeclared stack symbol '" + name + "'");
      out.push_back(*i);
    }
    return out;
  };

  std::set<std::string> names;
  for (const auto& p : raw) {
    if (!p.name.empty() && !names.insert(p.name).second) {
      throw GrammarError(p.line, p.column, "duplicate production name '" + p.name + "'");
    }
  }

  std::uint32_t auto_index = 0;
  for (const auto& rp : raw) {
    LigProduction p;
    p.id = static_cast<std::uint32_t>(g.productions.size());
    ++auto_index;
    if (rp.name.empty()) {
      std::string candidate = "r" + std::to_string(auto_index);
      while (names.count(candidate) != 0) candidate += "'";
      names.insert(candidate);
      p.name = candidate;
    } else {
      p.name = rp.name;
    }
    p.lhs = nonterminal(rp.lhs);
    p.lhs_inherits = rp.lhs_schema.dotted;
    if (!rp.lhs_schema.dotted && !rp.lhs_schema.symbols.empty()) {
      throw GrammarError(rp.line, rp.lhs_schema.column, "left-hand side stack must be '()' or '(..α)'");
    }
    p.lhs_pop = stack(rp.lhs_schema, rp.line);
    for (const auto& item : rp.rhs) {
      if (item.kind == RawItem::Kind::Terminal) {
        p.rhs.push_back(Constituent::terminal(terminal(item.name)));
      } else {
        Constituent c;
        c.kind = item.schema.dotted ? Constituent::Kind::Primary : Constituent::Kind::Secondary;
        c.symbol = nonterminal(item.name);
        c.stack = stack(item.schema, rp.line);
        p.rhs.push_back(std::move(c));
      }
    }
    g.productions.push_back(std::move(p));
  }

  if (!options.relaxed) {
    auto violations = validate_normal_form(g);
    if (!violations.empty()) {
      const auto& first = raw[violations.front().production];
      std::string msg = "line " + std::to_string(first.line) + ", column " + std::to_string(first.column) +
                        ": not in normal form (use relaxed parsing to normalize):";
      for (const auto& v : violations) msg += "\n  " + v.message;
      throw NormalFormError(msg);
    }
  }
  return g;
}

LigGrammar load_grammar(const std::string& path, const ParseOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open grammar file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_grammar(ss.str(), options);
}

namespace {

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

void render_stack(std::ostream& os, const LigGrammar& g, bool dotted, const std::vector<std::uint32_t>& stack) {
  os << '(';
  if (dotted) os << "..";
  for (std::size_t i = 0; i < stack.size(); ++i) {
    if (i > 0) os << ' ';
    os << g.stack_symbols[stack[i]];
  }
  os << ')';
}

}  // namespace

std::string render_production(const LigGrammar& g, const LigProduction& p) {
  std::ostringstream os;
  os << p.name << ": " << g.nonterminals[p.lhs];
  render_stack(os, g, p.lhs_inherits, p.lhs_pop);
  os << " ->";
  for (const auto& c : p.rhs) {
    os << ' ';
    if (c.kind == Constituent::Kind::Terminal) {
      os << quote(g.terminals[c.symbol]);
    } else {
      os << g.nonterminals[c.symbol];
      render_stack(os, g, c.kind == Constituent::Kind::Primary, c.stack);
    }
  }
  return os.str();
}

std::string render_grammar(const LigGrammar& g) {
  std::ostringstream os;
  os << "%start " << g.nonterminals[g.start] << '\n';
  if (!g.stack_symbols.empty()) {
    os << "%stack";
    for (const auto& s : g.stack_symbols) os << ' ' << s;
    os << '\n';
  }
  for (const auto& p : g.productions) os << render_production(g, p) << '\n';
  return os.str();
}

}  // namespace ligforge
