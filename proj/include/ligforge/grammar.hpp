#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ligforge {

inline constexpr std::uint32_t npos32 = static_cast<std::uint32_t>(-1);

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Syntax or declaration error in grammar text; line/column are 1-based.
class GrammarError : public Error {
public:
  GrammarError(std::size_t line, std::size_t column, const std::string& what);

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

private:
  std::size_t line_;
  std::size_t column_;
};

class NormalFormError : public Error {
public:
  using Error::Error;
};

// ---------------------------------------------------------------------------
// Linear indexed grammars
// ---------------------------------------------------------------------------

enum class SchemaOp : std::uint8_t { Copy, Push, Pop, Empty };

/// Stack schema of a normal-form constituent. `symbol` is meaningful for
/// Push and Pop only.
struct StackSchema {
  SchemaOp op = SchemaOp::Empty;
  std::uint32_t symbol = npos32;

  static StackSchema copy() { return {SchemaOp::Copy, npos32}; }
  static StackSchema empty() { return {SchemaOp::Empty, npos32}; }
  static StackSchema push(std::uint32_t g) { return {SchemaOp::Push, g}; }
  static StackSchema pop(std::uint32_t g) { return {SchemaOp::Pop, g}; }

  friend bool operator==(const StackSchema&, const StackSchema&) = default;
};

/// One right-hand-side item. The stack is bottom-to-top: for a primary
/// constituent B(..g1 g2) it holds {g1, g2} (pushed on top of the inherited
/// stack); for a secondary constituent it is its fixed stack, empty in normal
/// form.
struct Constituent {
  enum class Kind : std::uint8_t { Terminal, Primary, Secondary };

  Kind kind = Kind::Terminal;
  std::uint32_t symbol = 0;
  std::vector<std::uint32_t> stack;

  static Constituent terminal(std::uint32_t t) { return {Kind::Terminal, t, {}}; }
  static Constituent primary(std::uint32_t nt, std::vector<std::uint32_t> push = {}) {
    return {Kind::Primary, nt, std::move(push)};
  }
  static Constituent secondary(std::uint32_t nt) { return {Kind::Secondary, nt, {}}; }

  friend bool operator==(const Constituent&, const Constituent&) = default;
};

/// A production in general (possibly relaxed) shape. `lhs_inherits` is true
/// for A(..α) heads and false for A() heads; `lhs_pop` is α, bottom-to-top.
struct LigProduction {
  std::uint32_t id = 0;
  std::string name;
  std::uint32_t lhs = 0;
  bool lhs_inherits = false;
  std::vector<std::uint32_t> lhs_pop;
  std::vector<Constituent> rhs;

  std::optional<std::size_t> primary_index() const;

  friend bool operator==(const LigProduction&, const LigProduction&) = default;
};

struct LigGrammar {
  std::vector<std::string> nonterminals;
  std::vector<std::string> terminals;
  std::vector<std::string> stack_symbols;
  std::vector<LigProduction> productions;  // productions[i].id == i
  std::uint32_t start = 0;

  std::optional<std::uint32_t> find_nonterminal(std::string_view name) const;
  std::optional<std::uint32_t> find_terminal(std::string_view name) const;
  std::optional<std::uint32_t> find_stack_symbol(std::string_view name) const;
  std::optional<std::uint32_t> find_production(std::string_view name) const;

  friend bool operator==(const LigGrammar&, const LigGrammar&) = default;
};

// ---------------------------------------------------------------------------
// Normal form
// ---------------------------------------------------------------------------

struct Flank {
  bool secondary = false;  // false: terminal
  std::uint32_t symbol = 0;
  bool left = true;

  friend bool operator==(const Flank&, const Flank&) = default;
};

/// Normal-form view of a production: either A() -> w with |w| <= 2, or
/// A(..α) -> Γ1 B(..α') Γ2 with |αα'| <= 1 and at most one flank.
struct NormalProduction {
  std::uint32_t id = 0;
  std::uint32_t lhs = 0;
  bool terminal_word = false;
  StackSchema lhs_schema;
  std::vector<std::uint32_t> word;
  std::uint32_t primary = 0;
  StackSchema primary_schema;
  std::optional<Flank> flank;
};

enum class ViolationKind : std::uint8_t {
  WordTooLong,           // |w| > 2
  SchemaTooLong,         // |αα'| > 1
  TooManyFlanks,         // more than one of Γ1, Γ2
  SecondaryWithStack,    // C(γ...) as a secondary constituent
  NoPrimary,             // A(..) head or nonterminals on the rhs, no primary
  MultiplePrimaries,
  PrimaryUnderEmptyHead  // A() -> ... B(..) ...
};

struct Violation {
  std::uint32_t production = 0;
  ViolationKind kind = ViolationKind::WordTooLong;
  std::string message;
};

std::string_view to_string(ViolationKind kind);

std::vector<Violation> validate_normal_form(const LigGrammar& g);

/// Throws NormalFormError listing every violation.
std::vector<NormalProduction> normal_view(const LigGrammar& g);

struct NormalizeResult {
  LigGrammar grammar;
  /// For every production of `grammar`, the id of the production it was
  /// derived from, or npos32 for fresh chain productions.
  std::vector<std::uint32_t> origin;
};

/// Rewrites a relaxed grammar into normal form, preserving its string
/// language. Throws NormalFormError for productions with zero or several
/// primary constituents and for secondaries carrying a stack.
NormalizeResult normalize(const LigGrammar& g);

// ---------------------------------------------------------------------------
// Text format
// ---------------------------------------------------------------------------

struct ParseOptions {
  bool relaxed = false;
};

LigGrammar parse_grammar(std::string_view text, const ParseOptions& options = {});
LigGrammar load_grammar(const std::string& path, const ParseOptions& options = {});

/// Inverse of parse_grammar.
std::string render_grammar(const LigGrammar& g);

/// One grammar-file line, e.g. `r1: S(..) -> S(..ga) "a"`.
std::string render_production(const LigGrammar& g, const LigProduction& p);

// ---------------------------------------------------------------------------
// Context-free grammars (backbone, forests, derivation grammars)
// ---------------------------------------------------------------------------

struct Symbol {
  bool terminal = false;
  std::uint32_t index = 0;

  static Symbol t(std::uint32_t i) { return {true, i}; }
  static Symbol nt(std::uint32_t i) { return {false, i}; }

  friend bool operator==(const Symbol&, const Symbol&) = default;
  friend auto operator<=>(const Symbol&, const Symbol&) = default;
};

struct CfProduction {
  std::uint32_t id = 0;
  std::uint32_t lhs = 0;
  std::vector<Symbol> rhs;

  friend bool operator==(const CfProduction&, const CfProduction&) = default;
};

struct CfGrammar {
  std::vector<std::string> nonterminals;
  std::vector<std::string> terminals;
  std::vector<CfProduction> productions;
  std::uint32_t start = 0;

  friend bool operator==(const CfGrammar&, const CfGrammar&) = default;
};

/// Production i of the result is production i of `g` with stacks erased.
CfGrammar cf_backbone(const LigGrammar& g);

std::string render_cf_production(const CfGrammar& g, const CfProduction& p,
                                 const std::vector<std::string>* production_names = nullptr);

}  // namespace ligforge
