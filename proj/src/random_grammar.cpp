#include "ligforge/random_grammar.hpp"

#include <random>

namespace ligforge {

namespace {

class Draw {
public:
  explicit Draw(std::uint64_t seed) : rng_(seed) {}

  std::uint32_t below(std::size_t n) {
    return static_cast<std::uint32_t>(std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_));
  }
  std::size_t between(std::size_t lo, std::size_t hi) { return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_); }
  bool chance(double p) { return std::bernoulli_distribution(p)(rng_); }

private:
  std::mt19937_64 rng_;
};

LigGrammar skeleton(Draw& d, const RandomGrammarLimits& limits) {
  static const char* kNonterminals[] = {"S", "A", "B", "C", "D", "E", "F", "G"};
  static const char* kTerminals[] = {"a", "b", "c", "d"};
  static const char* kStack[] = {"ga", "gb", "gc", "gd"};
  LigGrammar g;
  const std::size_t n = d.between(1, std::min<std::size_t>(limits.nonterminals, 8));
  const std::size_t t = d.between(1, std::min<std::size_t>(limits.terminals, 4));
  const std::size_t k = d.between(1, std::min<std::size_t>(limits.stack_symbols, 4));
  for (std::size_t i = 0; i < n; ++i) g.nonterminals.emplace_back(kNonterminals[i]);
  for (std::size_t i = 0; i < t; ++i) g.terminals.emplace_back(kTerminals[i]);
  for (std::size_t i = 0; i < k; ++i) g.stack_symbols.emplace_back(kStack[i]);
  g.start = 0;
  return g;
}

void add(LigGrammar& g, LigProduction p) {
  p.id = static_cast<std::uint32_t>(g.productions.size());
  p.name = "r" + std::to_string(p.id + 1);
  g.productions.push_back(std::move(p));
}

LigProduction terminal_word(Draw& d, const LigGrammar& g, std::size_t max_len) {
  LigProduction p;
  p.lhs = d.below(g.nonterminals.size());
  const std::size_t len = d.chance(0.1) ? 0 : d.between(1, max_len);
  for (std::size_t i = 0; i < len; ++i) p.rhs.push_back(Constituent::terminal(d.below(g.terminals.size())));
  return p;
}

Constituent flank(Draw& d, const LigGrammar& g) {
  return d.chance(0.5) ? Constituent::terminal(d.below(g.terminals.size()))
                       : Constituent::secondary(d.below(g.nonterminals.size()));
}

}  // namespace

LigGrammar random_normal_grammar(std::uint64_t seed, const RandomGrammarLimits& limits) {
  Draw d(seed);
  LigGrammar g = skeleton(d, limits);
  const std::size_t m = d.between(1, std::max<std::size_t>(limits.productions, 1));
  add(g, terminal_word(d, g, 2));
  while (g.productions.size() < m) {
    const auto shape = d.below(4);  // word, copy, push, pop
    if (shape == 0) {
      add(g, terminal_word(d, g, 2));
      continue;
    }
    LigProduction p;
    p.lhs = d.below(g.nonterminals.size());
    p.lhs_inherits = true;
    Constituent primary = Constituent::primary(d.below(g.nonterminals.size()));
    if (shape == 2) primary.stack.push_back(d.below(g.stack_symbols.size()));
    if (shape == 3) p.lhs_pop.push_back(d.below(g.stack_symbols.size()));
    const auto side = d.below(3);  // none, left, right
    if (side == 1) p.rhs.push_back(flank(d, g));
    p.rhs.push_back(std::move(primary));
    if (side == 2) p.rhs.push_back(flank(d, g));
    add(g, std::move(p));
  }
  return parse_grammar(render_grammar(g));
}

LigGrammar random_relaxed_grammar(std::uint64_t seed, const RandomGrammarLimits& limits) {
  Draw d(seed);
  LigGrammar g = skeleton(d, limits);
  const std::size_t m = d.between(1, std::max<std::size_t>(limits.productions, 1));
  add(g, terminal_word(d, g, 3));
  while (g.productions.size() < m) {
    if (d.chance(0.25)) {
      add(g, terminal_word(d, g, 4));
      continue;
    }
    LigProduction p;
    p.lhs = d.below(g.nonterminals.size());
    p.lhs_inherits = true;
    for (std::size_t i = d.between(0, 2); i > 0; --i) p.lhs_pop.push_back(d.below(g.stack_symbols.size()));
    Constituent primary = Constituent::primary(d.below(g.nonterminals.size()));
    for (std::size_t i = d.between(0, 2); i > 0; --i) primary.stack.push_back(d.below(g.stack_symbols.size()));
    for (std::size_t i = d.between(0, 2); i > 0; --i) p.rhs.push_back(flank(d, g));
    p.rhs.push_back(std::move(primary));
    for (std::size_t i = d.between(0, 2); i > 0; --i) p.rhs.push_back(flank(d, g));
    add(g, std::move(p));
  }
  return parse_grammar(render_grammar(g), {true});
}

}  // namespace ligforge
