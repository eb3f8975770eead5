#pragma once

#include <cstdint>

#include "ligforge/grammar.hpp"

namespace ligforge {

struct RandomGrammarLimits {
  std::size_t nonterminals = 4;
  std::size_t stack_symbols = 2;
  std::size_t productions = 10;
  std::size_t terminals = 2;
};

/// Normal-form LIG drawn from a seeded generator; the same seed and limits
/// always give the same grammar. Every grammar has at least one terminal-word
/// production, so that a fair share of them is nonempty. Symbol tables are
/// ordered as parse_grammar would order them.
LigGrammar random_normal_grammar(std::uint64_t seed, const RandomGrammarLimits& limits = {});

/// Like random_normal_grammar, but productions may push or pop several
/// symbols, carry several flanks and long terminal words.
LigGrammar random_relaxed_grammar(std::uint64_t seed, const RandomGrammarLimits& limits = {});

}  // namespace ligforge
