#pragma once

#include "ligforge/random_grammar.hpp"

namespace ligforge {

struct FuzzConfig {
  bool relaxed = false;
  std::size_t max_input = 4;
  /// Derivation-length bound shared by the oracle (nodes and stack depth)
  /// and the LDG enumeration.
  std::size_t bound = 8;
  RandomGrammarLimits limits;
};

struct FuzzOutcome {
  std::uint64_t seed = 0;
  LigGrammar grammar;
  std::size_t inputs = 0;
  std::size_t members = 0;
  std::size_t derivations = 0;
  /// Empty when every check passed.
  std::vector<std::string> failures;
};

/// Draws the grammar for `seed` and, for every input over its terminals up
/// to `max_input` tokens, compares the bounded oracle language with the
/// bounded LDG enumeration, replays every derivation and checks the
/// closure equations.
FuzzOutcome fuzz_one(std::uint64_t seed, const FuzzConfig& cfg = {});

}  // namespace ligforge
