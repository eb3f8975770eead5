#pragma once

#include <set>

#include "ligforge/derive.hpp"

namespace ligforge {

/// Both bounds are inclusive: trees have at most `max_nodes` nodes and no
/// object carries more than `max_stack` stack symbols.
struct OracleConfig {
  std::size_t max_nodes = 0;
  std::size_t max_stack = 0;
};

/// Every tree of `lig` (normal form or relaxed) whose yield is `tokens` and
/// which fits `cfg`, ordered by linearized derivation (shortest first).
/// Complete within the bound, and only within it.
std::vector<ParseTree> enumerate_trees(const LigGrammar& lig, std::span<const std::uint32_t> tokens,
                                       const OracleConfig& cfg);

/// Reverse of the linear application order: node production, then the
/// secondary subtrees left to right, then the distinguished subtree.
Derivation linearize(const ParseTree& t);

std::set<Derivation> oracle_language(const LigGrammar& lig, std::span<const std::uint32_t> tokens,
                                     const OracleConfig& cfg);

}  // namespace ligforge
