#pragma once

#include <string_view>

#include "ligforge/grammar.hpp"

namespace ligforge {

class TokenError : public Error {
public:
  TokenError(std::size_t position, const std::string& token);
  std::size_t position() const { return position_; }

private:
  std::size_t position_;
};

/// Linear automaton for a token string a1..an: states 0..n, i ∈ δ(i-1, a_i).
struct Fsa {
  std::vector<std::uint32_t> tokens;

  std::size_t state_count() const { return tokens.size() + 1; }
  std::uint32_t initial() const { return 0; }
  std::uint32_t final_state() const { return static_cast<std::uint32_t>(tokens.size()); }
  bool accepts_step(std::uint32_t from, std::uint32_t terminal, std::uint32_t to) const {
    return to == from + 1 && from < tokens.size() && tokens[from] == terminal;
  }
};

Fsa build_fsa(std::vector<std::uint32_t> tokens);

/// Maps whitespace-separated tokens (or single characters when `chars` is
/// set) to terminal indices of `g`. Throws TokenError on unknown tokens.
std::vector<std::uint32_t> tokenize(const LigGrammar& g, std::string_view input, bool chars = false);

/// [A]^q_p: backbone nonterminal A spanning states p..q.
struct ForestNonterminal {
  std::uint32_t base = 0;
  std::uint32_t from = 0;
  std::uint32_t to = 0;

  friend bool operator==(const ForestNonterminal&, const ForestNonterminal&) = default;
};

/// Source production of a forest production and its state split: one state
/// per rhs boundary, so `states` has rhs.size() + 1 entries.
struct ForestProvenance {
  std::uint32_t source = 0;
  std::vector<std::uint32_t> states;

  friend bool operator==(const ForestProvenance&, const ForestProvenance&) = default;
};

struct SharedForest {
  CfGrammar grammar;
  std::vector<ForestNonterminal> items;      // indexed like grammar.nonterminals
  std::vector<ForestProvenance> provenance;  // indexed by production id
  std::vector<std::string> production_names;

  bool empty() const { return grammar.productions.empty(); }
};

struct LigedForest {
  LigGrammar grammar;
  std::vector<ForestNonterminal> items;
  std::vector<ForestProvenance> provenance;

  bool empty() const { return grammar.productions.empty(); }
};

std::string forest_nonterminal_name(const std::string& base, const ForestNonterminal& item);

/// Removes unproductive and unreachable symbols. Symbol tables are kept; only
/// productions are dropped, and surviving productions keep their ids.
CfGrammar reduce_cfg(const CfGrammar& g);

/// Intersection of `backbone` (rhs length <= 2) with the automaton, reduced.
/// Nonterminals are ordered start-first, then by (base, q descending, p
/// ascending); productions by (lhs, source id, split) and named
/// "<source>^<k>" with k their 1-based position.
SharedForest build_shared_forest(const CfGrammar& backbone, const Fsa& fsa,
                                 const std::vector<std::string>& backbone_names = {});

/// Re-attaches the stack schemas of `lig` to a forest of its backbone.
LigedForest build_liged_forest(const SharedForest& forest, const LigGrammar& lig);

}  // namespace ligforge
