#pragma once

#include <optional>

#include "ligforge/derive.hpp"

namespace ligforge {

enum class Format : std::uint8_t { Text, Json, Dot };

/// Relation families over the nonterminals of `g`. JSON shape:
/// {"nonterminals": [...], "relations": [{"kind", "gamma"?, "pairs": [[a, b], ...]}]}
std::string render_relations(const LigGrammar& g, const RelationSet& r, Format format);

/// Forest as a CFG over [A]^q_p items; DOT draws one box per production.
std::string render_forest(const SharedForest& f, Format format);

/// Derivation grammar with the schema number (1..9) of every production.
std::string render_ldg(const Ldg& d, Format format);

std::string render_tree(const LigGrammar& g, const ParseTree& t, Format format);

struct RunReport {
  std::size_t nonterminals = 0;
  std::size_t terminals = 0;
  std::size_t stack_symbols = 0;
  std::size_t productions = 0;

  /// Pair counts of eq1, push1, pop1, eq+, spine, pop+ (γ-indexed families summed).
  std::array<std::size_t, 6> relation_sizes{};

  std::size_t forest_nonterminals = 0;
  std::size_t forest_productions = 0;

  std::size_t ldg_generated = 0;
  std::size_t ldg_productions = 0;
  std::size_t ldg_nonterminals = 0;
  std::array<std::size_t, 10> forms{};  // index 0 unused

  bool member = false;
  std::optional<DerivationCount> count;
  StageTimings timings;
};

RunReport make_report(const LigGrammar& lig, const Recognition& rec, std::optional<DerivationCount> count = {});

std::string report_json(const RunReport& r);
std::string report_text(const RunReport& r);

/// CSV produced by `ligforge bench`.
std::string bench_header();
std::string bench_row(std::size_t n, const RunReport& r);

}  // namespace ligforge
