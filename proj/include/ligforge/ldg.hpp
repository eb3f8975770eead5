#pragma once

#include <array>
#include <set>
#include <tuple>

#include "ligforge/forest.hpp"
#include "ligforge/relations.hpp"

namespace ligforge {

/// [A] (plain) or [A ρ B] with ρ one of EqPlus, Spine, PopPlus(γ).
struct LdgNonterminal {
  bool pair = false;
  std::uint32_t a = 0;
  RelationKind kind = RelationKind::EqPlus;
  std::uint32_t gamma = 0;
  std::uint32_t b = 0;

  friend bool operator==(const LdgNonterminal&, const LdgNonterminal&) = default;
};

/// Linear derivation grammar. Its terminals are the production ids of the
/// LIG it was built from; `forms[id]` is the production schema number 1..9.
struct Ldg {
  CfGrammar grammar;
  std::vector<LdgNonterminal> symbols;
  std::vector<int> forms;

  bool empty() const { return grammar.productions.empty(); }
  int form(const CfProduction& p) const { return forms.at(p.id); }
  std::array<std::size_t, 10> form_counts() const;
};

std::string ldg_nonterminal_name(const LigGrammar& lig, const LdgNonterminal& x);

/// Top-down generation: only [S] and symbols occurring in an already
/// generated right-hand side get productions. Pair nonterminals are created
/// only when their relation holds in `rels` and `skip` does not reject them.
Ldg build_ldg(const LigGrammar& lig, const RelationSet& rels, const PairFilter& skip = {});

Ldg reduce_ldg(const Ldg& d);

/// True iff the language of `lig` is empty.
bool lig_emptiness(const LigGrammar& lig);

/// Pair patterns (A ρ B) over the initial grammar whose LDG nonterminal is
/// useless; every forest-level [[A]^j_i ρ [B]^l_k] over them is useless too.
struct StaticFilter {
  std::set<std::tuple<RelationKind, std::uint32_t, std::uint32_t, std::uint32_t>> useless;

  bool blocks(RelationKind kind, std::uint32_t gamma, std::uint32_t a, std::uint32_t b) const {
    if (kind != RelationKind::PopPlus) gamma = 0;
    return useless.count({kind, gamma, a, b}) != 0;
  }
};

StaticFilter static_filter(const LigGrammar& lig);

struct RecognizeOptions {
  /// Precomputed static_filter of the same grammar; null disables filtering.
  const StaticFilter* filter = nullptr;
};

struct StageTimings {
  double backbone_ms = 0;
  double forest_ms = 0;
  double liged_ms = 0;
  double relations_ms = 0;
  double ldg_ms = 0;
  double reduce_ms = 0;
};

struct Recognition {
  Fsa fsa;
  SharedForest forest;
  LigedForest liged;
  RelationSet relations;
  Ldg generated;
  Ldg reduced;
  bool member = false;
  StageTimings timings;
};

/// backbone -> shared forest -> LIGed forest -> relations -> LDG -> reduced LDG.
/// `reduced` is the derivation grammar of the LIGed forest; its terminals are
/// forest production ids (see LigedForest::provenance).
Recognition recognize(const LigGrammar& lig, std::vector<std::uint32_t> tokens, const RecognizeOptions& options = {});

}  // namespace ligforge
