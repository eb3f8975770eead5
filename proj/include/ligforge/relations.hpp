#pragma once

#include <functional>
#include <string>
#include <string_view>

#include "ligforge/bitmatrix.hpp"
#include "ligforge/grammar.hpp"

namespace ligforge {

/// Eq1, Push1, Pop1 are read off single productions; EqPlus, Spine, PopPlus
/// are their closures along spines.
enum class RelationKind : std::uint8_t { Eq1, Push1, Pop1, EqPlus, Spine, PopPlus };

bool has_gamma(RelationKind kind);
std::string_view to_string(RelationKind kind);

struct RelationSet {
  std::size_t universe = 0;
  std::size_t stack_symbols = 0;

  BitMatrix eq1;
  std::vector<BitMatrix> push1;  // indexed by stack symbol
  std::vector<BitMatrix> pop1;

  BitMatrix eq_plus;
  BitMatrix spine;
  std::vector<BitMatrix> pop_plus;

  bool closed = false;
  /// Pairs taken off the closure worklist, per family (EqPlus, Spine, PopPlus summed over γ).
  std::size_t processed_eq_plus = 0;
  std::size_t processed_spine = 0;
  std::size_t processed_pop_plus = 0;

  const BitMatrix& family(RelationKind kind, std::uint32_t gamma = 0) const;
  bool holds(RelationKind kind, std::uint32_t gamma, std::uint32_t a, std::uint32_t b) const;
};

/// Returns true when (a kind[gamma] b) must not be added during closure.
using PairFilter = std::function<bool(RelationKind kind, std::uint32_t gamma, std::uint32_t a, std::uint32_t b)>;

RelationSet level1(const LigGrammar& g);

/// Least EqPlus, Spine and PopPlus families satisfying
///   PopPlus(γ) = Pop1(γ) ∪ EqPlus·Pop1(γ)
///   Spine      = ∪γ Push1(γ)·PopPlus(γ)
///   EqPlus     = Eq1 ∪ Spine ∪ Eq1·EqPlus ∪ Spine·EqPlus
/// computed by a worklist in which each inserted pair is processed once.
/// Pairs rejected by `filter` are never inserted.
RelationSet closure(RelationSet r, const PairFilter& filter = {});

inline RelationSet compute_relations(const LigGrammar& g, const PairFilter& filter = {}) {
  return closure(level1(g), filter);
}

/// Evaluates the three defining equations on the stored closure families by
/// direct matrix composition and reports whether both sides agree.
bool satisfies_fixpoint_identity(const RelationSet& r);

}  // namespace ligforge
