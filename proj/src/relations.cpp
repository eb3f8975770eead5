#include "ligforge/relations.hpp"

namespace ligforge {

bool has_gamma(RelationKind kind) {
  return kind == RelationKind::Push1 || kind == RelationKind::Pop1 || kind == RelationKind::PopPlus;
}

std::string_view to_string(RelationKind kind) {
  switch (kind) {
    case RelationKind::Eq1: return "eq1";
    case RelationKind::Push1: return "push1";
    case RelationKind::Pop1: return "pop1";
    case RelationKind::EqPlus: return "eq+";
    case RelationKind::Spine: return "spine";
    case RelationKind::PopPlus: return "pop+";
  }
  return "?";
}

const BitMatrix& RelationSet::family(RelationKind kind, std::uint32_t gamma) const {
  switch (kind) {
    case RelationKind::Eq1: return eq1;
    case RelationKind::Push1: return push1.at(gamma);
    case RelationKind::Pop1: return pop1.at(gamma);
    case RelationKind::EqPlus: return eq_plus;
    case RelationKind::Spine: return spine;
    case RelationKind::PopPlus: return pop_plus.at(gamma);
  }
  return eq1;
}

bool RelationSet::holds(RelationKind kind, std::uint32_t gamma, std::uint32_t a, std::uint32_t b) const {
  const BitMatrix& m = family(kind, gamma);
  return a < m.size() && b < m.size() && m.test(a, b);
}

RelationSet level1(const LigGrammar& g) {
  RelationSet r;
  const std::size_t n = g.nonterminals.size();
  r.universe = n;
  r.stack_symbols = g.stack_symbols.size();
  r.eq1 = BitMatrix(n);
  r.push1.assign(r.stack_symbols, BitMatrix(n));
  r.pop1.assign(r.stack_symbols, BitMatrix(n));
  r.eq_plus = BitMatrix(n);
  r.spine = BitMatrix(n);
  r.pop_plus.assign(r.stack_symbols, BitMatrix(n));

  for (const auto& p : normal_view(g)) {
    if (p.terminal_word) continue;
    if (p.lhs_schema.op == SchemaOp::Pop) {
      r.pop1[p.lhs_schema.symbol].set(p.lhs, p.primary);
    } else if (p.primary_schema.op == SchemaOp::Push) {
      r.push1[p.primary_schema.symbol].set(p.lhs, p.primary);
    } else {
      r.eq1.set(p.lhs, p.primary);
    }
  }
  return r;
}

namespace {

struct Pending {
  RelationKind kind;
  std::uint32_t gamma;
  std::uint32_t a;
  std::uint32_t b;
};

}  // namespace

RelationSet closure(RelationSet r, const PairFilter& filter) {
  const std::size_t n = r.universe;
  const std::size_t gammas = r.stack_symbols;

  r.eq_plus = BitMatrix(n);
  r.spine = BitMatrix(n);
  r.pop_plus.assign(gammas, BitMatrix(n));
  r.processed_eq_plus = r.processed_spine = r.processed_pop_plus = 0;

  const BitMatrix eq1_t = r.eq1.transposed();
  std::vector<BitMatrix> push1_t;
  push1_t.reserve(gammas);
  for (const auto& m : r.push1) push1_t.push_back(m.transposed());
  BitMatrix spine_t(n);

  std::vector<Pending> work;
  auto insert = [&](RelationKind kind, std::uint32_t gamma, std::uint32_t a, std::uint32_t b) {
    if (filter && filter(kind, gamma, a, b)) return;
    bool fresh = false;
    switch (kind) {
      case RelationKind::EqPlus: fresh = r.eq_plus.set(a, b); break;
      case RelationKind::Spine:
        fresh = r.spine.set(a, b);
        if (fresh) spine_t.set(b, a);
        break;
      case RelationKind::PopPlus: fresh = r.pop_plus[gamma].set(a, b); break;
      default: break;
    }
    if (fresh) work.push_back({kind, gamma, a, b});
  };

  for (auto [a, b] : r.eq1.pairs()) insert(RelationKind::EqPlus, 0, a, b);
  for (std::uint32_t g = 0; g < gammas; ++g) {
    for (auto [a, b] : r.pop1[g].pairs()) insert(RelationKind::PopPlus, g, a, b);
  }

  while (!work.empty()) {
    const Pending item = work.back();
    work.pop_back();
    switch (item.kind) {
      case RelationKind::EqPlus: {
        ++r.processed_eq_plus;
        // EqPlus·Pop1(γ) ⊆ PopPlus(γ)
        for (std::uint32_t g = 0; g < gammas; ++g) {
          r.pop1[g].for_each_in_row(item.b, [&](std::uint32_t c) { insert(RelationKind::PopPlus, g, item.a, c); });
        }
        // Eq1·EqPlus ⊆ EqPlus and Spine·EqPlus ⊆ EqPlus
        eq1_t.for_each_in_row(item.a, [&](std::uint32_t x) { insert(RelationKind::EqPlus, 0, x, item.b); });
        spine_t.for_each_in_row(item.a, [&](std::uint32_t x) { insert(RelationKind::EqPlus, 0, x, item.b); });
        break;
      }
      case RelationKind::PopPlus: {
        ++r.processed_pop_plus;
        push1_t[item.gamma].for_each_in_row(item.a, [&](std::uint32_t x) { insert(RelationKind::Spine, 0, x, item.b); });
        break;
      }
      case RelationKind::Spine: {
        ++r.processed_spine;
        insert(RelationKind::EqPlus, 0, item.a, item.b);
        r.eq_plus.for_each_in_row(item.b, [&](std::uint32_t c) { insert(RelationKind::EqPlus, 0, item.a, c); });
        break;
      }
      default: break;
    }
  }

  r.closed = true;
  return r;
}

bool satisfies_fixpoint_identity(const RelationSet& r) {
  BitMatrix spine(r.universe);
  for (std::size_t g = 0; g < r.stack_symbols; ++g) {
    BitMatrix pop_plus = unite(r.pop1[g], compose(r.eq_plus, r.pop1[g]));
    if (!(pop_plus == r.pop_plus[g])) return false;
    spine.merge(compose(r.push1[g], r.pop_plus[g]));
  }
  if (!(spine == r.spine)) return false;

  BitMatrix eq_plus = unite(r.eq1, r.spine);
  eq_plus.merge(compose(r.eq1, r.eq_plus));
  eq_plus.merge(compose(r.spine, r.eq_plus));
  return eq_plus == r.eq_plus;
}

}  // namespace ligforge
