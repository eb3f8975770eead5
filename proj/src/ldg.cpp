#include "ligforge/ldg.hpp"

#include <chrono>
#include <map>

namespace ligforge {

std::array<std::size_t, 10> Ldg::form_counts() const {
  std::array<std::size_t, 10> counts{};
  for (const auto& p : grammar.productions) ++counts[static_cast<std::size_t>(form(p))];
  return counts;
}

std::string ldg_nonterminal_name(const LigGrammar& lig, const LdgNonterminal& x) {
  if (!x.pair) return "[" + lig.nonterminals[x.a] + "]";
  std::string rel(to_string(x.kind));
  if (has_gamma(x.kind)) rel += "(" + lig.stack_symbols[x.gamma] + ")";
  return "[" + lig.nonterminals[x.a] + " " + rel + " " + lig.nonterminals[x.b] + "]";
}

namespace {

class Generator {
public:
  Generator(const LigGrammar& lig, const RelationSet& rels, const PairFilter& skip)
      : lig_(lig), rels_(rels), skip_(skip), productions_(normal_view(lig)) {
    const std::size_t n = lig.nonterminals.size();
    terminal_by_lhs_.resize(n);
    copy_by_lhs_.resize(n);
    push_by_lhs_.resize(n);
    pop_by_lhs_.resize(n);
    for (const auto& p : productions_) {
      if (p.terminal_word) {
        terminal_by_lhs_[p.lhs].push_back(p.id);
      } else if (p.lhs_schema.op == SchemaOp::Pop) {
        pop_by_lhs_[p.lhs].push_back(p.id);
        pop_by_primary_[{p.lhs_schema.symbol, p.primary}].push_back(p.id);
      } else if (p.primary_schema.op == SchemaOp::Push) {
        push_by_lhs_[p.lhs].push_back(p.id);
      } else {
        copy_by_lhs_[p.lhs].push_back(p.id);
      }
    }
    d_.grammar.terminals.reserve(lig.productions.size());
    for (const auto& p : lig.productions) d_.grammar.terminals.push_back(p.name);
  }

  Ldg run() {
    d_.grammar.start = plain(lig_.start);
    for (std::size_t next = 0; next < d_.symbols.size(); ++next) expand(static_cast<std::uint32_t>(next));
    return std::move(d_);
  }

private:
  using Key = std::tuple<bool, std::uint32_t, RelationKind, std::uint32_t, std::uint32_t>;

  std::uint32_t intern(const LdgNonterminal& x) {
    Key key{x.pair, x.a, x.kind, x.gamma, x.b};
    auto [it, fresh] = index_.try_emplace(key, static_cast<std::uint32_t>(d_.symbols.size()));
    if (fresh) {
      d_.symbols.push_back(x);
      d_.grammar.nonterminals.push_back(ldg_nonterminal_name(lig_, x));
    }
    return it->second;
  }

  std::uint32_t plain(std::uint32_t a) { return intern({false, a, RelationKind::EqPlus, 0, a}); }

  bool valid(RelationKind kind, std::uint32_t gamma, std::uint32_t a, std::uint32_t b) const {
    if (!rels_.holds(kind, gamma, a, b)) return false;
    return !(skip_ && skip_(kind, gamma, a, b));
  }

  Symbol pair(RelationKind kind, std::uint32_t gamma, std::uint32_t a, std::uint32_t b) {
    return Symbol::nt(intern({true, a, kind, kind == RelationKind::PopPlus ? gamma : 0, b}));
  }

  void add(std::uint32_t lhs, std::vector<Symbol> rhs, int form) {
    d_.grammar.productions.push_back({static_cast<std::uint32_t>(d_.grammar.productions.size()), lhs, std::move(rhs)});
    d_.forms.push_back(form);
  }

  // Appends [Γ1Γ2]: [X] for a secondary flank X(), nothing otherwise.
  void flank(std::vector<Symbol>& rhs, const NormalProduction& p) {
    if (p.flank && p.flank->secondary) rhs.push_back(Symbol::nt(plain(p.flank->symbol)));
  }

  void expand(std::uint32_t sym) {
    const LdgNonterminal x = d_.symbols[sym];
    if (!x.pair) {
      const std::uint32_t a = x.a;
      for (auto r : terminal_by_lhs_[a]) add(sym, {Symbol::t(r)}, 1);
      rels_.eq_plus.for_each_in_row(a, [&](std::uint32_t b) {
        if (!valid(RelationKind::EqPlus, 0, a, b)) return;
        for (auto r : terminal_by_lhs_[b]) add(sym, {Symbol::t(r), pair(RelationKind::EqPlus, 0, a, b)}, 2);
      });
      return;
    }

    const std::uint32_t a = x.a;
    const std::uint32_t c = x.b;
    switch (x.kind) {
      case RelationKind::EqPlus: {
        for (auto r : copy_by_lhs_[a]) {
          const auto& p = productions_[r];
          if (p.primary == c) {
            std::vector<Symbol> rhs;
            flank(rhs, p);
            rhs.push_back(Symbol::t(r));
            add(sym, std::move(rhs), 3);
          }
        }
        if (valid(RelationKind::Spine, 0, a, c)) add(sym, {pair(RelationKind::Spine, 0, a, c)}, 4);
        for (auto r : copy_by_lhs_[a]) {
          const auto& p = productions_[r];
          if (!valid(RelationKind::EqPlus, 0, p.primary, c)) continue;
          std::vector<Symbol> rhs{pair(RelationKind::EqPlus, 0, p.primary, c)};
          flank(rhs, p);
          rhs.push_back(Symbol::t(r));
          add(sym, std::move(rhs), 5);
        }
        rels_.spine.for_each_in_row(a, [&](std::uint32_t b) {
          if (valid(RelationKind::Spine, 0, a, b) && valid(RelationKind::EqPlus, 0, b, c)) {
            add(sym, {pair(RelationKind::EqPlus, 0, b, c), pair(RelationKind::Spine, 0, a, b)}, 6);
          }
        });
        break;
      }
      case RelationKind::Spine: {
        for (auto r : push_by_lhs_[a]) {
          const auto& p = productions_[r];
          const std::uint32_t g = p.primary_schema.symbol;
          if (!valid(RelationKind::PopPlus, g, p.primary, c)) continue;
          std::vector<Symbol> rhs{pair(RelationKind::PopPlus, g, p.primary, c)};
          flank(rhs, p);
          rhs.push_back(Symbol::t(r));
          add(sym, std::move(rhs), 7);
        }
        break;
      }
      case RelationKind::PopPlus: {
        const std::uint32_t g = x.gamma;
        for (auto r : pop_by_lhs_[a]) {
          const auto& p = productions_[r];
          if (p.lhs_schema.symbol != g || p.primary != c) continue;
          std::vector<Symbol> rhs;
          flank(rhs, p);
          rhs.push_back(Symbol::t(r));
          add(sym, std::move(rhs), 8);
        }
        auto it = pop_by_primary_.find({g, c});
        if (it != pop_by_primary_.end()) {
          for (auto r : it->second) {
            const auto& p = productions_[r];
            if (!valid(RelationKind::EqPlus, 0, a, p.lhs)) continue;
            std::vector<Symbol> rhs;
            flank(rhs, p);
            rhs.push_back(Symbol::t(r));
            rhs.push_back(pair(RelationKind::EqPlus, 0, a, p.lhs));
            add(sym, std::move(rhs), 9);
          }
        }
        break;
      }
      default: break;
    }
  }

  const LigGrammar& lig_;
  const RelationSet& rels_;
  const PairFilter& skip_;
  std::vector<NormalProduction> productions_;
  std::vector<std::vector<std::uint32_t>> terminal_by_lhs_;
  std::vector<std::vector<std::uint32_t>> copy_by_lhs_;
  std::vector<std::vector<std::uint32_t>> push_by_lhs_;
  std::vector<std::vector<std::uint32_t>> pop_by_lhs_;
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::vector<std::uint32_t>> pop_by_primary_;
  std::map<Key, std::uint32_t> index_;
  Ldg d_;
};

double elapsed_ms(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - since).count();
}

}  // namespace

Ldg build_ldg(const LigGrammar& lig, const RelationSet& rels, const PairFilter& skip) {
  return Generator(lig, rels, skip).run();
}

Ldg reduce_ldg(const Ldg& d) {
  Ldg out;
  out.grammar = reduce_cfg(d.grammar);
  out.symbols = d.symbols;
  out.forms = d.forms;
  return out;
}

bool lig_emptiness(const LigGrammar& lig) {
  return reduce_ldg(build_ldg(lig, compute_relations(lig))).empty();
}

StaticFilter static_filter(const LigGrammar& lig) {
  const RelationSet rels = compute_relations(lig);
  const Ldg reduced = reduce_ldg(build_ldg(lig, rels));

  std::set<std::uint32_t> useful;
  for (const auto& p : reduced.grammar.productions) {
    useful.insert(p.lhs);
    for (const auto& s : p.rhs) {
      if (!s.terminal) useful.insert(s.index);
    }
  }
  std::set<std::tuple<RelationKind, std::uint32_t, std::uint32_t, std::uint32_t>> used;
  for (auto i : useful) {
    const auto& x = reduced.symbols[i];
    if (x.pair) used.insert({x.kind, x.gamma, x.a, x.b});
  }

  StaticFilter f;
  auto collect = [&](RelationKind kind, std::uint32_t gamma, const BitMatrix& m) {
    for (auto [a, b] : m.pairs()) {
      if (!used.count({kind, gamma, a, b})) f.useless.insert({kind, gamma, a, b});
    }
  };
  collect(RelationKind::EqPlus, 0, rels.eq_plus);
  collect(RelationKind::Spine, 0, rels.spine);
  for (std::uint32_t g = 0; g < rels.stack_symbols; ++g) collect(RelationKind::PopPlus, g, rels.pop_plus[g]);
  return f;
}

Recognition recognize(const LigGrammar& lig, std::vector<std::uint32_t> tokens, const RecognizeOptions& options) {
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (tokens[i] >= lig.terminals.size()) throw TokenError(i, "#" + std::to_string(tokens[i]));
  }

  Recognition out;
  auto t0 = std::chrono::steady_clock::now();
  const CfGrammar backbone = cf_backbone(lig);
  std::vector<std::string> names;
  for (const auto& p : lig.productions) names.push_back(p.name);
  out.timings.backbone_ms = elapsed_ms(t0);

  t0 = std::chrono::steady_clock::now();
  out.fsa = build_fsa(std::move(tokens));
  out.forest = build_shared_forest(backbone, out.fsa, names);
  out.timings.forest_ms = elapsed_ms(t0);

  t0 = std::chrono::steady_clock::now();
  out.liged = build_liged_forest(out.forest, lig);
  out.timings.liged_ms = elapsed_ms(t0);

  PairFilter skip;
  if (options.filter != nullptr && !options.filter->useless.empty()) {
    const StaticFilter* filter = options.filter;
    const auto* items = &out.liged.items;
    skip = [filter, items](RelationKind kind, std::uint32_t gamma, std::uint32_t a, std::uint32_t b) {
      return filter->blocks(kind, gamma, (*items)[a].base, (*items)[b].base);
    };
  }

  t0 = std::chrono::steady_clock::now();
  out.relations = compute_relations(out.liged.grammar, skip);
  out.timings.relations_ms = elapsed_ms(t0);

  t0 = std::chrono::steady_clock::now();
  out.generated = build_ldg(out.liged.grammar, out.relations, skip);
  out.timings.ldg_ms = elapsed_ms(t0);

  t0 = std::chrono::steady_clock::now();
  out.reduced = reduce_ldg(out.generated);
  out.timings.reduce_ms = elapsed_ms(t0);

  out.member = !out.reduced.empty();
  return out;
}

}  // namespace ligforge
