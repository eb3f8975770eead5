#include "ligforge/forest.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <tuple>

namespace ligforge {

TokenError::TokenError(std::size_t position, const std::string& token)
    : Error("unknown token '" + token + "' at position " + std::to_string(position + 1)), position_(position) {}

Fsa build_fsa(std::vector<std::uint32_t> tokens) { return Fsa{std::move(tokens)}; }

std::vector<std::uint32_t> tokenize(const LigGrammar& g, std::string_view input, bool chars) {
  std::vector<std::string> words;
  if (chars) {
    for (char c : input) {
      if (!std::isspace(static_cast<unsigned char>(c))) words.emplace_back(1, c);
    }
  } else {
    std::size_t i = 0;
    while (i < input.size()) {
      while (i < input.size() && std::isspace(static_cast<unsigned char>(input[i]))) ++i;
      std::size_t j = i;
      while (j < input.size() && !std::isspace(static_cast<unsigned char>(input[j]))) ++j;
      if (j > i) words.emplace_back(input.substr(i, j - i));
      i = j;
    }
  }
  std::vector<std::uint32_t> out;
  out.reserve(words.size());
  for (std::size_t k = 0; k < words.size(); ++k) {
    auto t = g.find_terminal(words[k]);
    if (!t) throw TokenError(k, words[k]);
    out.push_back(*t);
  }
  return out;
}

std::string forest_nonterminal_name(const std::string& base, const ForestNonterminal& item) {
  return "[" + base + "]^" + std::to_string(item.to) + "_" + std::to_string(item.from);
}

CfGrammar reduce_cfg(const CfGrammar& g) {
  const std::size_t n = g.nonterminals.size();

  // Productivity: a production fires once all its rhs nonterminals are productive.
  std::vector<char> productive(n, 0);
  std::vector<std::size_t> missing(g.productions.size(), 0);
  std::vector<std::vector<std::size_t>> waiting(n);
  std::vector<std::uint32_t> work;
  for (std::size_t i = 0; i < g.productions.size(); ++i) {
    for (const auto& s : g.productions[i].rhs) {
      if (!s.terminal) {
        ++missing[i];
        waiting[s.index].push_back(i);
      }
    }
    if (missing[i] == 0 && !productive[g.productions[i].lhs]) {
      productive[g.productions[i].lhs] = 1;
      work.push_back(g.productions[i].lhs);
    }
  }
  while (!work.empty()) {
    const std::uint32_t x = work.back();
    work.pop_back();
    for (std::size_t i : waiting[x]) {
      if (--missing[i] == 0 && !productive[g.productions[i].lhs]) {
        productive[g.productions[i].lhs] = 1;
        work.push_back(g.productions[i].lhs);
      }
    }
  }

  auto usable = [&](const CfProduction& p) {
    return std::all_of(p.rhs.begin(), p.rhs.end(), [&](const Symbol& s) { return s.terminal || productive[s.index]; });
  };

  std::vector<std::vector<std::size_t>> by_lhs(n);
  for (std::size_t i = 0; i < g.productions.size(); ++i) {
    if (productive[g.productions[i].lhs] && usable(g.productions[i])) by_lhs[g.productions[i].lhs].push_back(i);
  }

  std::vector<char> reachable(n, 0);
  if (g.start < n && productive[g.start]) {
    reachable[g.start] = 1;
    work.push_back(g.start);
  }
  while (!work.empty()) {
    const std::uint32_t x = work.back();
    work.pop_back();
    for (std::size_t i : by_lhs[x]) {
      for (const auto& s : g.productions[i].rhs) {
        if (!s.terminal && !reachable[s.index]) {
          reachable[s.index] = 1;
          work.push_back(s.index);
        }
      }
    }
  }

  CfGrammar out;
  out.nonterminals = g.nonterminals;
  out.terminals = g.terminals;
  out.start = g.start;
  for (const auto& p : g.productions) {
    if (reachable[p.lhs] && productive[p.lhs] && usable(p)) out.productions.push_back(p);
  }
  return out;
}

namespace {

struct Instance {
  std::uint32_t source;
  std::uint32_t lhs;                 // chart item
  std::vector<Symbol> rhs;           // nonterminal symbols refer to chart items
  std::vector<std::uint32_t> states;
};

class Intersection {
public:
  Intersection(const CfGrammar& g, const Fsa& fsa)
      : g_(g), fsa_(fsa), n_(fsa.tokens.size()), index_(g.nonterminals.size() * (n_ + 1) * (n_ + 1), npos32) {
    for (const auto& p : g.productions) {
      if (p.rhs.size() > 2) throw NormalFormError("backbone production with more than two rhs symbols");
    }
  }

  std::vector<ForestNonterminal> items;
  std::vector<Instance> instances;

  void deduce() {
    by_child_.assign(g_.nonterminals.size(), {});
    for (const auto& p : g_.productions) {
      for (const auto& s : p.rhs) {
        if (!s.terminal) {
          auto& v = by_child_[s.index];
          if (v.empty() || v.back() != p.id) v.push_back(p.id);
        }
      }
    }
    starting_.assign(n_ + 1, {});
    ending_.assign(n_ + 1, {});

    for (const auto& p : g_.productions) {
      if (!all_terminal(p)) continue;
      for (std::uint32_t i = 0; i + p.rhs.size() <= n_; ++i) {
        if (matches(p.rhs, i)) add(p.lhs, i, i + static_cast<std::uint32_t>(p.rhs.size()));
      }
    }

    while (!work_.empty()) {
      const std::uint32_t it = work_.back();
      work_.pop_back();
      const ForestNonterminal x = items[it];
      for (std::uint32_t pid : by_child_[x.base]) {
        const auto& p = g_.productions[pid];
        if (p.rhs.size() == 1) {
          add(p.lhs, x.from, x.to);
          continue;
        }
        const Symbol& l = p.rhs[0];
        const Symbol& r = p.rhs[1];
        if (l.terminal) {
          if (x.from >= 1 && fsa_.tokens[x.from - 1] == l.index) add(p.lhs, x.from - 1, x.to);
          continue;
        }
        if (r.terminal) {
          if (x.to < n_ && fsa_.tokens[x.to] == r.index) add(p.lhs, x.from, x.to + 1);
          continue;
        }
        if (l.index == x.base) {
          // Copy: add() may grow the index lists while we iterate.
          const auto partners = starting_[x.to];
          for (std::uint32_t o : partners) {
            if (items[o].base == r.index) add(p.lhs, x.from, items[o].to);
          }
        }
        if (r.index == x.base) {
          const auto partners = ending_[x.from];
          for (std::uint32_t o : partners) {
            if (items[o].base == l.index) add(p.lhs, items[o].from, x.to);
          }
        }
      }
    }
  }

  void instantiate() {
    for (const auto& p : g_.productions) {
      const auto id = p.id;
      if (all_terminal(p)) {
        for (std::uint32_t i = 0; i + p.rhs.size() <= n_; ++i) {
          if (!matches(p.rhs, i)) continue;
          std::vector<std::uint32_t> states{i};
          for (std::uint32_t k = 1; k <= p.rhs.size(); ++k) states.push_back(i + k);
          emit(id, p.lhs, p.rhs, std::move(states));
        }
        continue;
      }
      if (p.rhs.size() == 1) {
        for (std::uint32_t it = 0; it < items.size(); ++it) {
          if (items[it].base == p.rhs[0].index) emit(id, p.lhs, {Symbol::nt(it)}, {items[it].from, items[it].to});
        }
        continue;
      }
      const Symbol& l = p.rhs[0];
      const Symbol& r = p.rhs[1];
      for (std::uint32_t it = 0; it < items.size(); ++it) {
        const auto x = items[it];
        if (l.terminal) {
          if (x.base == r.index && x.from >= 1 && fsa_.tokens[x.from - 1] == l.index) {
            emit(id, p.lhs, {l, Symbol::nt(it)}, {x.from - 1, x.from, x.to});
          }
        } else if (r.terminal) {
          if (x.base == l.index && x.to < n_ && fsa_.tokens[x.to] == r.index) {
            emit(id, p.lhs, {Symbol::nt(it), r}, {x.from, x.to, x.to + 1});
          }
        } else if (x.base == l.index) {
          for (std::uint32_t o : starting_[x.to]) {
            if (items[o].base == r.index) {
              emit(id, p.lhs, {Symbol::nt(it), Symbol::nt(o)}, {x.from, x.to, items[o].to});
            }
          }
        }
      }
    }
  }

  std::uint32_t find(std::uint32_t base, std::uint32_t from, std::uint32_t to) const {
    return index_[slot(base, from, to)];
  }

private:
  std::size_t slot(std::uint32_t base, std::uint32_t from, std::uint32_t to) const {
    return (static_cast<std::size_t>(base) * (n_ + 1) + from) * (n_ + 1) + to;
  }

  bool all_terminal(const CfProduction& p) const {
    return std::all_of(p.rhs.begin(), p.rhs.end(), [](const Symbol& s) { return s.terminal; });
  }

  bool matches(const std::vector<Symbol>& rhs, std::uint32_t at) const {
    for (std::size_t k = 0; k < rhs.size(); ++k) {
      if (fsa_.tokens[at + k] != rhs[k].index) return false;
    }
    return true;
  }

  void add(std::uint32_t base, std::uint32_t from, std::uint32_t to) {
    std::uint32_t& slot_ref = index_[slot(base, from, to)];
    if (slot_ref != npos32) return;
    slot_ref = static_cast<std::uint32_t>(items.size());
    items.push_back({base, from, to});
    starting_[from].push_back(slot_ref);
    ending_[to].push_back(slot_ref);
    work_.push_back(slot_ref);
  }

  void emit(std::uint32_t source, std::uint32_t base, std::vector<Symbol> rhs, std::vector<std::uint32_t> states) {
    const std::uint32_t lhs = find(base, states.front(), states.back());
    if (lhs == npos32) return;
    instances.push_back({source, lhs, std::move(rhs), std::move(states)});
  }

  const CfGrammar& g_;
  const Fsa& fsa_;
  std::size_t n_;
  std::vector<std::uint32_t> index_;
  std::vector<std::vector<std::uint32_t>> by_child_;
  std::vector<std::vector<std::uint32_t>> starting_;
  std::vector<std::vector<std::uint32_t>> ending_;
  std::vector<std::uint32_t> work_;
};

}  // namespace

SharedForest build_shared_forest(const CfGrammar& backbone, const Fsa& fsa,
                                 const std::vector<std::string>& backbone_names) {
  Intersection x(backbone, fsa);
  x.deduce();
  x.instantiate();

  const std::uint32_t n = fsa.final_state();
  const std::uint32_t start_item = x.find(backbone.start, 0, n);

  // Reduce over chart items, then renumber canonically.
  CfGrammar chart;
  chart.nonterminals.resize(std::max<std::size_t>(x.items.size(), 1));
  chart.terminals = backbone.terminals;
  chart.start = start_item == npos32 ? 0 : start_item;
  for (std::size_t i = 0; i < x.instances.size(); ++i) {
    chart.productions.push_back({static_cast<std::uint32_t>(i), x.instances[i].lhs, x.instances[i].rhs});
  }
  CfGrammar reduced = start_item == npos32 ? CfGrammar{} : reduce_cfg(chart);

  SharedForest f;
  f.grammar.terminals = backbone.terminals;
  f.grammar.start = 0;

  std::vector<std::uint32_t> used;
  {
    std::vector<char> seen(x.items.size(), 0);
    auto mark = [&](std::uint32_t i) {
      if (!seen[i]) {
        seen[i] = 1;
        used.push_back(i);
      }
    };
    if (start_item != npos32) mark(start_item);
    for (const auto& p : reduced.productions) {
      mark(p.lhs);
      for (const auto& s : p.rhs) {
        if (!s.terminal) mark(s.index);
      }
    }
  }
  auto item_key = [&](std::uint32_t i) {
    const auto& it = x.items[i];
    return std::make_tuple(i == start_item ? 0 : 1, it.base, -static_cast<std::int64_t>(it.to), it.from);
  };
  std::sort(used.begin(), used.end(), [&](auto a, auto b) { return item_key(a) < item_key(b); });

  std::vector<std::uint32_t> renumber(x.items.size(), npos32);
  for (std::uint32_t k = 0; k < used.size(); ++k) {
    renumber[used[k]] = k;
    f.items.push_back(x.items[used[k]]);
    f.grammar.nonterminals.push_back(forest_nonterminal_name(backbone.nonterminals[x.items[used[k]].base], x.items[used[k]]));
  }
  if (used.empty()) {
    ForestNonterminal s{backbone.start, 0, n};
    f.items.push_back(s);
    f.grammar.nonterminals.push_back(forest_nonterminal_name(backbone.nonterminals[backbone.start], s));
  }

  std::vector<std::uint32_t> order;
  for (const auto& p : reduced.productions) order.push_back(p.id);
  auto prod_key = [&](std::uint32_t i) {
    const auto& inst = x.instances[i];
    return std::make_tuple(renumber[inst.lhs], inst.source, inst.states);
  };
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return prod_key(a) < prod_key(b); });

  for (std::uint32_t k = 0; k < order.size(); ++k) {
    const auto& inst = x.instances[order[k]];
    CfProduction p{k, renumber[inst.lhs], inst.rhs};
    for (auto& s : p.rhs) {
      if (!s.terminal) s.index = renumber[s.index];
    }
    f.grammar.productions.push_back(std::move(p));
    f.provenance.push_back({inst.source, inst.states});
    const std::string base =
        inst.source < backbone_names.size() ? backbone_names[inst.source] : "r" + std::to_string(inst.source + 1);
    f.production_names.push_back(base + "^" + std::to_string(k + 1));
  }
  return f;
}

LigedForest build_liged_forest(const SharedForest& forest, const LigGrammar& lig) {
  LigedForest out;
  out.items = forest.items;
  out.provenance = forest.provenance;
  out.grammar.nonterminals = forest.grammar.nonterminals;
  out.grammar.terminals = lig.terminals;
  out.grammar.stack_symbols = lig.stack_symbols;
  out.grammar.start = forest.grammar.start;

  for (const auto& fp : forest.grammar.productions) {
    const LigProduction& src = lig.productions.at(forest.provenance[fp.id].source);
    if (src.rhs.size() != fp.rhs.size()) throw Error("forest production does not match its source production");
    LigProduction p = src;
    p.id = fp.id;
    p.name = fp.id < forest.production_names.size() ? forest.production_names[fp.id] : src.name;
    p.lhs = fp.lhs;
    for (std::size_t k = 0; k < p.rhs.size(); ++k) {
      if (p.rhs[k].kind != Constituent::Kind::Terminal) p.rhs[k].symbol = fp.rhs[k].index;
    }
    out.grammar.productions.push_back(std::move(p));
  }
  return out;
}

}  // namespace ligforge
