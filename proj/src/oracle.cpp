#include "ligforge/oracle.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <memory>

namespace ligforge {

namespace {

constexpr std::size_t kNever = std::numeric_limits<std::size_t>::max() / 4;

struct Subtree {
  std::uint32_t production = 0;
  std::uint32_t nonterminal = 0;
  std::vector<std::uint32_t> stack;  // bottom to top
  struct Child {
    bool terminal = false;
    std::uint32_t token = 0;
    std::shared_ptr<const Subtree> node;
  };
  std::vector<Child> children;
  std::int32_t primary = -1;
  std::size_t size = 1;
};

using Trees = std::vector<std::shared_ptr<const Subtree>>;

class Search {
public:
  Search(const LigGrammar& g, std::span<const std::uint32_t> tokens, const OracleConfig& cfg)
      : g_(g), tokens_(tokens), cfg_(cfg), by_lhs_(g.nonterminals.size()) {
    for (const auto& p : g.productions) by_lhs_[p.lhs].push_back(p.id);
    backbone_minima();
  }

  Trees run() {
    if (g_.nonterminals.empty()) return {};
    return solve(g_.start, {}, 0, tokens_.size(), cfg_.max_nodes);
  }

private:
  // Least yield length and least node count of each nonterminal, stacks erased.
  void backbone_minima() {
    const std::size_t n = g_.nonterminals.size();
    min_yield_.assign(n, kNever);
    min_nodes_.assign(n, kNever);
    for (bool changed = true; changed;) {
      changed = false;
      for (const auto& p : g_.productions) {
        std::size_t y = 0;
        std::size_t nodes = 1;
        for (const auto& c : p.rhs) {
          if (c.kind == Constituent::Kind::Terminal) {
            ++y;
          } else {
            y += min_yield_[c.symbol];
            nodes += min_nodes_[c.symbol];
          }
        }
        y = std::min(y, kNever);
        nodes = std::min(nodes, kNever);
        if (y < min_yield_[p.lhs]) {
          min_yield_[p.lhs] = y;
          changed = true;
        }
        if (nodes < min_nodes_[p.lhs]) {
          min_nodes_[p.lhs] = nodes;
          changed = true;
        }
      }
    }
  }

  using Key = std::tuple<std::uint32_t, std::vector<std::uint32_t>, std::size_t, std::size_t, std::size_t>;

  // All trees rooted at A(stack) deriving tokens[i, j) with at most `budget` nodes.
  const Trees& solve(std::uint32_t a, const std::vector<std::uint32_t>& stack, std::size_t i, std::size_t j,
                     std::size_t budget) {
    Key key{a, stack, i, j, budget};
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    Trees out;
    if (budget >= min_nodes_[a] && j - i >= min_yield_[a] && stack.size() <= cfg_.max_stack) {
      for (auto r : by_lhs_[a]) apply(g_.productions[r], stack, i, j, budget, out);
    }
    return memo_.emplace(std::move(key), std::move(out)).first->second;
  }

  void apply(const LigProduction& p, const std::vector<std::uint32_t>& stack, std::size_t i, std::size_t j,
             std::size_t budget, Trees& out) {
    std::vector<std::uint32_t> inherited;
    if (p.lhs_inherits) {
      if (p.lhs_pop.size() > stack.size()) return;
      if (!std::equal(p.lhs_pop.begin(), p.lhs_pop.end(), stack.end() - static_cast<std::ptrdiff_t>(p.lhs_pop.size())))
        return;
      inherited.assign(stack.begin(), stack.end() - static_cast<std::ptrdiff_t>(p.lhs_pop.size()));
    } else if (!stack.empty()) {
      return;
    }

    // Stacks handed to each nonterminal constituent.
    std::vector<std::vector<std::uint32_t>> stacks(p.rhs.size());
    std::vector<std::size_t> rest_yield(p.rhs.size() + 1, 0);
    std::vector<std::size_t> rest_nodes(p.rhs.size() + 1, 0);
    for (std::size_t k = p.rhs.size(); k-- > 0;) {
      const auto& c = p.rhs[k];
      if (c.kind == Constituent::Kind::Terminal) {
        rest_yield[k] = rest_yield[k + 1] + 1;
        rest_nodes[k] = rest_nodes[k + 1];
        continue;
      }
      if (c.kind == Constituent::Kind::Primary) {
        stacks[k] = inherited;
        stacks[k].insert(stacks[k].end(), c.stack.begin(), c.stack.end());
        if (stacks[k].size() > cfg_.max_stack) return;
      } else {
        stacks[k] = c.stack;
      }
      rest_yield[k] = std::min(rest_yield[k + 1] + min_yield_[c.symbol], kNever);
      rest_nodes[k] = std::min(rest_nodes[k + 1] + min_nodes_[c.symbol], kNever);
    }
    if (rest_yield[0] > j - i || rest_nodes[0] + 1 > budget) return;

    std::vector<Subtree::Child> children(p.rhs.size());
    auto place = [&](auto&& self, std::size_t k, std::size_t pos, std::size_t left) -> void {
      if (k == p.rhs.size()) {
        if (pos != j) return;
        auto node = std::make_shared<Subtree>();
        node->production = p.id;
        node->nonterminal = p.lhs;
        node->stack = stack;
        node->children = children;
        node->size = budget - left;
        if (auto pi = p.primary_index()) node->primary = static_cast<std::int32_t>(*pi);
        out.push_back(std::move(node));
        return;
      }
      const auto& c = p.rhs[k];
      if (c.kind == Constituent::Kind::Terminal) {
        if (pos < j && tokens_[pos] == c.symbol) {
          children[k] = {true, c.symbol, nullptr};
          self(self, k + 1, pos + 1, left);
        }
        return;
      }
      const std::size_t later_yield = rest_yield[k + 1];
      const std::size_t later_nodes = rest_nodes[k + 1];
      if (later_nodes > left) return;
      for (std::size_t end = pos + min_yield_[c.symbol]; end + later_yield <= j; ++end) {
        const Trees& subs = solve(c.symbol, stacks[k], pos, end, left - later_nodes);
        for (const auto& s : subs) {
          children[k] = {false, 0, s};
          self(self, k + 1, end, left - s->size);
        }
      }
    };
    place(place, 0, i, budget - 1);
  }

  const LigGrammar& g_;
  std::span<const std::uint32_t> tokens_;
  OracleConfig cfg_;
  std::vector<std::vector<std::uint32_t>> by_lhs_;
  std::vector<std::size_t> min_yield_;
  std::vector<std::size_t> min_nodes_;
  std::map<Key, Trees> memo_;
};

std::uint32_t chain(ParseTree& t, const std::vector<std::uint32_t>& stack) {
  std::uint32_t top = npos32;
  for (auto sym : stack) {
    t.cells.push_back({sym, top});
    top = static_cast<std::uint32_t>(t.cells.size() - 1);
  }
  return top;
}

std::uint32_t flatten(ParseTree& t, const Subtree& s) {
  const auto index = static_cast<std::uint32_t>(t.nodes.size());
  t.nodes.push_back({s.nonterminal, chain(t, s.stack), s.production, {}, s.primary});
  std::vector<ParseTree::Child> children;
  for (const auto& c : s.children) {
    children.push_back(c.terminal ? ParseTree::Child{true, c.token} : ParseTree::Child{false, flatten(t, *c.node)});
  }
  t.nodes[index].children = std::move(children);
  return index;
}

}  // namespace

std::vector<ParseTree> enumerate_trees(const LigGrammar& lig, std::span<const std::uint32_t> tokens,
                                       const OracleConfig& cfg) {
  std::vector<ParseTree> out;
  for (const auto& s : Search(lig, tokens, cfg).run()) {
    ParseTree t;
    flatten(t, *s);
    out.push_back(std::move(t));
  }
  std::vector<std::pair<Derivation, std::size_t>> order;
  for (std::size_t i = 0; i < out.size(); ++i) order.emplace_back(linearize(out[i]), i);
  std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
    return a.first.size() != b.first.size() ? a.first.size() < b.first.size() : a.first < b.first;
  });
  std::vector<ParseTree> sorted;
  for (const auto& [d, i] : order) sorted.push_back(std::move(out[i]));
  return sorted;
}

Derivation linearize(const ParseTree& t) {
  Derivation order;
  if (t.nodes.empty()) return order;
  auto walk = [&](auto&& self, std::uint32_t i) -> void {
    const auto& n = t.nodes[i];
    order.push_back(n.production);
    for (std::size_t k = 0; k < n.children.size(); ++k) {
      if (!n.children[k].terminal && static_cast<std::int32_t>(k) != n.primary) self(self, n.children[k].index);
    }
    if (n.primary >= 0) self(self, n.children[static_cast<std::size_t>(n.primary)].index);
  };
  walk(walk, 0);
  return {order.rbegin(), order.rend()};
}

std::set<Derivation> oracle_language(const LigGrammar& lig, std::span<const std::uint32_t> tokens,
                                     const OracleConfig& cfg) {
  std::set<Derivation> out;
  for (const auto& t : enumerate_trees(lig, tokens, cfg)) out.insert(linearize(t));
  return out;
}

}  // namespace ligforge
