#include "ligforge/derive.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <sstream>

namespace ligforge {

namespace {

std::vector<std::vector<const CfProduction*>> productions_by_lhs(const CfGrammar& g) {
  std::vector<std::vector<const CfProduction*>> out(g.nonterminals.size());
  for (const auto& p : g.productions) out[p.lhs].push_back(&p);
  return out;
}

}  // namespace

DerivationCount count_sentences(const Ldg& d) {
  if (d.empty()) return DerivationCount::finite(0);
  const auto by_lhs = productions_by_lhs(d.grammar);
  const std::size_t n = d.grammar.nonterminals.size();

  // Iterative DFS: colour 1 = on stack, 2 = done. Post-order gives a
  // topological order of the dependency graph (children first).
  std::vector<std::uint8_t> colour(n, 0);
  std::vector<std::uint32_t> post;
  std::vector<std::pair<std::uint32_t, std::size_t>> stack;  // node, next edge
  auto edges = [&](std::uint32_t x) {
    std::vector<std::uint32_t> out;
    for (const auto* p : by_lhs[x]) {
      for (const auto& s : p->rhs) {
        if (!s.terminal) out.push_back(s.index);
      }
    }
    return out;
  };
  std::vector<std::vector<std::uint32_t>> adj(n);
  for (std::uint32_t x = 0; x < n; ++x) adj[x] = edges(x);

  colour[d.grammar.start] = 1;
  stack.emplace_back(d.grammar.start, 0);
  while (!stack.empty()) {
    auto& [x, k] = stack.back();
    if (k < adj[x].size()) {
      const std::uint32_t y = adj[x][k++];
      if (colour[y] == 1) return DerivationCount::unbounded();
      if (colour[y] == 0) {
        colour[y] = 1;
        stack.emplace_back(y, 0);
      }
      continue;
    }
    colour[x] = 2;
    post.push_back(x);
    stack.pop_back();
  }

  std::vector<boost::multiprecision::cpp_int> count(n, 0);
  for (std::uint32_t x : post) {
    boost::multiprecision::cpp_int total = 0;
    for (const auto* p : by_lhs[x]) {
      boost::multiprecision::cpp_int ways = 1;
      for (const auto& s : p->rhs) {
        if (!s.terminal) ways *= count[s.index];
      }
      total += ways;
    }
    count[x] = total;
  }
  return DerivationCount::finite(count[d.grammar.start]);
}

namespace {

constexpr std::size_t kUnreachable = std::numeric_limits<std::size_t>::max() / 4;

std::vector<std::size_t> minimal_lengths(const CfGrammar& g) {
  std::vector<std::size_t> len(g.nonterminals.size(), kUnreachable);
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& p : g.productions) {
      std::size_t total = 0;
      for (const auto& s : p.rhs) total += s.terminal ? 1 : len[s.index];
      total = std::min(total, kUnreachable);
      if (total < len[p.lhs]) {
        len[p.lhs] = total;
        changed = true;
      }
    }
  }
  return len;
}

struct SearchState {
  std::size_t bound = 0;
  std::vector<std::uint32_t> prefix;
  std::vector<Symbol> pending;  // reversed: back() is the leftmost symbol
  std::vector<std::uint32_t> used;
  std::uint64_t seq = 0;
};

struct LaterFirst {
  bool operator()(const SearchState& a, const SearchState& b) const {
    if (a.bound != b.bound) return a.bound > b.bound;
    if (a.prefix != b.prefix) return a.prefix > b.prefix;
    return a.seq > b.seq;
  }
};

}  // namespace

std::vector<EnumeratedSentence> enumerate_sentences(const Ldg& d, std::size_t max_count, std::size_t max_len) {
  std::vector<EnumeratedSentence> out;
  if (d.empty() || max_count == 0) return out;

  const auto by_lhs = productions_by_lhs(d.grammar);
  const auto minlen = minimal_lengths(d.grammar);
  if (minlen[d.grammar.start] >= kUnreachable) return out;

  std::priority_queue<SearchState, std::vector<SearchState>, LaterFirst> queue;
  std::uint64_t seq = 0;
  auto push = [&](SearchState s) {
    while (!s.pending.empty() && s.pending.back().terminal) {
      s.prefix.push_back(s.pending.back().index);
      s.pending.pop_back();
    }
    s.seq = seq++;
    queue.push(std::move(s));
  };

  SearchState init;
  init.bound = minlen[d.grammar.start];
  init.pending.push_back(Symbol::nt(d.grammar.start));
  push(std::move(init));

  while (!queue.empty() && out.size() < max_count) {
    SearchState s = queue.top();
    queue.pop();
    if (s.bound > max_len) break;
    if (s.pending.empty()) {
      out.push_back({std::move(s.prefix), std::move(s.used)});
      continue;
    }
    const std::uint32_t x = s.pending.back().index;
    for (const auto* p : by_lhs[x]) {
      std::size_t extra = 0;
      bool dead = false;
      for (const auto& sym : p->rhs) {
        const std::size_t l = sym.terminal ? 1 : minlen[sym.index];
        if (l >= kUnreachable) dead = true;
        extra += l;
      }
      if (dead) continue;
      SearchState t;
      t.bound = s.bound - minlen[x] + extra;
      if (t.bound > max_len) continue;
      t.prefix = s.prefix;
      t.pending.assign(s.pending.begin(), s.pending.end() - 1);
      for (auto it = p->rhs.rbegin(); it != p->rhs.rend(); ++it) t.pending.push_back(*it);
      t.used = s.used;
      t.used.push_back(p->id);
      push(std::move(t));
    }
  }
  return out;
}

Derivation map_to_source(std::span<const std::uint32_t> sentence, const std::vector<ForestProvenance>& provenance) {
  Derivation out;
  out.reserve(sentence.size());
  for (auto id : sentence) out.push_back(provenance.at(id).source);
  return out;
}

Derivation map_to_origin(std::span<const std::uint32_t> sentence, const std::vector<std::uint32_t>& origin) {
  Derivation out;
  for (auto id : sentence) {
    if (origin.at(id) != npos32) out.push_back(origin[id]);
  }
  return out;
}

std::vector<std::uint32_t> ParseTree::stack_of(std::uint32_t node) const {
  std::vector<std::uint32_t> out;
  for (auto c = nodes.at(node).stack; c != npos32; c = cells[c].below) out.push_back(cells[c].symbol);
  std::reverse(out.begin(), out.end());
  return out;
}

std::size_t ParseTree::stack_depth(std::uint32_t node) const {
  std::size_t d = 0;
  for (auto c = nodes.at(node).stack; c != npos32; c = cells[c].below) ++d;
  return d;
}

std::string ParseTree::render(const LigGrammar& g) const {
  std::ostringstream os;
  auto object = [&](std::uint32_t i) {
    os << g.nonterminals[nodes[i].nonterminal] << '(';
    const auto st = stack_of(i);
    for (std::size_t k = 0; k < st.size(); ++k) os << (k ? " " : "") << g.stack_symbols[st[k]];
    os << ')';
  };
  auto walk = [&](auto&& self, std::uint32_t i) -> void {
    const Node& n = nodes[i];
    os << '(' << g.productions[n.production].name << ' ';
    object(i);
    for (const auto& c : n.children) {
      os << ' ';
      if (c.terminal) {
        os << '"' << g.terminals[c.index] << '"';
      } else {
        self(self, c.index);
      }
    }
    os << ')';
  };
  if (!nodes.empty()) walk(walk, 0);
  return os.str();
}

DerivationError::DerivationError(std::size_t position, const std::string& what)
    : Error("invalid derivation at position " + std::to_string(position) + ": " + what), position_(position) {}

namespace {

class TreeBuilder {
public:
  TreeBuilder(const LigGrammar& g, std::span<const std::uint32_t> derivation) : g_(g), drv_(derivation) {}

  ParseTree run() {
    if (drv_.empty()) throw DerivationError(0, "empty derivation");
    build(g_.start, npos32);
    if (next_ < drv_.size()) {
      throw DerivationError(position(next_), std::to_string(drv_.size() - next_) + " production(s) left over");
    }
    return std::move(t_);
  }

private:
  // Application step k is entry n-1-k of the given sequence (1-based: n-k).
  std::size_t position(std::size_t step) const { return drv_.size() - step; }

  std::string object(std::uint32_t nt, std::uint32_t stack) const {
    std::vector<std::uint32_t> st;
    for (auto c = stack; c != npos32; c = t_.cells[c].below) st.push_back(t_.cells[c].symbol);
    std::string s = g_.nonterminals[nt] + "(";
    for (std::size_t k = st.size(); k-- > 0;) s += g_.stack_symbols[st[k]] + (k ? " " : "");
    return s + ")";
  }

  std::uint32_t push_cell(std::uint32_t stack, std::uint32_t symbol) {
    t_.cells.push_back({symbol, stack});
    return static_cast<std::uint32_t>(t_.cells.size() - 1);
  }

  std::uint32_t build(std::uint32_t expected, std::uint32_t stack) {
    if (next_ >= drv_.size()) {
      throw DerivationError(0, "derivation ends before " + object(expected, stack) + " is rewritten");
    }
    const std::size_t step = next_++;
    const std::uint32_t r = drv_[drv_.size() - 1 - step];
    if (r >= g_.productions.size()) throw DerivationError(position(step), "unknown production id " + std::to_string(r));
    const LigProduction& p = g_.productions[r];
    if (p.lhs != expected) {
      throw DerivationError(position(step), p.name + " rewrites " + g_.nonterminals[p.lhs] + " but " +
                                                object(expected, stack) + " is expected");
    }

    std::uint32_t inherited = stack;
    if (!p.lhs_inherits) {
      if (stack != npos32) {
        throw DerivationError(position(step), p.name + " needs an empty stack but finds " + object(expected, stack));
      }
    } else {
      for (std::size_t k = p.lhs_pop.size(); k-- > 0;) {
        if (inherited == npos32) {
          throw DerivationError(position(step), p.name + " pops " + g_.stack_symbols[p.lhs_pop[k]] +
                                                    " from the empty stack of " + object(expected, stack));
        }
        if (t_.cells[inherited].symbol != p.lhs_pop[k]) {
          throw DerivationError(position(step), p.name + " pops " + g_.stack_symbols[p.lhs_pop[k]] +
                                                    " but the top of " + object(expected, stack) + " differs");
        }
        inherited = t_.cells[inherited].below;
      }
    }

    const auto index = static_cast<std::uint32_t>(t_.nodes.size());
    t_.nodes.push_back({expected, stack, r, {}, -1});
    std::vector<ParseTree::Child> children(p.rhs.size());
    std::optional<std::size_t> primary;
    for (std::size_t k = 0; k < p.rhs.size(); ++k) {
      const auto& c = p.rhs[k];
      if (c.kind == Constituent::Kind::Terminal) {
        children[k] = {true, c.symbol};
      } else if (c.kind == Constituent::Kind::Primary) {
        primary = k;
      } else {
        std::uint32_t fixed = npos32;
        for (auto sym : c.stack) fixed = push_cell(fixed, sym);
        children[k] = {false, build(c.symbol, fixed)};
      }
    }
    if (primary) {
      const auto& c = p.rhs[*primary];
      std::uint32_t pushed = inherited;
      for (auto sym : c.stack) pushed = push_cell(pushed, sym);
      children[*primary] = {false, build(c.symbol, pushed)};
      t_.nodes[index].primary = static_cast<std::int32_t>(*primary);
    }
    t_.nodes[index].children = std::move(children);
    return index;
  }

  const LigGrammar& g_;
  std::span<const std::uint32_t> drv_;
  std::size_t next_ = 0;
  ParseTree t_;
};

}  // namespace

ParseTree sentence_to_tree(const LigGrammar& lig, std::span<const std::uint32_t> derivation) {
  return TreeBuilder(lig, derivation).run();
}

std::vector<std::uint32_t> replay(const ParseTree& t) {
  std::vector<std::uint32_t> out;
  if (t.nodes.empty()) return out;
  std::vector<ParseTree::Child> stack{{false, 0}};
  while (!stack.empty()) {
    const auto c = stack.back();
    stack.pop_back();
    if (c.terminal) {
      out.push_back(c.index);
      continue;
    }
    const auto& children = t.nodes[c.index].children;
    for (auto it = children.rbegin(); it != children.rend(); ++it) stack.push_back(*it);
  }
  return out;
}

}  // namespace ligforge
