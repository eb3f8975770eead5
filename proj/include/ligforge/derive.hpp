#pragma once

#include <span>

#include <boost/multiprecision/cpp_int.hpp>

#include "ligforge/ldg.hpp"

namespace ligforge {

/// Sentences of a derivation grammar are production ids in reverse
/// application order: S() =>r_n ... =>r_1 x is stored as {r_1, ..., r_n}.
using Derivation = std::vector<std::uint32_t>;

struct DerivationCount {
  bool infinite = false;
  boost::multiprecision::cpp_int value = 0;

  static DerivationCount finite(boost::multiprecision::cpp_int v) { return {false, std::move(v)}; }
  static DerivationCount unbounded() { return {true, 0}; }

  std::string to_string() const { return infinite ? "infinite" : value.str(); }

  friend bool operator==(const DerivationCount&, const DerivationCount&) = default;
};

/// Infinite iff the rhs-nonterminal graph of `d` (reduced) has a cycle.
DerivationCount count_sentences(const Ldg& d);

struct EnumeratedSentence {
  Derivation sentence;
  /// Derivation-grammar productions of the leftmost derivation, in order.
  std::vector<std::uint32_t> ldg_productions;
};

/// Shortest-first, ties broken lexicographically by production id. Stops
/// after `max_count` sentences or once no sentence of length <= `max_len`
/// remains.
std::vector<EnumeratedSentence> enumerate_sentences(const Ldg& d, std::size_t max_count, std::size_t max_len);

/// Replaces forest production ids by their source production ids.
Derivation map_to_source(std::span<const std::uint32_t> sentence, const std::vector<ForestProvenance>& provenance);

/// Maps normalized production ids through `origin` and drops fresh ones.
Derivation map_to_origin(std::span<const std::uint32_t> sentence, const std::vector<std::uint32_t>& origin);

/// Object tree with persistent stacks: every node points at a cell chain
/// (top first) shared with its spine ancestors.
struct ParseTree {
  struct Child {
    bool terminal = false;
    std::uint32_t index = 0;  // terminal symbol, or node index

    friend bool operator==(const Child&, const Child&) = default;
  };
  struct Node {
    std::uint32_t nonterminal = 0;
    std::uint32_t stack = npos32;  // top cell, npos32 when empty
    std::uint32_t production = 0;
    std::vector<Child> children;   // rhs order
    std::int32_t primary = -1;     // position of the distinguished child in `children`
  };
  struct StackCell {
    std::uint32_t symbol = 0;
    std::uint32_t below = npos32;
  };

  std::vector<Node> nodes;  // nodes[0] is the root
  std::vector<StackCell> cells;

  /// Bottom-to-top contents of a node's stack.
  std::vector<std::uint32_t> stack_of(std::uint32_t node) const;
  std::size_t stack_depth(std::uint32_t node) const;

  /// Bracketed rendering, e.g. (r3 S() (r4 S(gc) ...) "c").
  std::string render(const LigGrammar& g) const;
};

class DerivationError : public Error {
public:
  DerivationError(std::size_t position, const std::string& what);
  /// 1-based index into the derivation as given (reverse application order).
  std::size_t position() const { return position_; }

private:
  std::size_t position_;
};

/// Rebuilds the unique tree of a linear derivation: each node's production,
/// then its secondary subtree, then its distinguished subtree.
ParseTree sentence_to_tree(const LigGrammar& lig, std::span<const std::uint32_t> derivation);

std::vector<std::uint32_t> replay(const ParseTree& t);

}  // namespace ligforge
